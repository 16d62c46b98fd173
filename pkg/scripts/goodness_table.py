"""Exact r(K_p, H) for small connected H against (p-1)(|H|-1)+1.

    python3 scripts/goodness_table.py --max-n 10
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from goodlab.cli import parse_graph
from goodlab.graph import is_connected
from goodlab.ramsey import ramsey_number

DEFAULT_PAIRS = ["K3:P3", "K3:P4", "K3:S3", "K3:P5", "K3:C4", "K3:C5", "K3:K3", "K3:B2_2", "K4:P3", "K4:P4"]


@dataclass
class Row:
    h1: str
    h2: str
    r: int | None
    formula: int
    good: bool
    seconds: float


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--pairs", nargs="*", default=DEFAULT_PAIRS, help="H1:H2 literals, H1 a clique")
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    rows = []
    for pair in args.pairs:
        a, b = pair.split(":")
        h1, h2 = parse_graph(a), parse_graph(b)
        assert is_connected(h2)
        t = time.perf_counter()
        res = ramsey_number(h1, h2, args.max_n)
        formula = (h1.n - 1) * (h2.n - 1) + 1
        rows.append(Row(a, b, res.r, formula, res.r == formula, round(time.perf_counter() - t, 3)))
    if args.json:
        print(json.dumps([asdict(r) for r in rows], indent=2))
        return
    print(f"{'H1':>4} {'H2':>6} {'r':>4} {'formula':>8} {'good':>5} {'sec':>8}")
    for r in rows:
        print(f"{r.h1:>4} {r.h2:>6} {str(r.r):>4} {r.formula:>8} {str(r.good):>5} {r.seconds:>8.2f}")


if __name__ == "__main__":
    main()
