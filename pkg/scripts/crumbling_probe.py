"""Probe (gamma, eta)-splittability across a family as n grows.

    python3 scripts/crumbling_probe.py --family random_tree --gamma 0.5 --eta 0.125 --n 50 100 200 400 800
    python3 scripts/crumbling_probe.py --family subdivided_complete --gamma 0.1 --eta 0.07 --n 5 6 8 10
    python3 scripts/crumbling_probe.py --family grid --dims 2 --gamma 0.2 --eta 0.55 --n 10 20 30
"""

import argparse

from goodlab.graph import GraphSpec
from goodlab.splitting import probe_crumbling


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--family", default="random_tree")
    ap.add_argument("--dims", type=int, default=2, help="grid dimension")
    ap.add_argument("--gamma", type=float, default=0.5)
    ap.add_argument("--eta", type=float, default=0.125)
    ap.add_argument("--n", type=int, nargs="+", default=[50, 100, 200, 400, 800])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=200_000)
    args = ap.parse_args()

    params = (1, args.dims) if args.family == "grid" else (1,)
    template = GraphSpec(args.family, params, seed=args.seed)
    print(f"{'n':>6} {'order':>7} {'found':>6} {'|S|':>5} {'bound':>8}  method")
    for row in probe_crumbling(template, args.gamma, args.eta, args.n, budget=args.budget):
        bound = row.order ** (1 - args.gamma)
        print(f"{row.n:>6} {row.order:>7} {str(row.found):>6} {str(row.separator_size):>5} {bound:>8.2f}  {row.method}")


if __name__ == "__main__":
    main()
