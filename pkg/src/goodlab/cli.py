"""Command-line front end: ``goodlab <command> [flags]``, JSON on stdout.

Exit status: 0 success, 2 precondition failure (bad input for the
operation), 3 scale-guard refusal, 64 usage error.

Graph arguments accept these literals::

    K<n>  P<n>  C<n>  E<n>        complete, path, cycle, edgeless
    W<n>                          wheel K_1 + C_n
    S<m>                          star K_{1,m}
    B<q>_<m>                      book K_q + m K_1
    K<a>_<b>[_<c>...]             complete multipartite
    Sub<n>                        K_n with every edge subdivided
    Grid<n>_<k>                   k-fold Cartesian power of P_n
    T<n>                          random tree (uses --seed)
    RR<n>_<d>                     random d-regular graph (uses --seed)
    GNP<n>_<p>                    G(n, p) with p a decimal (uses --seed)
    Petersen
    g6:<string>                   graph6
    file:<path>                   graph6 file, or edge list when it has spaces
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from typing import Sequence

from goodlab import cliques, degeneracy, embedding, ramsey, spectral, splitting
from goodlab.errors import GraphError, InfeasibleError, PreconditionError, ScaleError
from goodlab.graph import (
    Graph,
    GraphSpec,
    blowup,
    decode_graph6,
    encode_graph6,
    from_edge_list,
    generate,
    make_graph,
    to_dot,
    to_edge_list,
)

SCHEMA = "v1"
EXIT_OK, EXIT_PRECONDITION, EXIT_SCALE, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner)


def parse_graph(text: str, seed: int = 0) -> Graph:
    if text.startswith("g6:"):
        return decode_graph6(text[3:])
    if text.startswith("file:"):
        with open(text[5:], "rb") as fh:
            raw = fh.read()
        stripped = raw.strip()
        if b" " in stripped or b"\n" in stripped and not stripped.startswith(b">>graph6<<"):
            return from_edge_list(raw.decode())
        return decode_graph6(stripped.splitlines()[0])
    if text == "Petersen":
        return petersen()
    m = re.fullmatch(r"(GNP)(\d+)_([0-9.]+)", text)
    if m:
        return generate(GraphSpec("random_gnp", (int(m.group(2)),), real=float(m.group(3)), seed=seed))
    m = re.fullmatch(r"(Sub|Grid|RR|K|P|C|E|W|S|B|T)(\d+(?:_\d+)*)", text)
    if not m:
        raise GraphError(f"unrecognised graph literal {text!r}")
    head, nums = m.group(1), [int(x) for x in m.group(2).split("_")]

    def one() -> int:
        if len(nums) != 1:
            raise GraphError(f"{head} takes one number in {text!r}")
        return nums[0]

    if head == "K":
        return generate(GraphSpec("complete", (nums[0],))) if len(nums) == 1 else generate(
            GraphSpec("complete_multipartite", tuple(nums))
        )
    if head == "E":
        return make_graph(one(), [])
    table = {"P": "path", "C": "cycle", "W": "wheel", "S": "star", "Sub": "subdivided_complete", "T": "random_tree"}
    if head in table:
        return generate(GraphSpec(table[head], (one(),), seed=seed))
    if head == "B":
        return generate(GraphSpec("book", tuple(nums)))
    if head == "Grid":
        return generate(GraphSpec("grid", tuple(nums)))
    if head == "RR":
        return generate(GraphSpec("random_regular", tuple(nums), seed=seed))
    raise GraphError(f"unrecognised graph literal {text!r}")  # pragma: no cover


def parse_vertex_set(text: str) -> list[int]:
    """``0-7`` ranges and comma lists, e.g. ``0-3,8,10-11``."""
    out = []
    for part in filter(None, text.split(",")):
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


# ---------------------------------------------------------------------------
# Commands. Each returns a JSON-able dict.
# ---------------------------------------------------------------------------


def cmd_generate(a) -> dict:
    spec = GraphSpec(a.kind, tuple(_ints(a.params)), a.real, a.seed)
    g = generate(spec)
    return {"graph": _graph_summary(g)}


def _graph_summary(g: Graph) -> dict:
    return {"n": g.n, "e": g.num_edges, "g6": encode_graph6(g).decode()}


def cmd_degeneracy(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    d = degeneracy.degeneracy_order(g)
    out = {"degeneracy": d.degeneracy, "order": list(d.order), "back_degrees": list(d.back_degrees)}
    if a.coloring:
        col = degeneracy.degeneracy_coloring(g)
        out["coloring"] = col
        out["colors"] = max(col, default=-1) + 1
    if a.high_degree is not None:
        c = degeneracy.high_degree_bound_check(g, a.high_degree)
        out["high_degree"] = {"count": c.count, "bound": c.bound, "holds": c.holds}
    return out


def cmd_cliques(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    return {"r": a.r, "count": cliques.count_cliques(g, a.r), "method": "exhaustive"}


def cmd_joint(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    return {"joint": cliques.joint_size(g, a.p, with_cliques=a.list).to_json(), "method": "exhaustive"}


def cmd_book(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    return {"book": cliques.book_size(g, a.p).to_json(), "method": "exhaustive"}


def cmd_multipartite(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    e = cliques.find_complete_multipartite(g, _ints(a.sizes))
    return {"found": e is not None, "map": list(e.map) if e else None, "method": "exhaustive"}


def cmd_clique_bound(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    alpha = a.alpha if a.alpha is not None else g.min_degree() / g.n - (a.r - 1) / a.r
    c = cliques.verify_min_degree_clique_bound(g, a.r, alpha)
    return {"lhs": c.lhs, "rhs": c.rhs, "holds": c.holds, "alpha": alpha}


def _split_graph(a) -> Graph:
    if a.graph:
        return parse_graph(a.graph, a.seed)
    if a.family == "tree":
        return generate(GraphSpec("random_tree", (a.n,), seed=a.seed))
    kinds = {"path": "path", "subdivided": "subdivided_complete", "complete": "complete", "cycle": "cycle", "wheel": "wheel"}
    if a.family in kinds:
        return generate(GraphSpec(kinds[a.family], (a.n,)))
    if a.family == "grid":
        return generate(GraphSpec("grid", (a.n, a.dims)))
    raise GraphError(f"unknown family {a.family!r}")


def cmd_split(a) -> dict:
    if a.probe:
        kinds = {"tree": "random_tree", "path": "path", "subdivided": "subdivided_complete", "complete": "complete",
                 "cycle": "cycle", "wheel": "wheel", "grid": "grid"}
        params = (1, a.dims) if a.family == "grid" else (1,)
        template = GraphSpec(kinds[a.family], params, seed=a.seed)
        rows = splitting.probe_crumbling(template, a.gamma, a.eta, _ints(a.probe), budget=a.budget or 200_000)
        return {"probe": [r.to_json() for r in rows]}
    g = _split_graph(a)
    budget = a.budget or splitting.DEFAULT_BUDGET
    cert = None
    if a.family == "tree" or (a.graph and splitting.is_tree(g) and g.n >= 2):
        k = a.k or max(1, math.ceil(math.log2(1 / a.eta)))
        cert = splitting.certificate(g, splitting.tree_split(g, k), a.gamma, a.eta, "tree_split", False)
        if not splitting.check_split(g, cert):
            cert = None
    if cert is None:
        cert, exhaustive = splitting.find_split(g, a.gamma, a.eta, budget)
        if cert is None:
            return {"found": False, "exhaustive": exhaustive, "n": g.n,
                    "method": "exhaustive" if exhaustive else "heuristic"}
    return {"found": True, "n": g.n, "certificate": cert.to_json(), "valid": splitting.check_split(g, cert)}


def cmd_tree_split(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    s = splitting.tree_split(g, a.k)
    return {"k": a.k, "separator": s, "size": len(s), "bound": 2 ** (a.k + 2) - 6,
            "psi": splitting.largest_component_order(g, s), "psi_bound": g.n / 2**a.k}


def cmd_trim(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    s0 = parse_vertex_set(a.s0)
    m = splitting.trim(g, s0, a.q, a.eta)
    return {"M": list(m), "size": len(m), "bound": (2 * a.q + 1) * len(set(s0)),
            "psi_before": splitting.largest_component_order(g, s0), "psi_after": splitting.largest_component_order(g, m)}


def cmd_transfer(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    budget = a.budget if a.budget is not None else 0
    base, _ = splitting.find_split(g, a.gamma, a.eta, splitting.DEFAULT_BUDGET)
    if base is None:
        raise PreconditionError("no base certificate found for the input graph")
    if a.kind == "power":
        res = splitting.transfer_power(g, base, a.k, budget)
    elif a.kind == "product":
        h = parse_graph(a.other, a.seed)
        other, _ = splitting.find_split(h, a.gamma, a.eta, splitting.DEFAULT_BUDGET)
        if other is None:
            raise PreconditionError("no base certificate found for the second factor")
        res = splitting.transfer_product(g, base, h, other, budget)
    elif a.kind == "blowup":
        sizes = _ints(a.sizes) if a.sizes else [a.k] * g.n
        res = splitting.transfer_blowup(g, base, blowup(g, sizes), budget)
    else:
        res = splitting.transfer_join(g, base, a.k, budget)
    return {"base": base.to_json(), "transfer": res.to_json()}


def cmd_embed(a) -> dict:
    h = parse_graph(a.pattern, a.seed)
    g = parse_graph(a.host, a.seed)
    if a.mode == "greedy":
        e = embedding.greedy_embed_degenerate(h, g, backtrack_budget=a.budget or embedding.DEFAULT_BACKTRACK_BUDGET)
        out = {"found": e is not None}
    else:
        q = degeneracy.degeneracy(h)
        cert, _ = splitting.find_split(h, a.gamma, a.eta, a.budget or 200_000)
        if cert is None:
            raise PreconditionError("pattern has no (gamma, eta) certificate within budget")
        m = splitting.trim(h, cert.separator, q)
        plan = embedding.make_zone_plan(g, len(m) + a.core_slack, a.zones, q=q, margin=a.margin)
        res = embedding.embed_splittable(h, q, cert.separator, g, plan)
        e = res.embedding
        out = {"found": e is not None, "trimmed": list(res.trimmed), "failure": res.failure}
    if e is not None:
        out.update(e.to_json())
        out["verified"] = embedding.verify_embedding(e)
    return out


def cmd_drc(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    res = embedding.dependent_random_choice(
        g, parse_vertex_set(a.u1), parse_vertex_set(a.u2), a.k, a.d, a.lam, i=a.i,
        budget=a.budget or 200_000, seed=a.seed,
    )
    return {"drc": res.to_json()}


def cmd_dense_core(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    c = embedding.dense_core(g, a.tau)
    return {"W": list(c.vertices), "size": len(c.vertices), "size_bound": c.size_bound,
            "min_degree": c.graph.min_degree(), "min_degree_bound": c.min_degree_bound, "holds": c.bounds_hold}


def cmd_arrow(a) -> dict:
    h1 = parse_graph(a.red, a.seed)
    h2 = parse_graph(a.blue, a.seed)
    res = ramsey.check_arrowing(a.N, h1, h2, node_limit=a.budget)
    return {"arrow": res.to_json()}


def cmd_ramsey(a) -> dict:
    h1 = parse_graph(a.h1, a.seed)
    h2 = parse_graph(a.h2, a.seed)
    res = ramsey.ramsey_number(h1, h2, a.max_n, node_limit=a.budget)
    out = res.to_json()
    out["method"] = "exhaustive"
    return out


def cmd_pentagon(a) -> dict:
    c = ramsey.pentagon_coloring(a.n)
    out = {"N": c.N, "part_sizes": ramsey.pentagon_part_sizes(a.n), "coloring": c.to_json()}
    if a.check_triangle_free:
        out["k3_red"] = cliques.count_cliques(c.red, 3)
    if a.q:
        pq = ramsey.pentagon_q(a.n, mode=a.q_mode, seed=a.seed)
        out["q"] = pq.to_json()
        out["q_lower"] = a.n * a.n / 25 - 2 * a.n
    return out


def cmd_goodness(a) -> dict:
    c = ramsey.goodness_lower_coloring(a.p, a.n)
    from goodlab.graph import components

    return {"coloring": c.to_json(), "kp_red": cliques.count_cliques(c.red, a.p),
            "blue_largest_component": max((len(x) for x in components(c.blue)), default=0)}


def _regular_input(a) -> Graph:
    if a.graph:
        return parse_graph(a.graph, a.seed)
    return generate(GraphSpec("random_regular", (a.n, a.d), seed=a.seed))


def cmd_refute(a) -> dict:
    g = _regular_input(a)
    return {"report": spectral.refute_3_goodness(g).to_json(), "g6": encode_graph6(g).decode() if g.n <= 64 else None}


def cmd_mixing(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    return {"mixing": spectral.expander_mixing_check(g, a.mode, a.seed).to_json()}


def cmd_sigma2(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    return {"sigma2": spectral.second_singular_value(g)}


def cmd_hole(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    return {"hole": spectral.bipartite_hole_max(g, seed=a.seed).to_json()}


def cmd_export(a) -> dict:
    g = parse_graph(a.graph, a.seed)
    return {"text": {"g6": encode_graph6(g).decode() + "\n", "dot": to_dot(g), "edgelist": to_edge_list(g)}[a.as_]}


def cmd_replay(a) -> dict:
    """Re-run recorded invocations and compare against their expected fields."""
    with open(a.vectors) as fh:
        vectors = json.load(fh)
    results = []
    for vec in vectors:
        code, report = run(vec["argv"])
        expect = vec.get("expect", {})
        got = {k: report.get(k) for k in expect}
        ok = code == vec.get("exit", 0) and got == expect
        results.append({"argv": vec["argv"], "ok": ok, "exit": code, **({} if ok else {"got": got})})
    return {"vectors": len(results), "passed": sum(r["ok"] for r in results), "results": results}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None, help="node/tuple limit for exhaustive searches")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=["json", "g6", "dot"], default="json")
    common.add_argument("--threads", type=int, default=None, help="accepted for compatibility; runs serially")

    p = _Parser(prog="goodlab", description="Ramsey goodness laboratory")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("generate", cmd_generate, "build a named graph")
    sp.add_argument("--kind", required=True)
    sp.add_argument("--params", default="")
    sp.add_argument("--real", type=float, default=None)

    sp = add("degeneracy", cmd_degeneracy, "degeneracy order")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--coloring", action="store_true")
    sp.add_argument("--high-degree", type=int, default=None, metavar="Q")

    for name, fn, flag in (("cliques", cmd_cliques, "--r"), ("joint", cmd_joint, "--p"), ("book", cmd_book, "--p")):
        sp = add(name, fn, f"{name} statistics")
        sp.add_argument("--graph", required=True)
        sp.add_argument(flag, type=int, required=True)
        if name == "joint":
            sp.add_argument("--list", action="store_true")

    sp = add("multipartite", cmd_multipartite, "find a complete multipartite subgraph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--sizes", required=True)

    sp = add("clique-bound", cmd_clique_bound, "min-degree clique-count bound")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--alpha", type=float, default=None)

    sp = add("split", cmd_split, "find a (gamma, eta) certificate")
    sp.add_argument("--graph", default=None)
    sp.add_argument("--family", default=None, choices=["tree", "path", "cycle", "wheel", "subdivided", "complete", "grid"])
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--dims", type=int, default=2)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--probe", default=None, help="comma-separated n values")

    sp = add("tree-split", cmd_tree_split, "tree separator S_k")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("trim", cmd_trim, "trim a separator")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--s0", required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--eta", type=float, default=None)

    sp = add("transfer", cmd_transfer, "transfer a certificate")
    sp.add_argument("--kind", required=True, choices=["power", "product", "blowup", "join"])
    sp.add_argument("--graph", required=True)
    sp.add_argument("--other", default=None)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--sizes", default=None)
    sp.add_argument("--gamma", type=float, required=True)
    sp.add_argument("--eta", type=float, required=True)

    sp = add("embed", cmd_embed, "embed a pattern into a host")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--mode", choices=["greedy", "split"], default="greedy")
    sp.add_argument("--gamma", type=float, default=0.3)
    sp.add_argument("--eta", type=float, default=0.5)
    sp.add_argument("--zones", type=int, default=1)
    sp.add_argument("--core-slack", type=int, default=2)
    sp.add_argument("--margin", type=int, default=0)

    sp = add("drc", cmd_drc, "dependent random choice")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--u1", required=True)
    sp.add_argument("--u2", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=float, required=True)
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--i", type=int, default=None)

    sp = add("dense-core", cmd_dense_core, "high-degree core")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--tau", type=float, required=True)

    sp = add("arrow", cmd_arrow, "exhaustive arrowing check")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--red", required=True)
    sp.add_argument("--blue", required=True)

    sp = add("ramsey", cmd_ramsey, "least arrowing N")
    sp.add_argument("--h1", required=True)
    sp.add_argument("--h2", required=True)
    sp.add_argument("--max-n", type=int, required=True)

    sp = add("pentagon", cmd_pentagon, "pentagon blow-up colouring")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--check-triangle-free", action="store_true")
    sp.add_argument("--q", action="store_true", help="compute q(n)")
    sp.add_argument("--q-mode", choices=["exhaustive", "sampled"], default="exhaustive")

    sp = add("goodness", cmd_goodness, "goodness lower-bound colouring")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("refute", cmd_refute, "spectral 3-goodness refutation")
    sp.add_argument("--graph", default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--d", type=int, default=None)

    sp = add("mixing", cmd_mixing, "expander mixing check")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")

    sp = add("sigma2", cmd_sigma2, "second singular value")
    sp.add_argument("--graph", required=True)

    sp = add("hole", cmd_hole, "largest bipartite hole")
    sp.add_argument("--graph", required=True)

    sp = add("export", cmd_export, "print a graph as graph6, DOT or edge list")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--as", dest="as_", choices=["g6", "dot", "edgelist"], default="g6")

    sp = add("replay", cmd_replay, "replay recorded test vectors")
    sp.add_argument("--vectors", required=True)
    return p


def run(argv: Sequence[str]) -> tuple[int, dict]:
    """Parse and execute; returns (exit status, report)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if not getattr(args, "command", None):
            raise UsageError(parser.format_usage())
    except UsageError as exc:
        return EXIT_USAGE, {"schema": SCHEMA, "error": str(exc).strip(), "kind": "usage"}
    env_seed = os.environ.get("RG_SEED")
    if env_seed is not None:
        args.seed = int(env_seed)
    try:
        report = args.fn(args)
    except ScaleError as exc:
        return EXIT_SCALE, {"schema": SCHEMA, "command": args.command, "error": str(exc), "kind": "scale"}
    except (PreconditionError, InfeasibleError, GraphError, ValueError) as exc:
        return EXIT_PRECONDITION, {"schema": SCHEMA, "command": args.command, "error": str(exc), "kind": "precondition"}
    report = {"schema": SCHEMA, "command": args.command, "seed": args.seed, **report}
    return EXIT_OK, report


def _render(report: dict, fmt: str) -> str:
    if fmt == "json" or "error" in report:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if "text" in report:
        return report["text"]
    g6 = report.get("graph", {}).get("g6") or report.get("g6")
    if g6 is None:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "g6":
        return g6 + "\n"
    return to_dot(decode_graph6(g6))


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    code, report = run(argv)
    fmt = "json"
    if "--format" in argv:
        i = argv.index("--format")
        fmt = argv[i + 1] if i + 1 < len(argv) else "json"
    text = _render(report, fmt if fmt in ("json", "g6", "dot") else "json")
    out_path = None
    if "--output" in argv:
        i = argv.index("--output")
        out_path = argv[i + 1] if i + 1 < len(argv) else None
    if out_path and code == EXIT_OK:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        (sys.stdout if code == EXIT_OK else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
