"""Command-line interface: ``wmlq solve|generate|verify|bench|decompose``.

Exit codes: 0 success, 1 verification failure or bad input, 2 infeasible
(all-open mode), 3 budget rejection.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import gen
from .bench import BenchConfig, load_dir, parse_sweep, run_bench
from .core import (
    BudgetExceeded,
    Infeasible,
    InfeasibleAssignment,
    PreconditionError,
    WMLQError,
    evaluate,
)
from .io import FormatError, parse_graph, parse_instance, parse_solution, render_instance, render_solution
from .oracle import OracleCaps
from .special import AlgorithmChoice, solve
from .twdp import DEFAULT_CELL_BUDGET, decompose_instance, dump_td

EXIT_OK, EXIT_FAIL, EXIT_INFEASIBLE, EXIT_BUDGET = 0, 1, 2, 3

ALGOS = ("auto", "greedy", "twdp", "degree2", "u2", "all-open", "oracle")


def _variant(name: str) -> str:
    return name.replace("-", "_")


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _pair(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(",")
    return int(lo), int(hi or lo)


# -- solve ----------------------------------------------------------------------

def cmd_solve(args) -> int:
    inst = parse_instance(Path(args.input).read_text())
    choice = AlgorithmChoice(_variant(args.algo), cell_budget=args.budget,
                             oracle_caps=OracleCaps(args.oracle_max_posts, args.oracle_max_edges))
    # human summary goes to stderr when the solution itself is on stdout
    log = sys.stdout if args.out else sys.stderr
    try:
        res = solve(inst, choice)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=log)
        return EXIT_INFEASIBLE
    except BudgetExceeded as exc:
        print(f"budget rejected: {exc}", file=log)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=log)
        return EXIT_FAIL
    _write(render_solution(res.objective, res.assignment), args.out)
    print(f"objective: {res.objective}", file=log)
    print(f"branch: {res.branch or res.algorithm}", file=log)
    print(f"exact: {'yes' if res.exact else 'no (approximate)'}", file=log)
    if not res.exact and res.guarantee is not None:
        print(f"guarantee factor: {res.guarantee}", file=log)
    if res.cells is not None:
        print(f"cells: {res.cells}", file=log)
    print(f"elapsed_ms: {res.elapsed * 1000:.3f}", file=log)
    return EXIT_OK


# -- generate -------------------------------------------------------------------

def _read_graph(path: str):
    return parse_graph(Path(path).read_text())


def cmd_generate(args) -> int:
    kind = args.generator
    if kind == "tight-a":
        inst = gen.gen_tight_a(args.k)
    elif kind == "tight-b":
        inst = gen.gen_tight_b(args.k, args.scale)
    elif kind == "mis-cubic":
        n, edges, _ = _read_graph(args.graph)
        inst = gen.gen_mis_cubic(n, edges)
    elif kind == "inapprox":
        n, edges, _ = _read_graph(args.graph)
        inst = gen.gen_inapprox(n, edges)
    elif kind == "outdegree":
        n, edges, weights = _read_graph(args.graph)
        inst = gen.gen_outdegree(n, edges, weights, args.bound)
    elif kind == "random":
        inst = gen.gen_random(args.seed, args.applicants, args.posts, degree=args.degree,
                              lower=args.lower, upper=args.upper, weight=args.weight,
                              degree_side=args.degree_side)
    elif kind == "theta":
        inst = gen.gen_theta(args.per_pair, args.u_max, args.seed)
    elif kind == "hub3":
        inst = gen.gen_hub3(args.private, args.shared, args.u_max)
    else:
        inst = gen.gen_series_parallel(args.seed, args.posts, links=args.links,
                                       private=args.private, u_max=args.u_max,
                                       weight=args.weight)
    _write(render_instance(inst), args.out)
    return EXIT_OK


# -- verify ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    inst = parse_instance(Path(args.instance).read_text())
    sol = parse_solution(Path(args.solution).read_text())
    try:
        value = evaluate(inst, sol.pairs)
    except InfeasibleAssignment as exc:
        print(f"violation({exc.kind}) at {'a' if exc.kind != 'post' else 'p'}{exc.vertex}: "
              f"{exc.reason}")
        return EXIT_FAIL
    if value != sol.objective:
        print(f"violation(objective): declared {sol.objective}, recomputed {value}")
        return EXIT_FAIL
    print(f"ok: objective {value}, {len(sol.pairs)} pairs")
    return EXIT_OK


# -- bench ----------------------------------------------------------------------

def cmd_bench(args) -> int:
    if args.dir:
        instances = load_dir(Path(args.dir))
    else:
        instances = [x for s in args.sweep for x in parse_sweep(s)]
    algos = args.algos.split(",")
    unknown = [a for a in algos if a not in ALGOS]
    if unknown:
        raise ValueError(f"unknown algorithms {unknown}; choose from {ALGOS}")
    config = BenchConfig(tuple(_variant(a) for a in algos), args.budget)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            run_bench(instances, config, fh, jobs=args.jobs)
    else:
        run_bench(instances, config, sys.stdout, jobs=args.jobs)
    return EXIT_OK


# -- decompose ------------------------------------------------------------------

def cmd_decompose(args) -> int:
    inst = parse_instance(Path(args.input).read_text())
    td = decompose_instance(inst, args.strategy)
    if args.out:
        with open(args.out, "w") as fh:
            dump_td(td, fh)
    else:
        dump_td(td, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wmlq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("input")
    p.add_argument("--algo", choices=ALGOS, default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_CELL_BUDGET,
                   help="table-cell budget for the tree-decomposition solver")
    p.add_argument("--seed", type=int, default=0,
                   help="accepted for reproducible pipelines; all solvers are deterministic")
    p.add_argument("--out", help="solution file (default: stdout)")
    p.add_argument("--oracle-max-posts", type=int, default=BenchConfig.oracle_caps.max_posts)
    p.add_argument("--oracle-max-edges", type=int, default=BenchConfig.oracle_caps.max_edges)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="write a generated instance")
    gsub = p.add_subparsers(dest="generator", required=True)
    g = gsub.add_parser("tight-a")
    g.add_argument("--k", type=int, required=True)
    g = gsub.add_parser("tight-b")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--scale", type=int, required=True)
    for name in ("mis-cubic", "inapprox", "outdegree"):
        g = gsub.add_parser(name)
        g.add_argument("--graph", required=True, help="DIMACS or PACE graph file")
        if name == "outdegree":
            g.add_argument("--bound", type=int, required=True)
    g = gsub.add_parser("random")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--applicants", type=int, default=8)
    g.add_argument("--posts", type=int, default=4)
    g.add_argument("--degree", type=_pair, default=(1, 3), metavar="LO,HI")
    g.add_argument("--lower", type=_pair, default=(0, 2), metavar="LO,HI")
    g.add_argument("--upper", type=_pair, default=(1, 3), metavar="LO,HI")
    g.add_argument("--weight", type=_pair, default=(1, 10), metavar="LO,HI")
    g.add_argument("--degree-side", choices=("applicant", "post"), default="applicant")
    g = gsub.add_parser("theta")
    g.add_argument("--per-pair", type=int, default=2)
    g.add_argument("--u-max", type=int, required=True)
    g.add_argument("--seed", type=int, default=None)
    g = gsub.add_parser("hub3")
    g.add_argument("--private", type=int, default=6)
    g.add_argument("--shared", type=int, default=1)
    g.add_argument("--u-max", type=int, required=True)
    g = gsub.add_parser("series-parallel")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--posts", type=int, default=20)
    g.add_argument("--links", type=_pair, default=(1, 3), metavar="LO,HI")
    g.add_argument("--private", type=_pair, default=(0, 2), metavar="LO,HI")
    g.add_argument("--u-max", type=int, default=3)
    g.add_argument("--weight", type=_pair, default=(1, 10), metavar="LO,HI")
    for g in gsub.choices.values():
        g.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run algorithms over instances, write CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dir", help="directory of *.wmlq files")
    src.add_argument("--sweep", action="append",
                     help="generator sweep, e.g. theta:per_pair=6,u_max=1..6 (repeatable)")
    p.add_argument("--algos", default="greedy,twdp",
                   help="comma-separated list from " + ",".join(ALGOS))
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--csv", help="output file (default: stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("decompose", help="write a tree decomposition in PACE .td format")
    p.add_argument("input")
    p.add_argument("--strategy", choices=("min_fill", "min_degree", "exact_small"),
                   default="min_fill")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OSError, ValueError, WMLQError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
