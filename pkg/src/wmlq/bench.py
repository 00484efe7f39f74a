"""Benchmark harness: run several algorithms over a set of instances, emit CSV.

Instances come from a directory of ``*.wmlq`` files or from a generator
sweep such as ``theta:per_pair=6,u_max=1..6``.  Every ``key=lo..hi`` range
expands into a cartesian product.
"""

from __future__ import annotations

import csv
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Optional, TextIO

from . import gen
from .core import BudgetExceeded, Infeasible, Instance, PreconditionError, WMLQError, simplify
from .io import parse_instance
from .oracle import OracleCaps
from .special import AlgorithmChoice, solve
from .twdp import decompose_instance

COLUMNS = ("instance", "|A|", "|P|", "|E|", "u_max", "width_estimate", "algorithm",
           "objective", "exact_flag", "cells", "elapsed_ms", "ratio", "status")

# generators usable from a sweep; all parameters are integers
SWEEP_GENERATORS: dict[str, Callable[..., Instance]] = {
    "random": lambda seed=0, n_applicants=6, n_posts=3, **kw: gen.gen_random(
        seed, n_applicants, n_posts, **_ranges(kw)),
    "theta": lambda per_pair=2, u_max=2: gen.gen_theta(per_pair, u_max),
    "hub3": lambda private=6, shared=1, u_max=2: gen.gen_hub3(private, shared, u_max),
    "series-parallel": lambda seed=0, n_posts=20, u_max=3: gen.gen_series_parallel(
        seed, n_posts, u_max=u_max),
    "tight-a": lambda k=2: gen.gen_tight_a(k),
    "tight-b": lambda k=2, scale=10: gen.gen_tight_b(k, scale),
}


def _ranges(kw: dict) -> dict:
    # random's tuple parameters arrive as <name>_lo / <name>_hi
    out = {}
    for name in ("degree", "lower", "upper", "weight"):
        if f"{name}_lo" in kw or f"{name}_hi" in kw:
            out[name] = (kw.pop(f"{name}_lo"), kw.pop(f"{name}_hi"))
    if kw:
        raise ValueError(f"unknown random parameters {sorted(kw)}")
    return out


def parse_sweep(text: str) -> list[tuple[str, Instance]]:
    name, _, params = text.partition(":")
    if name not in SWEEP_GENERATORS:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(SWEEP_GENERATORS)}")
    axes: list[tuple[str, list[int]]] = []
    for item in filter(None, params.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"sweep parameter {item!r} is not key=value")
        if ".." in value:
            lo, hi = value.split("..")
            axes.append((key, list(range(int(lo), int(hi) + 1))))
        else:
            axes.append((key, [int(value)]))
    out = []
    for combo in itertools.product(*(vals for _, vals in axes)):
        kwargs = {k: v for (k, _), v in zip(axes, combo)}
        label = name + "".join(f"_{k}{v}" for k, v in kwargs.items())
        out.append((label, SWEEP_GENERATORS[name](**kwargs)))
    return out


def load_dir(path: Path) -> list[tuple[str, Instance]]:
    return [(f.stem, parse_instance(f.read_text())) for f in sorted(path.glob("*.wmlq"))]


@dataclass
class BenchConfig:
    algorithms: tuple[str, ...] = ("greedy", "twdp")
    cell_budget: int = 10**7
    # the oracle runs one flow per post subset, so edges get a looser cap than the library default
    oracle_caps: OracleCaps = OracleCaps(12, 64)


def _width_estimate(inst: Instance) -> Optional[int]:
    try:
        return decompose_instance(simplify(inst), "min_degree").width
    except WMLQError:
        return None


def bench_instance(name: str, inst: Instance, config: BenchConfig) -> list[dict]:
    base = {"instance": name, "|A|": inst.num_applicants, "|P|": inst.num_posts,
            "|E|": len(inst.edges), "u_max": inst.u_max,
            "width_estimate": _width_estimate(inst)}
    rows = []
    for algo in config.algorithms:
        row = dict(base, algorithm=algo, objective="", exact_flag="", cells="",
                   elapsed_ms="", ratio="", status="ok")
        start = time.perf_counter()
        try:
            res = solve(inst, AlgorithmChoice(algo, cell_budget=config.cell_budget,
                                             oracle_caps=config.oracle_caps))
            res.check(inst)
            row.update(objective=res.objective, exact_flag=int(bool(res.exact)),
                       cells="" if res.cells is None else res.cells)
        except BudgetExceeded:
            row["status"] = "budget"
        except Infeasible:
            row["status"] = "infeasible"
        except PreconditionError as exc:
            row["status"] = f"precondition: {exc}"
        except Exception as exc:  # recorded as a row; the run continues
            row["status"] = f"error: {type(exc).__name__}: {exc}"
        row["elapsed_ms"] = f"{(time.perf_counter() - start) * 1000:.3f}"
        rows.append(row)
    exact = [r["objective"] for r in rows if r["status"] == "ok" and r["exact_flag"] == 1]
    if exact:
        opt = max(exact)
        for r in rows:
            if r["status"] == "ok":
                obj = r["objective"]
                r["ratio"] = f"{opt / obj:.6g}" if obj else ("1" if opt == 0 else "inf")
    return rows


def run_bench(instances: Iterable[tuple[str, Instance]], config: BenchConfig,
              out: TextIO, jobs: int = 1) -> list[dict]:
    """Run every algorithm on every instance, write sorted CSV rows to ``out``."""
    instances = list(instances)
    if jobs > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(bench_instance, n, i, config) for n, i in instances]
            rows = [r for f in futures for r in f.result()]
    else:
        rows = [r for n, i in instances for r in bench_instance(n, i, config)]
    rows.sort(key=lambda r: (r["instance"], r["algorithm"]))
    writer = csv.DictWriter(out, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return rows
