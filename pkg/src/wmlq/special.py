"""Polynomial special cases and the algorithm dispatcher."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .core import (
    BudgetExceeded,
    Infeasible,
    Instance,
    PreconditionError,
    SolveResult,
    lift_assignment,
    simplify_with_map,
)
from .flow import max_weight_with_open_posts
from .greedy import solve_greedy
from .matching import (
    FFactorInstance,
    GeneralGraph,
    max_weight_f_factor,
    max_weight_matching,
)
from .oracle import DEFAULT_CAPS, OracleCaps, brute_force
from .twdp import (
    DEFAULT_CELL_BUDGET,
    WidthExceeded,
    decompose_instance,
    dp_solve,
    estimate_cost,
    to_nice,
)

VARIANTS = ("auto", "greedy", "twdp", "degree2", "u2", "all_open", "oracle")


@dataclass
class AlgorithmChoice:
    variant: str = "auto"
    cell_budget: int = DEFAULT_CELL_BUDGET
    oracle_caps: OracleCaps = field(default_factory=lambda: DEFAULT_CAPS)
    strategy: str = "min_fill"
    max_gadget_vertices: int = 3000  # auto skips the f-factor route above this

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown algorithm {self.variant!r}; choose from {VARIANTS}")
        if self.cell_budget <= 0 or self.max_gadget_vertices <= 0:
            raise ValueError("limits must be positive")


def _finish(res: SolveResult, post_ids, start: float, **extra) -> SolveResult:
    res.assignment = lift_assignment(res.assignment, post_ids)
    res.elapsed = time.perf_counter() - start
    for k, v in extra.items():
        setattr(res, k, v)
    return res


# -- posts of degree at most two ------------------------------------------------

def degree2_helper_graph(inst: Instance):
    """Helper graph for a simplified instance with post degree <= 2.

    Returns ``(graph, origin)`` where ``origin[k]`` lists the instance pairs
    represented by helper edge ``k``.
    """
    na = inst.num_applicants
    best: dict[tuple[int, int], tuple[int, list]] = {}
    edges: list[tuple[int, int, int]] = []
    origin: list[list[tuple[int, int]]] = []
    nxt = na
    for q in range(1, inst.num_posts + 1):
        lo, hi = inst.quota(q)
        nbrs = inst.post_adjacency[q]
        if len(nbrs) > 2:
            raise PreconditionError(f"post p{q} has degree {len(nbrs)} > 2")
        if hi == 2 and lo == 2:
            (a1, w1), (a2, w2) = nbrs
            key = (min(a1, a2) - 1, max(a1, a2) - 1)
            if key not in best or w1 + w2 > best[key][0]:
                best[key] = (w1 + w2, [(a1, q), (a2, q)])
        elif hi == 2:
            # lower quota 1: the two edges act independently
            for a, w in nbrs:
                edges.append((a - 1, nxt, w))
                origin.append([(a, q)])
                nxt += 1
        else:
            for a, w in nbrs:
                edges.append((a - 1, nxt, w))
                origin.append([(a, q)])
            nxt += 1
    for (u, v), (w, pairs) in best.items():
        edges.append((u, v, w))
        origin.append(pairs)
    return GeneralGraph(nxt, tuple(edges)), origin


def solve_degree2_posts(inst: Instance) -> SolveResult:
    start = time.perf_counter()
    simple, post_ids = simplify_with_map(inst)
    graph, origin = degree2_helper_graph(simple)
    chosen = max_weight_matching(graph)
    pairs = frozenset(pair for k in chosen for pair in origin[k])
    value = sum(graph.edges[k][2] for k in chosen)
    res = SolveResult(pairs, value, "degree2", exact=True, branch="degree2")
    return _finish(res, post_ids, start)


# -- upper quotas at most two ---------------------------------------------------

@dataclass
class U2Construction:
    """f-factor graph for a simplified instance with ``u <= 2``."""

    graph: GeneralGraph
    f_base: tuple[int, ...]  # f with p_d's entry still to be set
    hub: int  # the dummy post p_d
    pairs_of_edge: dict[int, tuple[int, int]]  # original instance edges
    num_applicants: int  # real plus dummy applicants
    num_single: int  # posts with lower = upper = 1
    labels: dict[int, str] = field(default_factory=dict)

    def f_for(self, hub_target: int) -> tuple[int, ...]:
        f = list(self.f_base)
        f[self.hub] = hub_target
        return tuple(f)

    @property
    def hub_targets(self) -> tuple[int, int]:
        n = self.num_applicants + self.num_single
        return n, n + 1


def build_u2_graph(inst: Instance) -> U2Construction:
    if inst.u_max > 2:
        raise PreconditionError(f"u_max = {inst.u_max} > 2")
    na = inst.num_applicants
    relaxed = [q for q in range(1, inst.num_posts + 1) if inst.quota(q) == (1, 2)]
    n_app = na + len(relaxed)
    post_v = {q: n_app + q - 1 for q in range(1, inst.num_posts + 1)}
    hub = n_app + inst.num_posts
    labels = {a - 1: f"a{a}" for a in range(1, na + 1)}
    labels.update({n_app + q - 1: f"p{q}" for q in post_v})
    labels[hub] = "p_d"
    f = [1] * n_app + [inst.upper[q - 1] for q in post_v] + [0]
    edges: list[tuple[int, int, int]] = []
    pairs_of_edge: dict[int, tuple[int, int]] = {}

    def vertex(name: str, target: int) -> int:
        f.append(target)
        labels[len(f) - 1] = name
        return len(f) - 1

    for a, q, w in inst.edges:
        pairs_of_edge[len(edges)] = (a, q)
        edges.append((a - 1, post_v[q], w))
    for i, q in enumerate(relaxed):
        d = na + i
        labels[d] = f"d{q}"
        edges.append((d, post_v[q], 0))
    for a in range(n_app):
        edges.append((hub, a, 0))
    singles = 0
    for q in range(1, inst.num_posts + 1):
        if inst.upper[q - 1] == 1:
            singles += 1
            q1 = vertex(f"q{q}^1", 1)
            edges += [(post_v[q], q1, 0), (q1, hub, 0)]
        else:
            q1 = vertex(f"q{q}^1", 1)
            q2 = vertex(f"q{q}^2", 1)
            edges += [(post_v[q], q1, 0), (post_v[q], q2, 0), (q1, q2, 0)]
    for t in range(math.ceil((n_app + singles) / 2)):
        t1 = vertex(f"t{t}^1", 1)
        t2 = vertex(f"t{t}^2", 1)
        edges += [(hub, t1, 0), (hub, t2, 0), (t1, t2, 0)]
    return U2Construction(GeneralGraph(len(f), tuple(edges)), tuple(f), hub,
                          pairs_of_edge, n_app, singles, labels)


def u2_gadget_vertices(inst: Instance) -> int:
    """Size of the matching gadget ``solve_u2`` would build (simplified input)."""
    c = build_u2_graph(inst)
    deg = c.graph.degrees()
    target = c.hub_targets[0]
    f = c.f_for(target)
    return sum(deg) + sum(d - x for d, x in zip(deg, f))


def solve_u2(inst: Instance) -> SolveResult:
    start = time.perf_counter()
    simple, post_ids = simplify_with_map(inst)
    c = build_u2_graph(simple)
    deg = c.graph.degrees()
    best: Optional[tuple[int, frozenset]] = None
    for target in c.hub_targets:
        if target > deg[c.hub]:
            continue
        try:
            factor = max_weight_f_factor(FFactorInstance(c.graph, c.f_for(target)))
        except Infeasible:
            continue
        pairs = frozenset(c.pairs_of_edge[k] for k in factor if k in c.pairs_of_edge)
        value = sum(c.graph.edges[k][2] for k in factor if k in c.pairs_of_edge)
        if best is None or value > best[0]:
            best = (value, pairs)
    if best is None:
        best = (0, frozenset())
    res = SolveResult(best[1], best[0], "u2", exact=True, branch="u2")
    return _finish(res, post_ids, start)


# -- every post open --------------------------------------------------------------

def solve_all_open(inst: Instance) -> SolveResult:
    """Best assignment in which every post with ``u >= 1`` is open.

    Lower quota 0 is read as 1 (an open post has an assignee).  Raises
    :class:`Infeasible` when some post cannot reach its lower quota.
    """
    start = time.perf_counter()
    bounds = {}
    for p in range(1, inst.num_posts + 1):
        lo, hi = inst.quota(p)
        if hi == 0:
            continue
        lo, hi = max(lo, 1), min(hi, inst.post_degree(p))
        if lo > hi:
            raise Infeasible(f"post p{p} cannot reach lower quota {lo} "
                             f"with {inst.post_degree(p)} neighbours")
        bounds[p] = (lo, hi)
    res = max_weight_with_open_posts(inst, bounds)
    if res is None:
        raise Infeasible("no assignment opens every post")
    return SolveResult(res[1], res[0], "all_open", time.perf_counter() - start,
                       exact=True, branch="all_open")


# -- dispatcher -------------------------------------------------------------------

def width_cap(budget: int) -> int:
    # a bag of k vertices with degree >= 1 already costs 2^k cells
    return max(1, int(math.log2(budget)) - 1)


def solve(inst: Instance, choice: Optional[AlgorithmChoice] = None) -> SolveResult:
    choice = choice or AlgorithmChoice()
    v = choice.variant
    start = time.perf_counter()
    if v == "greedy":
        simple, post_ids = simplify_with_map(inst)
        return _finish(solve_greedy(simple), post_ids, start)
    if v == "twdp":
        simple, post_ids = simplify_with_map(inst)
        return _finish(dp_solve(simple, budget=choice.cell_budget,
                                strategy=choice.strategy), post_ids, start)
    if v == "degree2":
        return solve_degree2_posts(inst)
    if v == "u2":
        return solve_u2(inst)
    if v == "all_open":
        return solve_all_open(inst)
    if v == "oracle":
        return brute_force(inst, choice.oracle_caps)

    simple, post_ids = simplify_with_map(inst)
    if simple.u_max <= 2 and u2_gadget_vertices(simple) <= choice.max_gadget_vertices:
        return _finish(solve_u2(simple), post_ids, start, branch="u2")
    if simple.max_post_degree <= 2:
        return _finish(solve_degree2_posts(simple), post_ids, start, branch="degree2")
    width = None
    try:
        td = decompose_instance(simple, choice.strategy, max_width=width_cap(choice.cell_budget))
        nd = to_nice(td)
        width = nd.width
        if estimate_cost(nd, simple) <= choice.cell_budget:
            return _finish(dp_solve(simple, nd, budget=choice.cell_budget),
                           post_ids, start, branch="twdp")
    except (WidthExceeded, BudgetExceeded):
        pass
    return _finish(solve_greedy(simple), post_ids, start, branch="greedy", width=width)
