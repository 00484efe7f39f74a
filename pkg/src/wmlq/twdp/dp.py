"""Dynamic program over a nice tree decomposition.

For a bag ``b`` and an assignment vector ``alpha`` (one count per bag vertex)
the table holds the best weight of an edge set inside the subtree graph that
(i) touches each bag vertex exactly ``alpha`` times, (ii) is feasible at every
vertex already forgotten, and (iii) uses no edge with both ends in ``b``.
Cells that cannot be realised are simply absent from the table.

Applicants are treated as posts with lower = upper = 1.  Each vertex ranges
over ``0..min(upper, degree)``.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Optional

from ..core import BudgetExceeded, Instance, SolveResult
from .decomposition import decompose_instance, instance_graph
from .nice import FORGET, INTRODUCE, JOIN, LEAF, NiceDecomposition, to_nice

DEFAULT_CELL_BUDGET = 10**8


class _Model:
    """Per-vertex quotas, domains and edge weights on the 0-based vertex set."""

    def __init__(self, inst: Instance):
        na = inst.num_applicants
        self.na = na
        n = na + inst.num_posts
        self.lower = [1] * na + list(inst.lower)
        self.upper = [1] * na + list(inst.upper)
        self.adj = instance_graph(inst)
        self.dom = [min(self.upper[v], len(self.adj[v])) + 1 for v in range(n)]
        self.weight: dict[tuple[int, int], int] = {}
        for a, p, w in inst.edges:
            u, v = a - 1, na + p - 1
            self.weight[(u, v)] = self.weight[(v, u)] = w

    def degree_options(self, v: int) -> list[int]:
        return [0] + list(range(max(self.lower[v], 1), self.upper[v] + 1))

    def to_pair(self, u: int, v: int) -> tuple[int, int]:
        if u > v:
            u, v = v, u
        return u + 1, v - self.na + 1


def estimate_cost(nd: NiceDecomposition, inst: Instance) -> int:
    """Exact number of table cells the DP will range over."""
    adj = instance_graph(inst)
    upper = [1] * inst.num_applicants + list(inst.upper)
    dom = [min(upper[v], len(adj[v])) + 1 for v in range(len(adj))]
    return sum(math.prod(dom[v] for v in node.bag) for node in nd.nodes)


@dataclass
class DPTables:
    nd: NiceDecomposition
    model: _Model
    tables: list[dict] = field(default_factory=list)
    cells: int = 0

    def value(self, node: int, alpha: tuple[int, ...]) -> Optional[int]:
        hit = self.tables[node].get(alpha)
        return None if hit is None else hit[0]

    def reconstruct(self, node: int, alpha: tuple[int, ...]) -> set[tuple[int, int]]:
        """Edge set (0-based vertex pairs) realising table cell ``(node, alpha)``."""
        nodes = self.nd.nodes
        out: set[tuple[int, int]] = set()
        stack = [(node, alpha)]
        while stack:
            idx, a = stack.pop()
            nd_node = nodes[idx]
            _, choice = self.tables[idx][a]
            if nd_node.kind == LEAF:
                continue
            if nd_node.kind == INTRODUCE:
                pos = nd_node.bag.index(nd_node.vertex)
                stack.append((nd_node.children[0], a[:pos] + a[pos + 1:]))
            elif nd_node.kind == FORGET:
                subset, child_alpha = choice
                for x in subset:
                    out.add((min(nd_node.vertex, x), max(nd_node.vertex, x)))
                stack.append((nd_node.children[0], child_alpha))
            else:
                a1 = choice
                a2 = tuple(x - y for x, y in zip(a, a1))
                stack.append((nd_node.children[0], a1))
                stack.append((nd_node.children[1], a2))
        return out


def _subtree_vertices(nd: NiceDecomposition) -> list[set[int]]:
    below: list[set[int]] = []
    for node in nd.nodes:
        s = set(node.bag)
        for c in node.children:
            s |= below[c]
        below.append(s)
    return below


def run_tables(inst: Instance, nd: NiceDecomposition, audit: bool = False) -> DPTables:
    """Fill every table bottom-up."""
    model = _Model(inst)
    dom, adj, weight = model.dom, model.adj, model.weight
    dp = DPTables(nd, model)
    tables = dp.tables
    below = _subtree_vertices(nd) if audit else None

    for idx, node in enumerate(nd.nodes):
        bag = node.bag
        ranges = [range(dom[v]) for v in bag]
        dp.cells += math.prod(len(r) for r in ranges)
        table: dict = {}

        if node.kind == LEAF:
            table[(0,) * len(bag)] = (0, None)

        elif node.kind == INTRODUCE:
            v = node.vertex
            child = tables[node.children[0]]
            if audit:
                stray = (adj[v] & below[node.children[0]]) - set(bag)
                assert not stray, f"introduced {v} has edges below its bag: {stray}"
            pos = bag.index(v)
            for a, (val, _) in child.items():
                table[a[:pos] + (0,) + a[pos:]] = (val, None)

        elif node.kind == FORGET:
            v = node.vertex
            child = tables[node.children[0]]
            cbag = nd.nodes[node.children[0]].bag
            cpos = cbag.index(v)
            nbrs = [(i, x) for i, x in enumerate(bag) if x in adj[v]]
            subsets = []
            for r in range(len(nbrs) + 1):
                for combo in itertools.combinations(nbrs, r):
                    subsets.append((tuple(i for i, _ in combo),
                                    tuple(x for _, x in combo),
                                    sum(weight[(v, x)] for _, x in combo)))
            options = model.degree_options(v)
            for a in itertools.product(*ranges):
                best = None
                for positions, verts, w in subsets:
                    if any(a[i] == 0 for i in positions):
                        continue
                    reduced = list(a)
                    for i in positions:
                        reduced[i] -= 1
                    k = len(positions)
                    for total in options:
                        if total < k:
                            continue
                        key = tuple(reduced[:cpos]) + (total - k,) + tuple(reduced[cpos:])
                        hit = child.get(key)
                        if hit is not None:
                            cand = hit[0] + w
                            if best is None or cand > best[0]:
                                best = (cand, (verts, key))
                if best is not None:
                    table[a] = best

        elif node.kind == JOIN:
            left = tables[node.children[0]]
            right = tables[node.children[1]]
            if audit:
                inter = below[node.children[0]] & below[node.children[1]]
                assert inter == set(bag), f"join children share {inter - set(bag)}"
            for a in itertools.product(*ranges):
                best = None
                for a1 in itertools.product(*(range(x + 1) for x in a)):
                    h1 = left.get(a1)
                    if h1 is None:
                        continue
                    h2 = right.get(tuple(x - y for x, y in zip(a, a1)))
                    if h2 is None:
                        continue
                    cand = h1[0] + h2[0]
                    if best is None or cand > best[0]:
                        best = (cand, a1)
                if best is not None:
                    table[a] = best
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        tables.append(table)
    return dp


def solve_root(dp: DPTables, node: Optional[int] = None):
    """Combine the table of a (possibly non-empty) top bag with edges inside it.

    Returns ``(value, alpha, inner_edges)``; edges between two top-bag
    vertices are never counted by the tables, so they are chosen here.
    """
    nd, model = dp.nd, dp.model
    node = nd.root if node is None else node
    bag = nd.nodes[node].bag
    inner = [(x, y) for i, x in enumerate(bag) for y in bag[i + 1:] if y in model.adj[x]]
    best = None
    for r in range(len(inner) + 1):
        for subset in itertools.combinations(inner, r):
            extra = [0] * len(bag)
            for x, y in subset:
                extra[bag.index(x)] += 1
                extra[bag.index(y)] += 1
            w = sum(model.weight[e] for e in subset)
            for alpha, (val, _) in dp.tables[node].items():
                ok = True
                for i, v in enumerate(bag):
                    d = alpha[i] + extra[i]
                    if d and not model.lower[v] <= d <= model.upper[v]:
                        ok = False
                        break
                if ok and (best is None or val + w > best[0]):
                    best = (val + w, alpha, set(subset))
    return best


def dp_solve(inst: Instance, nd: Optional[NiceDecomposition] = None,
             budget: int = DEFAULT_CELL_BUDGET, strategy: str = "min_fill",
             audit: bool = False) -> SolveResult:
    start = time.perf_counter()
    if nd is None:
        nd = to_nice(decompose_instance(inst, strategy))
    estimate = estimate_cost(nd, inst)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    dp = run_tables(inst, nd, audit=audit)
    value, alpha, inner = solve_root(dp)
    edges = dp.reconstruct(nd.root, alpha) | inner
    pairs = frozenset(dp.model.to_pair(u, v) for u, v in edges)
    return SolveResult(pairs, value, "twdp", time.perf_counter() - start, exact=True,
                       branch="twdp", cells=dp.cells, width=nd.width)
