"""Tree decompositions from elimination orderings.

Vertices of an instance graph are numbered ``0..n-1``: applicant ``a`` is
``a - 1`` and post ``p`` is ``num_applicants + p - 1``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

from ..core import Instance, WMLQError

EXACT_SMALL_CAP = 20


class WidthExceeded(WMLQError):
    def __init__(self, width: int):
        super().__init__(f"elimination exceeded width cap ({width})")
        self.width = width


def instance_graph(inst: Instance) -> list[set[int]]:
    na = inst.num_applicants
    adj: list[set[int]] = [set() for _ in range(na + inst.num_posts)]
    for a, p, _ in inst.edges:
        u, v = a - 1, na + p - 1
        adj[u].add(v)
        adj[v].add(u)
    return adj


@dataclass
class TreeDecomposition:
    bags: list[frozenset]
    edges: list[tuple[int, int]]
    num_vertices: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


def check_tree_decomposition(td: TreeDecomposition, adj: Sequence[set[int]]) -> list[str]:
    """Return violated decomposition properties (empty when valid)."""
    problems = []
    nb = len(td.bags)
    tree: list[list[int]] = [[] for _ in range(nb)]
    for i, j in td.edges:
        tree[i].append(j)
        tree[j].append(i)
    if nb and len(td.edges) != nb - 1:
        problems.append("bag graph is not a tree (edge count)")
    seen = {0} if nb else set()
    stack = [0] if nb else []
    while stack:
        i = stack.pop()
        for j in tree[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != nb:
        problems.append("bag graph is disconnected")
    covered = set().union(*td.bags) if nb else set()
    for v in range(len(adj)):
        if v not in covered:
            problems.append(f"vertex {v} in no bag")
    for u in range(len(adj)):
        for v in adj[u]:
            if u < v and not any(u in b and v in b for b in td.bags):
                problems.append(f"edge ({u}, {v}) in no bag")
    for v in covered:
        holding = [i for i, b in enumerate(td.bags) if v in b]
        reach = {holding[0]}
        stack = [holding[0]]
        while stack:
            i = stack.pop()
            for j in tree[i]:
                if j not in reach and v in td.bags[j]:
                    reach.add(j)
                    stack.append(j)
        if len(reach) != len(holding):
            problems.append(f"bags holding {v} are not connected")
    return problems


def _fill_in(adj: list[set[int]], v: int) -> int:
    nbrs = list(adj[v])
    missing = 0
    for i, x in enumerate(nbrs):
        ax = adj[x]
        for y in nbrs[i + 1:]:
            if y not in ax:
                missing += 1
    return missing


def elimination_order(adj: Sequence[set[int]], strategy: str = "min_fill",
                      max_width: Optional[int] = None) -> list[int]:
    """Greedy elimination ordering; ties break toward the smaller vertex id."""
    if strategy not in ("min_fill", "min_degree"):
        raise ValueError(f"unknown heuristic {strategy!r}")
    g = [set(nb) for nb in adj]
    n = len(g)
    score = (lambda v: (_fill_in(g, v), len(g[v]))) if strategy == "min_fill" \
        else (lambda v: (len(g[v]), 0))
    current = [score(v) for v in range(n)]
    heap = [(current[v], v) for v in range(n)]
    heapq.heapify(heap)
    done = [False] * n
    order = []
    while heap:
        key, v = heapq.heappop(heap)
        if done[v] or key != current[v]:
            continue
        nbrs = g[v]
        if max_width is not None and len(nbrs) > max_width:
            raise WidthExceeded(len(nbrs))
        done[v] = True
        order.append(v)
        nl = list(nbrs)
        for i, x in enumerate(nl):
            g[x].discard(v)
            for y in nl[i + 1:]:
                if y not in g[x]:
                    g[x].add(y)
                    g[y].add(x)
        g[v] = set()
        touched = set(nl)
        if strategy == "min_fill":
            for x in nl:
                touched |= g[x]
        for x in touched:
            if not done[x]:
                new = score(x)
                if new != current[x]:
                    current[x] = new
                    heapq.heappush(heap, (new, x))
    return order


def _order_width(adj: Sequence[set[int]], order: Sequence[int]) -> int:
    g = [set(nb) for nb in adj]
    width = 0
    for v in order:
        nbrs = g[v]
        width = max(width, len(nbrs))
        nl = list(nbrs)
        for x in nl:
            g[x].discard(v)
            g[x].update(y for y in nl if y != x)
        g[v] = set()
    return width


def exact_order(adj: Sequence[set[int]]) -> list[int]:
    """Minimum-width elimination ordering by branch and bound (small graphs)."""
    n = len(adj)
    if n > EXACT_SMALL_CAP:
        raise ValueError(f"exact_small accepts at most {EXACT_SMALL_CAP} vertices, got {n}")
    if n == 0:
        return []
    best_order = elimination_order(adj, "min_fill")
    best = [_order_width(adj, best_order), best_order]
    seen: dict[int, int] = {}

    def search(g: list[set[int]], eliminated: int, order: list[int], width: int):
        if width >= best[0]:
            return
        if len(order) == n:
            best[0], best[1] = width, list(order)
            return
        if seen.get(eliminated, n + 1) <= width:
            return
        seen[eliminated] = width
        remaining = [v for v in range(n) if not eliminated >> v & 1]
        # a simplicial or almost-isolated vertex can always go first
        remaining.sort(key=lambda v: (len(g[v]), v))
        for v in remaining:
            nbrs = g[v]
            w = max(width, len(nbrs))
            if w >= best[0]:
                continue
            h = [set(s) for s in g]
            nl = list(nbrs)
            for x in nl:
                h[x].discard(v)
                h[x].update(y for y in nl if y != x)
            h[v] = set()
            order.append(v)
            search(h, eliminated | (1 << v), order, w)
            order.pop()
            if _fill_in(g, v) == 0:
                break

    search([set(s) for s in adj], 0, [], 0)
    return best[1]


def from_elimination_order(adj: Sequence[set[int]], order: Sequence[int]) -> TreeDecomposition:
    n = len(adj)
    pos = {v: i for i, v in enumerate(order)}
    g = [set(nb) for nb in adj]
    bags: list[frozenset] = []
    parent_vertex: list[Optional[int]] = []
    for v in order:
        later = g[v]
        bags.append(frozenset(later | {v}))
        parent_vertex.append(min(later, key=pos.__getitem__) if later else None)
        nl = list(later)
        for x in nl:
            g[x].discard(v)
            g[x].update(y for y in nl if y != x)
        g[v] = set()
    edges = []
    roots = []
    for i, pv in enumerate(parent_vertex):
        if pv is None:
            roots.append(i)
        else:
            edges.append((i, pos[pv]))
    # components are independent; chain their root bags into one tree
    for r1, r2 in zip(roots, roots[1:]):
        edges.append((r1, r2))
    if not bags:
        return TreeDecomposition([], [], n)
    return TreeDecomposition(bags, edges, n)


def decompose(adj: Sequence[set[int]], strategy: str = "min_fill",
              max_width: Optional[int] = None) -> TreeDecomposition:
    if strategy == "exact_small":
        order = exact_order(adj)
    else:
        order = elimination_order(adj, strategy, max_width)
    return from_elimination_order(adj, order)


def decompose_instance(inst: Instance, strategy: str = "min_fill",
                       max_width: Optional[int] = None) -> TreeDecomposition:
    return decompose(instance_graph(inst), strategy, max_width)


def post_hub_decomposition(inst: Instance) -> TreeDecomposition:
    """One central bag holding every post, with a child bag per applicant
    holding the applicant and its neighbours.  Valid for any instance; the
    width is ``max(|P| - 1, max applicant degree)``.  Useful as a fixed shape
    when only the quotas vary."""
    adj = instance_graph(inst)
    na = inst.num_applicants
    bags = [frozenset(range(na, na + inst.num_posts))]
    bags += [frozenset({a} | adj[a]) for a in range(na)]
    return TreeDecomposition(bags, [(0, i) for i in range(1, len(bags))], len(adj))


# PACE-style exchange format (1-based bag ids and vertices)

def dump_td(td: TreeDecomposition, out: TextIO) -> None:
    out.write(f"s td {len(td.bags)} {td.width + 1} {td.num_vertices}\n")
    for i, bag in enumerate(td.bags, start=1):
        out.write(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]) + "\n")
    for i, j in td.edges:
        out.write(f"{i + 1} {j + 1}\n")


def load_td(lines: Iterable[str]) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset] = {}
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise ValueError(f"line {lineno}: malformed header")
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            bags[int(parts[1])] = frozenset(int(x) - 1 for x in parts[2:])
        elif len(parts) == 2:
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        else:
            raise ValueError(f"line {lineno}: unrecognised line {raw.strip()!r}")
    if header is None:
        raise ValueError("missing 's td' header")
    nbags, _, nverts = header
    if sorted(bags) != list(range(1, nbags + 1)):
        raise ValueError(f"expected bags 1..{nbags}")
    return TreeDecomposition([bags[i] for i in range(1, nbags + 1)], edges, nverts)
