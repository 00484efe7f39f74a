"""Greedy (u_max + 1)-approximation.

Repeatedly open the admissible post with the largest assignable weight and
give it its best applicants.  A post is admissible while it is closed and has
at least ``lower`` unassigned neighbours; its assignable weight is the sum of
its ``min(upper, available)`` heaviest unassigned neighbours.

Each post keeps its neighbours sorted by ``(weight desc, applicant asc)`` and
a window holding the current top-``upper`` unassigned entries.  When an
applicant is taken elsewhere the window is refilled from a forward-only
cursor, so the total refill work is O(|E|).  Heap keys are validated lazily
on pop.
"""

from __future__ import annotations

import heapq
import time
from typing import Optional

from .core import Instance, SolveResult


class _PostState:
    __slots__ = ("order", "cursor", "window", "key", "available", "alive")

    def __init__(self, order: list[tuple[int, int]], upper: int):
        self.order = order  # (applicant, weight), best first
        take = min(upper, len(order))
        self.window = set(a for a, _ in order[:take])
        self.key = sum(w for _, w in order[:take])
        self.cursor = take
        self.available = len(order)
        self.alive = True


def assignable_weight(inst: Instance, p: int, unassigned: set[int]) -> Optional[int]:
    """Best weight post ``p`` can collect from ``unassigned``; ``None`` if it
    cannot reach its lower quota."""
    lo, hi = inst.quota(p)
    ws = sorted((w for a, w in inst.post_adjacency[p] if a in unassigned), reverse=True)
    if len(ws) < lo:
        return None
    return sum(ws[:min(hi, len(ws))])


def solve_greedy(inst: Instance) -> SolveResult:
    start = time.perf_counter()
    upper = inst.upper
    lower = inst.lower
    states: list[Optional[_PostState]] = [None]
    heap: list[tuple[int, int]] = []
    for p in range(1, inst.num_posts + 1):
        order = sorted(inst.post_adjacency[p], key=lambda aw: (-aw[1], aw[0]))
        st = _PostState(order, upper[p - 1])
        states.append(st)
        if st.available >= lower[p - 1]:
            heapq.heappush(heap, (-st.key, p))
        else:
            st.alive = False

    assigned: set[int] = set()
    applicant_posts = inst.applicant_adjacency
    pairs = []
    total = 0
    while heap:
        negkey, p = heapq.heappop(heap)
        st = states[p]
        if not st.alive:
            continue
        if -negkey != st.key:
            heapq.heappush(heap, (-st.key, p))
            continue
        # open p with its current window
        st.alive = False
        chosen = [a for a, _ in st.order[:st.cursor] if a in st.window]
        total += st.key
        for a in chosen:
            pairs.append((a, p))
            assigned.add(a)
        for a in chosen:
            for q, _ in applicant_posts[a]:
                sq = states[q]
                if q == p or not sq.alive:
                    continue
                sq.available -= 1
                if sq.available < lower[q - 1]:
                    sq.alive = False
                    continue
                if a in sq.window:
                    sq.window.discard(a)
                    sq.key -= inst.weight[(a, q)]
                    order = sq.order
                    while sq.cursor < len(order) and order[sq.cursor][0] in assigned:
                        sq.cursor += 1
                    if sq.cursor < len(order):
                        b, wb = order[sq.cursor]
                        sq.window.add(b)
                        sq.key += wb
                        sq.cursor += 1

    u = inst.u_max
    factor = min(inst.num_posts, inst.num_applicants, u + 1) if inst.num_posts else 1
    return SolveResult(frozenset(pairs), total, "greedy", time.perf_counter() - start,
                       exact=False, guarantee=max(factor, 1), branch="greedy")
