"""Maximum-weight assignment with a fixed set of open posts.

Each open post ``p`` must receive between ``lo(p)`` and ``hi(p)`` applicants,
every other post stays closed.  The problem is a min-cost circulation once the
lower bounds are moved into node demands:

    s -> a (cap 1)   a -> p (cap 1, cost -w)   p -> t (cap hi - lo)   t -> s

with demand ``+lo`` at ``p`` and ``-lo`` at ``t``.  The constraint matrix is
totally unimodular so network simplex returns an integral optimum.
"""

from __future__ import annotations

from typing import Mapping, Optional

import networkx as nx

from .core import Instance


def max_weight_with_open_posts(
    inst: Instance, bounds: Mapping[int, tuple[int, int]]
) -> Optional[tuple[int, frozenset]]:
    """Return ``(weight, pairs)`` or ``None`` if the lower bounds cannot be met.

    ``bounds`` maps each open post to ``(lo, hi)``; posts not listed are closed.
    """
    adj = inst.post_adjacency
    for p, (lo, hi) in bounds.items():
        if lo > hi or lo > len(adj[p]):
            return None
    if not bounds:
        return 0, frozenset()

    g = nx.DiGraph()
    total_lo = 0
    applicants = set()
    for p, (lo, hi) in bounds.items():
        g.add_node(("p", p), demand=lo)
        total_lo += lo
        if hi > lo:
            g.add_edge(("p", p), "t", capacity=hi - lo, weight=0)
        for a, w in adj[p]:
            applicants.add(a)
            g.add_edge(("a", a), ("p", p), capacity=1, weight=-w)
    for a in applicants:
        g.add_edge("s", ("a", a), capacity=1, weight=0)
    g.add_node("t", demand=-total_lo)
    g.add_edge("t", "s", capacity=len(applicants), weight=0)

    try:
        cost, flow = nx.network_simplex(g)
    except nx.NetworkXUnfeasible:
        return None
    pairs = frozenset(
        (a[1], p[1])
        for a, out in flow.items() if isinstance(a, tuple) and a[0] == "a"
        for p, x in out.items() if x
    )
    return -cost, pairs
