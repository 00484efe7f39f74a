"""Instance generators: reduction constructions, tight examples, random families.

Graph inputs are ``(n, edges)`` with vertices ``0..n-1``.  Applicant and post
numbering is part of each generator's contract and documented per function,
because the greedy worst cases depend on tie-breaking by id.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import Instance

GraphEdges = Sequence[tuple[int, int]]


def _check_simple(n: int, edges: GraphEdges) -> None:
    seen = set()
    for u, v in edges:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"bad edge ({u}, {v}) for {n} vertices")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"parallel edge {key}")
        seen.add(key)


def gen_mis_cubic(n: int, edges: GraphEdges) -> Instance:
    """Post ``v+1`` per vertex (lower = upper = 3), applicant ``k+1`` per edge
    ``k`` adjacent to both endpoint posts.  Optimum is 3 * MIS."""
    _check_simple(n, edges)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if any(d != 3 for d in deg):
        raise ValueError("graph is not cubic")
    out = []
    for k, (u, v) in enumerate(edges, start=1):
        out += [(k, min(u, v) + 1, 1), (k, max(u, v) + 1, 1)]
    return Instance.from_quotas(len(edges), [(3, 3)] * n, out,
                                [f"mis-cubic n={n} m={len(edges)}"])


def gen_inapprox(n: int, edges: GraphEdges) -> Instance:
    """``n`` posts with lower = upper = n and ``n^2 - m`` unit-weight applicants.

    Applicant ``a_{i,j}`` applies to post ``i+1``; for every edge ``{i, j}``
    the applicants ``a_{i,j}`` and ``a_{j,i}`` are one applicant applying to
    both posts.  Ids follow row-major order of ``(i, j)``, skipping the
    second copy of each merged pair.
    """
    _check_simple(n, edges)
    adjacent = {(u, v) for u, v in edges} | {(v, u) for u, v in edges}
    out = []
    a = 0
    for i in range(n):
        for j in range(n):
            if (i, j) in adjacent and j < i:
                continue
            a += 1
            out.append((a, i + 1, 1))
            if (i, j) in adjacent:
                out.append((a, j + 1, 1))
    return Instance.from_quotas(a, [(n, n)] * n, out,
                                [f"inapprox n={n} m={len(edges)}"])


def gen_outdegree(n: int, edges: GraphEdges, weights: Sequence[int], bound: int,
                  max_applicants: int = 100_000) -> Instance:
    """Minimum Maximum Outdegree instance as a unit-weight matching instance.

    Posts ``1..n`` are the vertex posts (lower 0, upper ``bound``).  Edge
    ``k = {v, v'}`` adds posts ``p_{k,v}``, ``p_{k,v'}`` with lower = upper =
    ``w_k + 1`` and applicants ``a^1..a^w`` on each side plus ``z_k``.  Every
    applicant can be served iff an orientation with weighted outdegree at
    most ``bound`` exists.
    """
    _check_simple(n, edges)
    if len(weights) != len(edges):
        raise ValueError("one weight per edge required")
    if any(w <= 0 for w in weights):
        raise ValueError("edge weights must be positive")
    if bound < 0:
        raise ValueError("bound must be non-negative")
    size = sum(2 * w + 1 for w in weights)
    if size > max_applicants:
        raise ValueError(f"unary weights give {size} applicants (cap {max_applicants})")
    quotas = [(0, bound)] * n
    out = []
    a = 0
    for (v, v2), w in zip(edges, weights):
        side_posts = []
        for end in (v, v2):
            quotas.append((w + 1, w + 1))
            p_e = len(quotas)
            side_posts.append(p_e)
            for _ in range(w):
                a += 1
                out += [(a, end + 1, 1), (a, p_e, 1)]
        a += 1
        out += [(a, side_posts[0], 1), (a, side_posts[1], 1)]
    return Instance.from_quotas(a, quotas, out,
                                [f"outdegree n={n} m={len(edges)} r={bound}"])


def gen_tight_a(k: int) -> Instance:
    """Greedy worst case with ratio ``1/(k+1)``.

    Post 1 is the hub ``p_0``; post ``i+1`` is ``p_i``; all have lower =
    upper = k.  Applicants ``1..k`` are ``a_{1,1}, ..., a_{k,1}``; then come
    ``a_{i,j}`` for ``i = 1..k, j = 2..k`` and finally ``a_{0,1..k}``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    order = [(i, 1) for i in range(1, k + 1)]
    order += [(i, j) for i in range(1, k + 1) for j in range(2, k + 1)]
    order += [(0, j) for j in range(1, k + 1)]
    out = []
    for a, (i, _) in enumerate(order, start=1):
        out.append((a, 1, 1))
        if i:
            out.append((a, i + 1, 1))
    return Instance.from_quotas(len(order), [(k, k)] * (k + 1), out, [f"tight-a k={k}"])


def gen_tight_b(k: int, scale: int) -> Instance:
    """``k`` posts (lower 0, upper k), ``k`` applicants, complete bipartite;
    ``w(a_i, p_i) = scale`` and every other weight is 1."""
    if k < 2 or scale < 2:
        raise ValueError("need k >= 2 and scale >= 2")
    out = [(a, p, scale if a == p else 1) for a in range(1, k + 1) for p in range(1, k + 1)]
    return Instance.from_quotas(k, [(0, k)] * k, out, [f"tight-b k={k} W={scale}"])


def gen_random(seed: int, n_applicants: int, n_posts: int,
               degree: tuple[int, int] = (1, 3), lower: tuple[int, int] = (0, 2),
               upper: tuple[int, int] = (1, 3), weight: tuple[int, int] = (1, 10),
               degree_side: str = "applicant") -> Instance:
    """Reproducible random instance.

    Each applicant (or each post, with ``degree_side="post"``) picks a
    uniform number of distinct neighbours in ``degree``.  Upper quotas are
    uniform in ``upper``; lower quotas uniform in ``lower`` clipped to the
    post's upper quota.
    """
    for name, (lo, hi) in (("degree", degree), ("lower", lower),
                           ("upper", upper), ("weight", weight)):
        if lo < 0 or lo > hi:
            raise ValueError(f"inconsistent {name} range {lo}..{hi}")
    if n_applicants < 0 or n_posts < 0:
        raise ValueError("vertex counts must be non-negative")
    if degree_side not in ("applicant", "post"):
        raise ValueError("degree_side is 'applicant' or 'post'")
    other = n_posts if degree_side == "applicant" else n_applicants
    if degree[0] > other:
        raise ValueError(f"minimum degree {degree[0]} exceeds {other} available neighbours")
    if lower[0] > upper[1]:
        raise ValueError("lower range lies above upper range")
    rng = np.random.default_rng(seed)
    quotas = []
    for _ in range(n_posts):
        u = int(rng.integers(upper[0], upper[1] + 1))
        lo_hi = min(lower[1], u)
        lo = int(rng.integers(min(lower[0], lo_hi), lo_hi + 1))
        quotas.append((lo, u))
    pairs = []
    owners = n_applicants if degree_side == "applicant" else n_posts
    for x in range(1, owners + 1):
        d = int(rng.integers(degree[0], min(degree[1], other) + 1))
        for y in sorted(int(t) + 1 for t in rng.choice(other, size=d, replace=False)):
            pairs.append((x, y) if degree_side == "applicant" else (y, x))
    pairs.sort()
    edges = [(a, p, int(rng.integers(weight[0], weight[1] + 1))) for a, p in pairs]
    return Instance.from_quotas(n_applicants, quotas, edges,
                                [f"random seed={seed} nA={n_applicants} nP={n_posts}"])


def gen_theta(per_pair: int, u_max: int, seed: Optional[int] = None) -> Instance:
    """Three posts; for each pair of posts, ``per_pair`` applicants adjacent to
    both.  Treewidth 2 with a three-post bag, so DP tables grow like
    ``(u_max + 1)^3``."""
    if per_pair < 1 or u_max < 1:
        raise ValueError("need per_pair >= 1 and u_max >= 1")
    rng = np.random.default_rng(seed) if seed is not None else None
    out = []
    a = 0
    for p1, p2 in ((1, 2), (1, 3), (2, 3)):
        for _ in range(per_pair):
            a += 1
            for p in (p1, p2):
                w = 1 if rng is None else int(rng.integers(1, 11))
                out.append((a, p, w))
    return Instance.from_quotas(a, [(1, u_max)] * 3, out,
                                [f"theta per_pair={per_pair} u_max={u_max}"])


def gen_hub3(private: int, shared: int, u_max: int) -> Instance:
    """Three posts with ``private`` single-post applicants each and ``shared``
    applicants per pair of posts.  Posts have degree ``private + 2*shared``;
    weights are deterministic small integers."""
    if private < 0 or shared < 1 or u_max < 1:
        raise ValueError("need private >= 0, shared >= 1 and u_max >= 1")
    out = []
    a = 0
    for p in (1, 2, 3):
        for _ in range(private):
            a += 1
            out.append((a, p, 1 + a % 5))
    for p1, p2 in ((1, 2), (1, 3), (2, 3)):
        for _ in range(shared):
            a += 1
            out += [(a, p1, 2 + a % 3), (a, p2, 3)]
    return Instance.from_quotas(a, [(1, u_max)] * 3, out,
                                [f"hub3 private={private} shared={shared} u_max={u_max}"])


def gen_series_parallel(seed: int, n_posts: int, links: tuple[int, int] = (1, 3),
                        private: tuple[int, int] = (0, 2), u_max: int = 3,
                        weight: tuple[int, int] = (1, 10)) -> Instance:
    """A chain of posts; consecutive posts share a few applicants and every
    post may also have private applicants.  Treewidth at most 2."""
    if n_posts < 1 or u_max < 1:
        raise ValueError("need n_posts >= 1 and u_max >= 1")
    rng = np.random.default_rng(seed)
    out = []
    a = 0
    for p in range(1, n_posts + 1):
        for _ in range(int(rng.integers(private[0], private[1] + 1))):
            a += 1
            out.append((a, p, int(rng.integers(weight[0], weight[1] + 1))))
        if p < n_posts:
            for _ in range(int(rng.integers(links[0], links[1] + 1))):
                a += 1
                out.append((a, p, int(rng.integers(weight[0], weight[1] + 1))))
                out.append((a, p + 1, int(rng.integers(weight[0], weight[1] + 1))))
    quotas = []
    for _ in range(n_posts):
        u = int(rng.integers(1, u_max + 1))
        quotas.append((int(rng.integers(0, u + 1)), u))
    return Instance.from_quotas(a, quotas, out,
                                [f"series-parallel seed={seed} posts={n_posts}"])
