"""Brute-force exact solver used as ground truth.

Two independent routes:

* open-set enumeration: every subset of posts is tried as the set of open
  posts and the remaining problem is solved as a lower-bounded flow;
* edge-subset enumeration: all ``2^|E|`` edge subsets are checked for
  feasibility in one vectorised numpy pass (small ``|E|`` only).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core import Infeasible, Instance, PreconditionError, SolveResult
from .flow import max_weight_with_open_posts


@dataclass(frozen=True)
class OracleCaps:
    max_posts: int = 12
    max_edges: int = 24
    max_enum_edges: int = 20


DEFAULT_CAPS = OracleCaps()


class OracleMismatch(AssertionError):
    pass


def _open_bounds(inst: Instance, p: int) -> tuple[int, int]:
    lo, hi = inst.quota(p)
    return max(lo, 1), min(hi, inst.post_degree(p))


def _openable(inst: Instance) -> list[int]:
    out = []
    for p in range(1, inst.num_posts + 1):
        lo, hi = _open_bounds(inst, p)
        if lo <= hi:
            out.append(p)
    return out


def brute_force_forced_open(inst: Instance, open_posts: Iterable[int]) -> tuple[int, frozenset]:
    """Optimum with exactly ``open_posts`` open; raises :class:`Infeasible`."""
    bounds = {p: _open_bounds(inst, p) for p in open_posts}
    res = max_weight_with_open_posts(inst, bounds)
    if res is None:
        raise Infeasible(f"open set {sorted(bounds)} cannot meet its lower quotas")
    return res


def _by_open_sets(inst: Instance) -> tuple[int, frozenset]:
    posts = _openable(inst)
    best, best_pairs = 0, frozenset()
    for mask in range(1, 1 << len(posts)):
        chosen = [p for i, p in enumerate(posts) if mask >> i & 1]
        res = max_weight_with_open_posts(inst, {p: _open_bounds(inst, p) for p in chosen})
        if res is not None and res[0] > best:
            best, best_pairs = res
    return best, best_pairs


def enumerate_edge_subsets(inst: Instance) -> tuple[int, frozenset]:
    """Exhaustive search over all edge subsets (vectorised)."""
    m = len(inst.edges)
    if m == 0:
        return 0, frozenset()
    codes = np.arange(1 << m, dtype=np.int64)
    values = np.zeros(len(codes), dtype=np.int64)
    a_count: dict[int, np.ndarray] = {}
    p_count: dict[int, np.ndarray] = {}
    for k, (a, p, w) in enumerate(inst.edges):
        bit = ((codes >> k) & 1).astype(np.int8)
        values += bit.astype(np.int64) * w
        a_count[a] = a_count[a] + bit if a in a_count else bit
        p_count[p] = p_count[p] + bit if p in p_count else bit
    ok = np.ones(len(codes), dtype=bool)
    for cnt in a_count.values():
        ok &= cnt <= 1
    for p, cnt in p_count.items():
        lo, hi = inst.quota(p)
        ok &= (cnt == 0) | ((cnt >= lo) & (cnt <= hi))
    values = np.where(ok, values, -1)
    best = int(np.argmax(values))
    pairs = frozenset((a, p) for k, (a, p, _) in enumerate(inst.edges) if best >> k & 1)
    return int(values[best]), pairs


def brute_force(inst: Instance, caps: OracleCaps = DEFAULT_CAPS,
                cross_check: bool = True) -> SolveResult:
    if inst.num_posts > caps.max_posts or len(inst.edges) > caps.max_edges:
        raise PreconditionError(
            f"oracle caps exceeded: |P|={inst.num_posts} (cap {caps.max_posts}), "
            f"|E|={len(inst.edges)} (cap {caps.max_edges})")
    start = time.perf_counter()
    value, pairs = _by_open_sets(inst)
    if cross_check and len(inst.edges) <= caps.max_enum_edges:
        other, _ = enumerate_edge_subsets(inst)
        if other != value:
            raise OracleMismatch(f"open-set route {value} != edge enumeration {other}")
    return SolveResult(pairs, value, "oracle", time.perf_counter() - start,
                       exact=True, branch="oracle")


def oracle_value(inst: Instance, caps: Optional[OracleCaps] = None) -> int:
    return brute_force(inst, caps or DEFAULT_CAPS, cross_check=False).objective
