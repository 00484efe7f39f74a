"""Instances, assignments and solve results for many-to-one matching with
lower and upper quotas.

Applicants are numbered ``1..num_applicants`` and posts ``1..num_posts``; the
two id spaces are independent.  An assignment is a set of ``(applicant,
post)`` pairs in which every applicant occurs at most once and every post is
either closed (no pairs) or holds between its lower and upper quota.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

MAX_WEIGHT = 2**31
MAX_EDGES = 2**20

Edge = tuple[int, int, int]
Pair = tuple[int, int]
Assignment = frozenset  # frozenset[Pair]


class WMLQError(Exception):
    """Base class for all errors raised by this package."""


class InfeasibleAssignment(WMLQError):
    """An assignment violates a degree constraint at ``vertex``."""

    def __init__(self, reason: str, kind: str, vertex: int):
        super().__init__(reason)
        self.reason = reason
        self.kind = kind  # "applicant", "post" or "edge"
        self.vertex = vertex


class Infeasible(WMLQError):
    """A constrained problem (all-open, perfect matching, f-factor) has no solution."""


class PreconditionError(WMLQError, ValueError):
    """Input does not satisfy a solver's structural precondition."""


class BudgetExceeded(WMLQError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(
            f"dynamic program needs {estimate} table cells, budget is {budget}")
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class Instance:
    num_applicants: int
    num_posts: int
    edges: tuple[Edge, ...]
    lower: tuple[int, ...]  # indexed by post id - 1
    upper: tuple[int, ...]
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        # normalise list inputs so instances hash and compare structurally
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "lower", tuple(self.lower))
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "comments", tuple(self.comments))

    @classmethod
    def from_quotas(cls, num_applicants: int, quotas: Iterable[tuple[int, int]],
                    edges: Iterable[Edge], comments: Iterable[str] = ()) -> "Instance":
        quotas = list(quotas)
        return cls(num_applicants, len(quotas), tuple(edges),
                   tuple(q[0] for q in quotas), tuple(q[1] for q in quotas),
                   tuple(comments))

    def quota(self, p: int) -> tuple[int, int]:
        return self.lower[p - 1], self.upper[p - 1]

    @cached_property
    def weight(self) -> dict[Pair, int]:
        return {(a, p): w for a, p, w in self.edges}

    @cached_property
    def post_adjacency(self) -> list[list[tuple[int, int]]]:
        """``post_adjacency[p]`` lists ``(applicant, weight)``; index 0 unused."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_posts + 1)]
        for a, p, w in self.edges:
            adj[p].append((a, w))
        return adj

    @cached_property
    def applicant_adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_applicants + 1)]
        for a, p, w in self.edges:
            adj[a].append((p, w))
        return adj

    def post_degree(self, p: int) -> int:
        return len(self.post_adjacency[p])

    @property
    def u_max(self) -> int:
        return max(self.upper, default=0)

    @property
    def max_post_degree(self) -> int:
        return max((len(adj) for adj in self.post_adjacency[1:]), default=0)

    def is_unit_weight(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def __repr__(self) -> str:
        return (f"Instance(|A|={self.num_applicants}, |P|={self.num_posts}, "
                f"|E|={len(self.edges)})")


@dataclass
class SolveResult:
    assignment: frozenset
    objective: int
    algorithm: str
    elapsed: float = 0.0
    exact: Optional[bool] = None
    guarantee: Optional[int] = None  # approximation factor when not exact
    branch: str = ""
    cells: Optional[int] = None
    width: Optional[int] = None

    def check(self, inst: Instance) -> None:
        """Raise unless the assignment is feasible and matches ``objective``."""
        value = evaluate(inst, self.assignment)
        if value != self.objective:
            raise AssertionError(
                f"objective {self.objective} != assignment weight {value}")


def validate(inst: Instance) -> list[str]:
    """Return every structural problem with ``inst``; empty means valid."""
    problems = []
    if inst.num_applicants < 0 or inst.num_posts < 0:
        problems.append("negative vertex count")
    if len(inst.lower) != inst.num_posts or len(inst.upper) != inst.num_posts:
        problems.append("quota vectors do not match post count")
    for p, (lo, hi) in enumerate(zip(inst.lower, inst.upper), start=1):
        if lo < 0 or hi < 0:
            problems.append(f"negative quota at p{p}")
        if lo > hi:
            problems.append(f"quota order at p{p}: lower {lo} > upper {hi}")
    if len(inst.edges) > MAX_EDGES:
        problems.append(f"too many edges: {len(inst.edges)} > {MAX_EDGES}")
    seen = set()
    for a, p, w in inst.edges:
        if not 1 <= a <= inst.num_applicants:
            problems.append(f"dangling applicant id a{a}")
        if not 1 <= p <= inst.num_posts:
            problems.append(f"dangling post id p{p}")
        if not isinstance(w, int) or w < 0 or w > MAX_WEIGHT:
            problems.append(f"weight out of range on (a{a}, p{p}): {w!r}")
        if (a, p) in seen:
            problems.append(f"parallel edge (a{a}, p{p})")
        seen.add((a, p))
    return problems


def simplify_with_map(inst: Instance) -> tuple[Instance, tuple[int, ...]]:
    """Simplify ``inst`` and return ``(simplified, post_ids)``.

    ``post_ids[q - 1]`` is the original id of post ``q`` in the simplified
    instance.  Rules: cap ``u`` at the post degree, drop posts whose lower
    quota exceeds their degree, raise lower quota 0 to 1, drop posts with
    upper quota 0.  The optimum value is unchanged.
    """
    adj = inst.post_adjacency
    kept: list[int] = []
    quotas: list[tuple[int, int]] = []
    for p in range(1, inst.num_posts + 1):
        lo, hi = inst.quota(p)
        deg = len(adj[p])
        hi = min(hi, deg)
        if lo > deg or hi == 0:
            continue
        kept.append(p)
        quotas.append((max(lo, 1), hi))
    renumber = {p: q for q, p in enumerate(kept, start=1)}
    edges = tuple((a, renumber[p], w) for a, p, w in inst.edges if p in renumber)
    out = Instance.from_quotas(inst.num_applicants, quotas, edges, inst.comments)
    return out, tuple(kept)


def simplify(inst: Instance) -> Instance:
    return simplify_with_map(inst)[0]


def lift_assignment(pairs: Iterable[Pair], post_ids: tuple[int, ...]) -> frozenset:
    """Translate pairs on a simplified instance back to original post ids."""
    return frozenset((a, post_ids[q - 1]) for a, q in pairs)


def evaluate(inst: Instance, pairs: Iterable[Pair]) -> int:
    """Weight of ``pairs``; raises :class:`InfeasibleAssignment` if infeasible."""
    weight = inst.weight
    taken: dict[int, int] = {}
    count: dict[int, int] = {}
    total = 0
    for a, p in sorted(pairs):
        if (a, p) not in weight:
            raise InfeasibleAssignment(f"pair (a{a}, p{p}) is not an edge", "edge", a)
        if a in taken:
            raise InfeasibleAssignment(
                f"applicant a{a} doubly assigned (p{taken[a]} and p{p})", "applicant", a)
        taken[a] = p
        count[p] = count.get(p, 0) + 1
        total += weight[(a, p)]
    for p in sorted(count):
        lo, hi = inst.quota(p)
        if not lo <= count[p] <= hi:
            raise InfeasibleAssignment(
                f"post p{p} has {count[p]} assignees, outside {{0}} u [{lo}, {hi}]",
                "post", p)
    return total


def is_feasible(inst: Instance, pairs: Iterable[Pair]) -> bool:
    try:
        evaluate(inst, pairs)
    except InfeasibleAssignment:
        return False
    return True
