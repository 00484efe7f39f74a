"""Text formats for instances, solutions and plain graphs.

Instance::

    c <free text>            (comments, any position; rendered first)
    wmlq <|A|> <|P|> <|E|>
    p <post> <lower> <upper>     one per post, ids 1..|P|
    e <applicant> <post> <weight>

Solution::

    sol <objective> <#pairs>
    a <applicant> <post>
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Instance, WMLQError


class FormatError(WMLQError, ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _ints(parts, lineno, count):
    if len(parts) != count:
        raise FormatError(lineno, f"expected {count} fields, got {len(parts)}")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise FormatError(lineno, f"non-integer field in {' '.join(parts)!r}") from None


def parse_instance(text: str) -> Instance:
    comments = []
    header = None
    header_line = 0
    quotas: dict[int, tuple[int, int]] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == "c" or line.startswith("c "):
            comments.append(line[2:])
            continue
        tag, *rest = line.split()
        if tag == "wmlq":
            if header is not None:
                raise FormatError(lineno, "duplicate header")
            header = _ints(rest, lineno, 3)
            header_line = lineno
        elif header is None:
            raise FormatError(lineno, "body line before 'wmlq' header")
        elif tag == "p":
            p, lo, hi = _ints(rest, lineno, 3)
            if not 1 <= p <= header[1]:
                raise FormatError(lineno, f"post id {p} out of range 1..{header[1]}")
            if p in quotas:
                raise FormatError(lineno, f"post {p} declared twice")
            quotas[p] = (lo, hi)
        elif tag == "e":
            a, p, w = _ints(rest, lineno, 3)
            if not 1 <= a <= header[0]:
                raise FormatError(lineno, f"applicant id {a} out of range 1..{header[0]}")
            if not 1 <= p <= header[1]:
                raise FormatError(lineno, f"post id {p} out of range 1..{header[1]}")
            edges.append((a, p, w))
        else:
            raise FormatError(lineno, f"unknown line type {tag!r}")
    if header is None:
        raise FormatError(0, "missing 'wmlq' header")
    na, np_, ne = header
    if len(quotas) != np_:
        raise FormatError(header_line, f"header declares {np_} posts, body has {len(quotas)}")
    if len(edges) != ne:
        raise FormatError(header_line, f"header declares {ne} edges, body has {len(edges)}")
    return Instance.from_quotas(na, [quotas[p] for p in range(1, np_ + 1)], edges, comments)


def render_instance(inst: Instance) -> str:
    lines = [f"c {c}" if c else "c" for c in inst.comments]
    lines.append(f"wmlq {inst.num_applicants} {inst.num_posts} {len(inst.edges)}")
    lines += [f"p {p} {lo} {hi}"
              for p, (lo, hi) in enumerate(zip(inst.lower, inst.upper), start=1)]
    lines += [f"e {a} {p} {w}" for a, p, w in inst.edges]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Solution:
    objective: int
    pairs: tuple[tuple[int, int], ...]


def parse_solution(text: str) -> Solution:
    header = None
    header_line = 0
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        tag, *rest = line.split()
        if tag == "sol":
            if header is not None:
                raise FormatError(lineno, "duplicate header")
            header = _ints(rest, lineno, 2)
            header_line = lineno
        elif tag == "a":
            if header is None:
                raise FormatError(lineno, "pair before 'sol' header")
            pairs.append(tuple(_ints(rest, lineno, 2)))
        else:
            raise FormatError(lineno, f"unknown line type {tag!r}")
    if header is None:
        raise FormatError(0, "missing 'sol' header")
    if len(pairs) != header[1]:
        raise FormatError(header_line, f"header declares {header[1]} pairs, body has {len(pairs)}")
    return Solution(header[0], tuple(pairs))


def render_solution(objective: int, pairs: Iterable[tuple[int, int]]) -> str:
    pairs = sorted(pairs)
    lines = [f"sol {objective} {len(pairs)}"] + [f"a {a} {p}" for a, p in pairs]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> tuple[int, list[tuple[int, int]], list[int]]:
    """Read a simple graph in DIMACS (``p edge n m`` / ``e u v [w]``) or PACE
    (``p tw n m`` / ``u v [w]``) style.  Vertices are 1-based in the file and
    0-based in the result; missing weights default to 1."""
    n = None
    edges: list[tuple[int, int]] = []
    weights: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4:
                raise FormatError(lineno, "malformed problem line")
            n = int(parts[2])
            continue
        if parts[0] == "e":
            parts = parts[1:]
        if n is None:
            raise FormatError(lineno, "edge before problem line")
        if len(parts) not in (2, 3):
            raise FormatError(lineno, "edge line needs 2 or 3 fields")
        u, v, *w = _ints(parts, lineno, len(parts))
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(lineno, f"vertex out of range 1..{n}")
        edges.append((u - 1, v - 1))
        weights.append(w[0] if w else 1)
    if n is None:
        raise FormatError(0, "missing problem line")
    return n, edges, weights


def render_graph(n: int, edges: Iterable[tuple[int, int]]) -> str:
    edges = list(edges)
    return "\n".join([f"p edge {n} {len(edges)}"] +
                     [f"e {u + 1} {v + 1}" for u, v in edges]) + "\n"
