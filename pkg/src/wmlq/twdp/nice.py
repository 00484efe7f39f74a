"""Nice tree decompositions.

Nodes are stored children-first, so iterating ``nodes`` in order is a valid
bottom-up schedule and ``nodes[-1]`` is the root.  By default the root bag is
empty, reached through a trailing chain of forget nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .decomposition import TreeDecomposition

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass
class NiceNode:
    kind: str
    bag: tuple[int, ...]  # sorted
    vertex: Optional[int] = None  # introduced / forgotten vertex
    children: tuple[int, ...] = ()


@dataclass
class NiceDecomposition:
    nodes: list[NiceNode] = field(default_factory=list)

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(n.bag) for n in self.nodes), default=0) - 1

    def _add(self, kind, bag, vertex=None, children=()) -> int:
        self.nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(self.nodes) - 1


def _chain(nd: NiceDecomposition, top: int, target: frozenset) -> int:
    """Extend node ``top`` with forgets then introduces until its bag is ``target``."""
    cur = set(nd.nodes[top].bag)
    for v in sorted(cur - target):
        cur.discard(v)
        top = nd._add(FORGET, cur, v, (top,))
    for v in sorted(target - cur):
        cur.add(v)
        top = nd._add(INTRODUCE, cur, v, (top,))
    return top


def to_nice(td: TreeDecomposition, root: int = 0, empty_root: bool = True) -> NiceDecomposition:
    nd = NiceDecomposition()
    if not td.bags:
        nd._add(LEAF, ())
        return nd
    nb = len(td.bags)
    tree: list[list[int]] = [[] for _ in range(nb)]
    for i, j in td.edges:
        tree[i].append(j)
        tree[j].append(i)
    # iterative post-order over the rooted bag tree
    parent = [-1] * nb
    order = []
    stack = [root]
    visited = [False] * nb
    visited[root] = True
    while stack:
        i = stack.pop()
        order.append(i)
        for j in tree[i]:
            if not visited[j]:
                visited[j] = True
                parent[j] = i
                stack.append(j)
    top_of: dict[int, int] = {}
    for i in reversed(order):
        bag = td.bags[i]
        kids = [j for j in tree[i] if parent[j] == i]
        if not kids:
            if bag:
                first = min(bag)
                t = nd._add(LEAF, (first,))
                t = _chain(nd, t, bag)
            else:
                t = nd._add(LEAF, ())
        else:
            tops = [_chain(nd, top_of.pop(j), bag) for j in kids]
            t = tops[0]
            for other in tops[1:]:
                t = nd._add(JOIN, bag, None, (t, other))
        top_of[i] = t
    top = top_of[root]
    if empty_root:
        top = _chain(nd, top, frozenset())
    return nd


def check_nice(nd: NiceDecomposition, adj: Sequence[set[int]], empty_root: bool = True) -> list[str]:
    """Return violations of the nice-decomposition rules and the three
    decomposition properties (empty when valid)."""
    problems = []
    nodes = nd.nodes
    if not nodes:
        return ["no nodes"]
    has_parent = [0] * len(nodes)
    for idx, node in enumerate(nodes):
        for c in node.children:
            if c >= idx:
                problems.append(f"node {idx}: child {c} not stored before parent")
            has_parent[c] += 1
        b = set(node.bag)
        if node.kind == LEAF:
            if node.children or (len(b) != 1 and len(nodes) > 1):
                problems.append(f"node {idx}: leaf must have one vertex and no child")
        elif node.kind in (INTRODUCE, FORGET):
            if len(node.children) != 1:
                problems.append(f"node {idx}: {node.kind} needs exactly one child")
                continue
            cb = set(nodes[node.children[0]].bag)
            if node.kind == INTRODUCE and not (cb < b and b - cb == {node.vertex}):
                problems.append(f"node {idx}: bad introduce of {node.vertex}")
            if node.kind == FORGET and not (b < cb and cb - b == {node.vertex}):
                problems.append(f"node {idx}: bad forget of {node.vertex}")
        elif node.kind == JOIN:
            if len(node.children) != 2 or any(set(nodes[c].bag) != b for c in node.children):
                problems.append(f"node {idx}: join children must repeat the bag")
        else:
            problems.append(f"node {idx}: unknown kind {node.kind!r}")
    if any(h > 1 for h in has_parent):
        problems.append("a node has two parents")
    if sum(1 for h in has_parent if h == 0) != 1 or has_parent[-1] != 0:
        problems.append("root must be the only parentless node and stored last")
    if empty_root and nodes[-1].bag:
        problems.append("root bag is not empty")

    td = TreeDecomposition(
        [frozenset(n.bag) for n in nodes],
        [(c, i) for i, n in enumerate(nodes) for c in n.children],
        len(adj))
    from .decomposition import check_tree_decomposition
    problems.extend(check_tree_decomposition(td, adj))
    return problems
