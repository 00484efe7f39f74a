"""Maximum-weight matching in general graphs and maximum-weight f-factors.

The matching code is the O(n^3) primal-dual blossom method of Edmonds with
Galil's bookkeeping for least-slack edges.  Dual variables are kept doubled so
that integer weights give integer arithmetic throughout, which also makes the
complementary-slackness certificate exact.

f-factors are reduced to perfect matchings by expanding each vertex ``v`` into
``deg(v)`` external copies (one per incident edge) plus ``deg(v) - f(v)``
internal vertices that are joined to every external copy by weight-0 edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .core import Infeasible


@dataclass(frozen=True)
class GeneralGraph:
    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]  # (u, v, weight), 0-based vertices

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        seen = set()
        for u, v, _ in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)

    def degrees(self) -> list[int]:
        deg = [0] * self.num_vertices
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class FFactorInstance:
    graph: GeneralGraph
    f: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if len(self.f) != self.graph.num_vertices:
            raise ValueError("f must give one target per vertex")
        for v, (fv, dv) in enumerate(zip(self.f, self.graph.degrees())):
            if fv < 0:
                raise ValueError(f"negative target f({v}) = {fv}")
            if fv > dv:
                raise ValueError(f"f({v}) = {fv} exceeds deg({v}) = {dv}")

    @property
    def phi(self) -> int:
        return sum(self.f)


def _blossom(nvertex: int, edges: Sequence[tuple[int, int, int]],
             maxcardinality: bool, verify: bool) -> list[int]:
    """Return ``mate`` (vertex -> partner or -1)."""
    nedge = len(edges)
    if nedge == 0:
        return [-1] * nvertex
    maxweight = max(0, max(w for _, _, w in edges))

    # endpoint[p] is the vertex at endpoint p; edge k has endpoints 2k and 2k+1
    endpoint = [edges[p // 2][p % 2] for p in range(2 * nedge)]
    neighbend: list[list[int]] = [[] for _ in range(nvertex)]
    for k, (i, j, _) in enumerate(edges):
        neighbend[i].append(2 * k + 1)
        neighbend[j].append(2 * k)

    mate = [-1] * nvertex  # remote endpoint of the matched edge
    # labels of top-level blossoms: 0 free, 1 S (outer), 2 T (inner); 5 is a
    # transient mark used while tracing for a common ancestor
    label = [0] * (2 * nvertex)
    labelend = [-1] * (2 * nvertex)
    inblossom = list(range(nvertex))
    blossomparent = [-1] * (2 * nvertex)
    blossomchilds: list = [None] * (2 * nvertex)
    blossombase = list(range(nvertex)) + [-1] * nvertex
    blossomendps: list = [None] * (2 * nvertex)
    bestedge = [-1] * (2 * nvertex)
    blossombestedges: list = [None] * (2 * nvertex)
    unusedblossoms = list(range(nvertex, 2 * nvertex))
    dualvar = [maxweight] * nvertex + [0] * nvertex
    allowedge = [False] * nedge
    queue: list[int] = []

    def slack(k):
        i, j, wt = edges[k]
        return dualvar[i] + dualvar[j] - 2 * wt

    def leaves(b):
        if b < nvertex:
            yield b
        else:
            for t in blossomchilds[b]:
                if t < nvertex:
                    yield t
                else:
                    yield from leaves(t)

    def assign_label(w, t, p):
        b = inblossom[w]
        label[w] = label[b] = t
        labelend[w] = labelend[b] = p
        bestedge[w] = bestedge[b] = -1
        if t == 1:
            queue.extend(leaves(b))
        else:
            base = blossombase[b]
            assign_label(endpoint[mate[base]], 1, mate[base] ^ 1)

    def scan_blossom(v, w):
        # trace back from v and w alternately; the first blossom reached twice
        # is the base of a new blossom, reaching two roots means augmentation
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(base, k):
        v, w, _ = edges[k]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unusedblossoms.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        blossomchilds[b] = path = []
        blossomendps[b] = endps = []
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        label[b] = 1
        labelend[b] = labelend[bb]
        dualvar[b] = 0
        for x in leaves(b):
            if label[inblossom[x]] == 2:
                queue.append(x)
            inblossom[x] = b
        bestedgeto = [-1] * (2 * nvertex)
        for sub in path:
            if blossombestedges[sub] is None:
                nblists = [[p // 2 for p in neighbend[x]] for x in leaves(sub)]
            else:
                nblists = [blossombestedges[sub]]
            for nblist in nblists:
                for kk in nblist:
                    i, j, _ = edges[kk]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if (bj != b and label[bj] == 1 and
                            (bestedgeto[bj] == -1 or slack(kk) < slack(bestedgeto[bj]))):
                        bestedgeto[bj] = kk
            blossombestedges[sub] = None
            bestedge[sub] = -1
        blossombestedges[b] = [kk for kk in bestedgeto if kk != -1]
        bestedge[b] = -1
        for kk in blossombestedges[b]:
            if bestedge[b] == -1 or slack(kk) < slack(bestedge[b]):
                bestedge[b] = kk

    def expand_blossom(b, endstage):
        for s in blossomchilds[b]:
            blossomparent[s] = -1
            if s < nvertex:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                expand_blossom(s, endstage)
            else:
                for x in leaves(s):
                    inblossom[x] = s
        if not endstage and label[b] == 2:
            # relabel the sub-blossoms on the even-length path from the entry
            # child to the base so the alternating tree stays consistent
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            j = blossomchilds[b].index(entrychild)
            if j & 1:
                j -= len(blossomchilds[b])
                jstep, endptrick = 1, 0
            else:
                jstep, endptrick = -1, 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[blossomendps[b][j - endptrick] ^ endptrick ^ 1]] = 0
                assign_label(endpoint[p ^ 1], 2, p)
                allowedge[blossomendps[b][j - endptrick] // 2] = True
                j += jstep
                p = blossomendps[b][j - endptrick] ^ endptrick
                allowedge[p // 2] = True
                j += jstep
            bv = blossomchilds[b][j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while blossomchilds[b][j] != entrychild:
                bv = blossomchilds[b][j]
                if label[bv] == 1:
                    j += jstep
                    continue
                reached = -1
                for x in leaves(bv):
                    if label[x] != 0:
                        reached = x
                        break
                if reached != -1:
                    label[reached] = 0
                    label[endpoint[mate[blossombase[bv]]]] = 0
                    assign_label(reached, 2, labelend[reached])
                j += jstep
        label[b] = labelend[b] = -1
        blossomchilds[b] = blossomendps[b] = None
        blossombase[b] = -1
        blossombestedges[b] = None
        bestedge[b] = -1
        unusedblossoms.append(b)

    def augment_blossom(b, v):
        # rotate blossom b so that v becomes its base, flipping matched edges
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= nvertex:
            augment_blossom(t, v)
        i = j = blossomchilds[b].index(t)
        if i & 1:
            j -= len(blossomchilds[b])
            jstep, endptrick = 1, 0
        else:
            jstep, endptrick = -1, 1
        while j != 0:
            j += jstep
            t = blossomchilds[b][j]
            p = blossomendps[b][j - endptrick] ^ endptrick
            if t >= nvertex:
                augment_blossom(t, endpoint[p])
            j += jstep
            t = blossomchilds[b][j]
            if t >= nvertex:
                augment_blossom(t, endpoint[p ^ 1])
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        blossomchilds[b] = blossomchilds[b][i:] + blossomchilds[b][:i]
        blossomendps[b] = blossomendps[b][i:] + blossomendps[b][:i]
        blossombase[b] = blossombase[blossomchilds[b][0]]

    def augment_matching(k):
        v, w, _ = edges[k]
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= nvertex:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= nvertex:
                    augment_blossom(bt, j)
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    for _stage in range(nvertex):
        label[:] = [0] * (2 * nvertex)
        bestedge[:] = [-1] * (2 * nvertex)
        blossombestedges[nvertex:] = [None] * nvertex
        allowedge[:] = [False] * nedge
        queue[:] = []
        for v in range(nvertex):
            if mate[v] == -1 and label[inblossom[v]] == 0:
                assign_label(v, 1, -1)

        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                for p in neighbend[v]:
                    k = p // 2
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == 0:
                            assign_label(w, 2, p ^ 1)
                        elif label[inblossom[w]] == 1:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break

            # no augmenting path with tight edges: pick the dual step
            deltatype = -1
            delta = deltaedge = deltablossom = None
            if not maxcardinality:
                deltatype = 1
                delta = min(dualvar[:nvertex])
            for v in range(nvertex):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = slack(bestedge[v])
                    if deltatype == -1 or d < delta:
                        delta, deltatype, deltaedge = d, 2, bestedge[v]
            for b in range(2 * nvertex):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    d = slack(bestedge[b]) // 2  # S-S slack is even
                    if deltatype == -1 or d < delta:
                        delta, deltatype, deltaedge = d, 3, bestedge[b]
            for b in range(nvertex, 2 * nvertex):
                if (blossombase[b] >= 0 and blossomparent[b] == -1 and label[b] == 2
                        and (deltatype == -1 or dualvar[b] < delta)):
                    delta, deltatype, deltablossom = dualvar[b], 4, b
            if deltatype == -1:
                # maximum cardinality reached; finish with a final dual step
                deltatype = 1
                delta = max(0, min(dualvar[:nvertex]))

            for v in range(nvertex):
                lab = label[inblossom[v]]
                if lab == 1:
                    dualvar[v] -= delta
                elif lab == 2:
                    dualvar[v] += delta
            for b in range(nvertex, 2 * nvertex):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            if deltatype == 2:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                if label[inblossom[i]] == 0:
                    i, j = j, i
                queue.append(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                queue.append(i)
            else:
                expand_blossom(deltablossom, False)

        if not augmented:
            break
        for b in range(nvertex, 2 * nvertex):
            if (blossomparent[b] == -1 and blossombase[b] >= 0 and label[b] == 1
                    and dualvar[b] == 0):
                expand_blossom(b, True)

    if verify:
        _verify_duals(nvertex, edges, endpoint, mate, dualvar, blossomparent,
                      blossombase, blossomendps, maxcardinality)

    return [endpoint[m] if m >= 0 else -1 for m in mate]


def _verify_duals(nvertex, edges, endpoint, mate, dualvar, blossomparent,
                  blossombase, blossomendps, maxcardinality):
    """Check complementary slackness; raises AssertionError on failure."""
    offset = max(0, -min(dualvar[:nvertex])) if maxcardinality else 0
    assert min(dualvar[:nvertex]) + offset >= 0
    assert min(dualvar[nvertex:]) >= 0
    for k, (i, j, wt) in enumerate(edges):
        s = dualvar[i] + dualvar[j] - 2 * wt
        ib, jb = [i], [j]
        while blossomparent[ib[-1]] != -1:
            ib.append(blossomparent[ib[-1]])
        while blossomparent[jb[-1]] != -1:
            jb.append(blossomparent[jb[-1]])
        for bi, bj in zip(reversed(ib), reversed(jb)):
            if bi != bj:
                break
            s += 2 * dualvar[bi]
        assert s >= 0, f"negative reduced cost on edge {k}"
        if mate[i] // 2 == k or mate[j] // 2 == k:
            assert mate[i] // 2 == k and mate[j] // 2 == k
            assert s == 0, f"matched edge {k} is not tight"
    for v in range(nvertex):
        assert mate[v] >= 0 or dualvar[v] + offset == 0, f"exposed vertex {v} has positive dual"
    for b in range(nvertex, 2 * nvertex):
        if blossombase[b] >= 0 and dualvar[b] > 0:
            assert len(blossomendps[b]) % 2 == 1
            for p in blossomendps[b][1::2]:
                assert mate[endpoint[p]] == p ^ 1
                assert mate[endpoint[p ^ 1]] == p


def _mate_to_edges(g: GeneralGraph, mate: list[int]) -> frozenset:
    return frozenset(k for k, (u, v, _) in enumerate(g.edges) if mate[u] == v)


def matching_weight(g: GeneralGraph, edge_ids: Iterable[int]) -> int:
    return sum(g.edges[k][2] for k in edge_ids)


def max_weight_matching(g: GeneralGraph, verify: bool = False) -> frozenset:
    """Maximum-weight matching as a set of edge indices into ``g.edges``."""
    # negative edges never help an unconstrained matching
    keep = [k for k, e in enumerate(g.edges) if e[2] >= 0]
    sub = [g.edges[k] for k in keep]
    mate = _blossom(g.num_vertices, sub, maxcardinality=False, verify=verify)
    return frozenset(keep[i] for i, (u, v, _) in enumerate(sub) if mate[u] == v)


def max_weight_perfect_matching(g: GeneralGraph, verify: bool = False) -> frozenset:
    """Maximum-weight perfect matching; raises :class:`Infeasible` if none exists."""
    if g.num_vertices % 2:
        raise Infeasible("odd number of vertices")
    mate = _blossom(g.num_vertices, g.edges, maxcardinality=True, verify=verify)
    if any(m == -1 for m in mate):
        raise Infeasible("graph has no perfect matching")
    return _mate_to_edges(g, mate)


@dataclass
class Gadget:
    """Vertex-expansion gadget of an f-factor instance."""

    graph: GeneralGraph
    edge_of: dict[int, int] = field(default_factory=dict)  # gadget edge -> original edge
    num_external: int = 0
    num_internal: int = 0


def build_gadget(ff: FFactorInstance) -> Gadget:
    g = ff.graph
    n = g.num_vertices
    incident: list[list[int]] = [[] for _ in range(n)]
    for k, (u, v, _) in enumerate(g.edges):
        incident[u].append(k)
        incident[v].append(k)

    ext: dict[tuple[int, int], int] = {}
    nxt = 0
    for v in range(n):
        for k in incident[v]:
            ext[(v, k)] = nxt
            nxt += 1
    num_external = nxt

    edges: list[tuple[int, int, int]] = []
    edge_of: dict[int, int] = {}
    for k, (u, v, w) in enumerate(g.edges):
        edge_of[len(edges)] = k
        edges.append((ext[(u, k)], ext[(v, k)], w))
    for v in range(n):
        for _ in range(len(incident[v]) - ff.f[v]):
            internal = nxt
            nxt += 1
            for k in incident[v]:
                edges.append((internal, ext[(v, k)], 0))
    return Gadget(GeneralGraph(nxt, tuple(edges)), edge_of,
                  num_external, nxt - num_external)


def max_weight_f_factor(ff: FFactorInstance, verify: bool = False) -> frozenset:
    """Maximum-weight f-factor as a set of edge indices into ``ff.graph.edges``.

    Raises :class:`Infeasible` when no f-factor exists.
    """
    if ff.phi % 2:
        raise Infeasible("sum of degree targets is odd")
    gadget = build_gadget(ff)
    try:
        pm = max_weight_perfect_matching(gadget.graph, verify=verify)
    except Infeasible:
        raise Infeasible("graph has no f-factor") from None
    chosen = frozenset(gadget.edge_of[k] for k in pm if k in gadget.edge_of)
    deg = [0] * ff.graph.num_vertices
    for k in chosen:
        u, v, _ = ff.graph.edges[k]
        deg[u] += 1
        deg[v] += 1
    assert deg == list(ff.f), "gadget projection broke degree targets"
    return chosen


def ffactor_from_mapping(num_vertices: int, edges: Iterable[tuple[int, int, int]],
                         f: Mapping[int, int] | Sequence[int]) -> FFactorInstance:
    g = GeneralGraph(num_vertices, tuple(edges))
    if isinstance(f, Mapping):
        f = [f.get(v, 0) for v in range(num_vertices)]
    return FFactorInstance(g, tuple(f))
