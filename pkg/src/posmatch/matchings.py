"""Positive matchings: recognition, certificates, alternating walks, splitting.

A matching M is *positive* in its host when some integer vertex weighting
makes every matched edge's endpoint sum positive and every other edge inside
the subgraph induced by V(M) sum negative.  Equivalent views implemented
here, cross-checked by the test suite:

* peel: M empties by repeatedly removing an edge that is pendant in the
  subgraph induced by the remaining matched vertices;
* walk: the induced subgraph carries no closed walk alternating between
  matched and unmatched edges;
* weights: an explicit certificate exists (built constructively from a peel
  order, checked by `verify_certificate`).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Bipartition, Digraph, Edge, Graph, GraphError, edge

PeelOrder = tuple[Edge, ...]


class MatchingError(GraphError):
    """Invalid matching or misuse of a matching operation."""


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges inside a host graph."""

    host: Graph
    edges: frozenset[Edge]

    def __post_init__(self):
        used = 0
        for u, v in self.edges:
            if (u, v) not in self.host.edges:
                raise MatchingError(f"{(u, v)} is not an edge of the host")
            bit = (1 << u) | (1 << v)
            if used & bit:
                raise MatchingError(f"edges share a vertex at {(u, v)}")
            used |= bit

    @property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def __len__(self) -> int:
        return len(self.edges)


def matching(host: Graph, edges) -> Matching:
    return Matching(host, frozenset(edge(u, v) for u, v in edges))


# -- peel recognition ------------------------------------------------------

def find_peel_order(m: Matching) -> PeelOrder | None:
    """Peel order witnessing positivity, or None when M is not positive.

    Repeatedly removes the lexicographically least matched edge having an
    endpoint of degree 1 in the subgraph induced by the currently remaining
    matched vertices; the reversed removal order is returned, so each edge is
    pendant within the subgraph induced by its prefix.
    """
    g = m.host
    remaining = sorted(m.edges)
    vmask = 0
    for u, v in remaining:
        vmask |= (1 << u) | (1 << v)
    removed: list[Edge] = []
    while remaining:
        pick = None
        for e in remaining:
            u, v = e
            du = (g.neighbor_bits(u) & vmask).bit_count()
            dv = (g.neighbor_bits(v) & vmask).bit_count()
            if du == 1 or dv == 1:
                pick = e
                break
        if pick is None:
            return None
        remaining.remove(pick)
        vmask &= ~((1 << pick[0]) | (1 << pick[1]))
        removed.append(pick)
    removed.reverse()
    return tuple(removed)


def is_positive(m: Matching) -> bool:
    """True iff M is a positive matching of its host."""
    return find_peel_order(m) is not None


def is_valid_peel_order(m: Matching, order: PeelOrder) -> bool:
    """Check that ``order`` is a permutation of M where each edge is pendant
    in the host subgraph induced by the vertices of its prefix."""
    if set(order) != set(m.edges) or len(order) != len(m.edges):
        return False
    g = m.host
    vmask = 0
    for e in order:
        u, v = e
        vmask |= (1 << u) | (1 << v)
        du = (g.neighbor_bits(u) & vmask).bit_count()
        dv = (g.neighbor_bits(v) & vmask).bit_count()
        if du != 1 and dv != 1:
            return False
    return True


# -- alternating closed walks ---------------------------------------------

@dataclass(frozen=True)
class AlternatingClosedWalk:
    """Closed walk u1,v1,u2,v2,...,ur,vr,u1 with ui-vi matched, vi-u(i+1) not."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 5 or len(self.vertices) % 2 == 0:
            raise MatchingError("walk must close and have even length >= 4")
        if self.vertices[0] != self.vertices[-1]:
            raise MatchingError("walk does not close")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def matched_edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(edge(vs[i], vs[i + 1]) for i in range(0, len(vs) - 1, 2))

    def unmatched_edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(edge(vs[i], vs[i + 1]) for i in range(1, len(vs) - 1, 2))

    def validate(self, m: Matching) -> None:
        for e in self.matched_edges():
            if e not in m.edges:
                raise MatchingError(f"walk edge {e} is not matched")
        for e in self.unmatched_edges():
            if e not in m.host.edges or e in m.edges:
                raise MatchingError(f"walk edge {e} must be a non-matching host edge")


def find_alternating_closed_walk(m: Matching) -> AlternatingClosedWalk | None:
    """A concrete alternating closed walk in the induced subgraph, or None.

    Works on the digraph whose nodes are (matched edge, exit endpoint) pairs;
    an arc leaves (e, x) along a non-matching edge {x, z} into the matched
    edge at z, exiting at its other endpoint.  Directed cycles of this
    digraph unroll exactly to alternating closed walks.
    """
    mate: dict[int, Edge] = {}
    for e in m.edges:
        mate[e[0]] = e
        mate[e[1]] = e
    vmask = 0
    for v in mate:
        vmask |= 1 << v
    nodes: list[tuple[Edge, int]] = []
    for e in sorted(m.edges):
        nodes.append((e, e[0]))
        nodes.append((e, e[1]))
    index = {node: i for i, node in enumerate(nodes)}
    g = m.host
    succ: list[list[int]] = []
    for e, x in nodes:
        outs = []
        for z in g.neighbors(x):
            if not (vmask >> z) & 1:
                continue
            if edge(x, z) in m.edges:
                continue
            f = mate[z]
            y = f[0] if f[1] == z else f[1]
            outs.append(index[(f, y)])
        succ.append(sorted(outs))
    d = Digraph(len(nodes), frozenset((i, j) for i in range(len(nodes)) for j in succ[i]))
    cycle = d.find_cycle()
    if cycle is None:
        return None
    verts: list[int] = []
    for i in cycle:
        e, x = nodes[i]
        verts.append(e[0] if e[1] == x else e[1])
        verts.append(x)
    verts.append(verts[0])
    walk = AlternatingClosedWalk(tuple(verts))
    walk.validate(m)
    return walk


# -- weight certificates ---------------------------------------------------

@dataclass(frozen=True)
class WeightCertificate:
    """Integer vertex weights witnessing positivity on V(M)."""

    weights: dict[int, int]

    def __getitem__(self, v: int) -> int:
        return self.weights[v]


def build_weight_certificate(m: Matching, order: PeelOrder) -> WeightCertificate:
    """Constructive certificate from a peel order.

    Processing edges in peel order, the isolated-so-far endpoint p of each
    edge {p, q} gets a fresh positive weight and q a fresh negative weight of
    larger magnitude than everything assigned before, which keeps all
    non-matching sums negative.  Magnitudes stay below 2^(k+2) for k edges
    (they grow linearly); Python ints make overflow a non-issue.
    """
    if not is_valid_peel_order(m, order):
        raise MatchingError("not a valid peel order for this matching")
    g = m.host
    w: dict[int, int] = {}
    bound = 1  # 1 + max |assigned weight|
    prefix_mask = 0
    for u, v in order:
        umask = (1 << u) | (1 << v)
        prefix_mask |= umask
        du = (g.neighbor_bits(u) & prefix_mask).bit_count()
        p, q = (u, v) if du == 1 else (v, u)
        need = bound
        for z in g.neighbors(q):
            if z in w:
                need = max(need, abs(w[z]) + 1)
        mag = 1 + need
        w[q] = -mag
        w[p] = mag + 1
        bound = 1 + max(abs(w[q]), abs(w[p]))
    return WeightCertificate(w)


def verify_certificate(m: Matching, cert: WeightCertificate) -> bool:
    """True iff matched sums are positive and all other induced sums negative."""
    vs = m.vertices()
    for v in vs:
        if v not in cert.weights:
            raise MatchingError(f"certificate misses vertex {v}")
    for u, v in m.host.edges:
        if u in vs and v in vs:
            s = cert.weights[u] + cert.weights[v]
            if edge(u, v) in m.edges:
                if s <= 0:
                    return False
            elif s >= 0:
                return False
    return True


# -- extremal positive matchings -------------------------------------------

def max_positive_matching(g: Graph, cap: int = 14) -> Matching:
    """A maximum-cardinality positive matching, by branch and bound.

    Positive matchings are closed under taking subsets, so depth-first
    growth over lexicographically increasing edges visits each exactly once;
    branches that cannot beat the incumbent by the free-vertex bound are cut.
    The underlying decision problem is NP-complete, hence the vertex cap.
    """
    if g.n > cap:
        raise MatchingError(f"graph has {g.n} > {cap} vertices (exact search cap)")
    edges = sorted(g.edges)
    best: list[Edge] = []
    free_total = g.n - len(g.isolated_vertices())

    def grow(start: int, chosen: list[Edge], vmask: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        covered = vmask.bit_count()
        if len(chosen) + (free_total - covered) // 2 <= len(best):
            return
        for i in range(start, len(edges)):
            u, v = edges[i]
            bit = (1 << u) | (1 << v)
            if vmask & bit:
                continue
            chosen.append(edges[i])
            if find_peel_order(Matching(g, frozenset(chosen))) is not None:
                grow(i + 1, chosen, vmask | bit)
            chosen.pop()

    grow(0, [], 0)
    return Matching(g, frozenset(best))


# -- matching digraph and minimum splitting ---------------------------------

def align_bipartition(b: Bipartition, m: Matching) -> Bipartition:
    """Reorder the y-side so position i holds the mate of x_i."""
    mate: dict[int, int] = {}
    for u, v in m.edges:
        mate[u] = v
        mate[v] = u
    if set(b.x_side) | set(b.y_side) != m.vertices() or len(b.x_side) != len(b.y_side):
        raise MatchingError("matching is not perfect on the bipartition")
    ys = []
    for x in b.x_side:
        if x not in mate or mate[x] not in set(b.y_side):
            raise MatchingError(f"vertex {x} has no mate on the y side")
        ys.append(mate[x])
    return Bipartition(b.x_side, tuple(ys))


def matching_digraph(g: Graph, b: Bipartition, m: Matching) -> Digraph:
    """Digraph on matched pairs: arc (i, j) iff x_i is adjacent to y_j.

    Requires an aligned perfect matching (x_i matched to y_i); use
    `align_bipartition` first.  Directed closed walks of the result
    correspond one-to-one to alternating closed walks with respect to M.
    """
    b.validate_for(g)
    k = len(b.x_side)
    if len(b.y_side) != k:
        raise MatchingError("sides must have equal size for a perfect matching")
    for i in range(k):
        if edge(b.x_side[i], b.y_side[i]) not in m.edges:
            raise MatchingError(f"matching not aligned at position {i}")
    if len(m.edges) != k:
        raise MatchingError("matching is not perfect on the bipartition")
    arcs = set()
    for i in range(k):
        for j in range(k):
            if i != j and edge(b.x_side[i], b.y_side[j]) in g.edges:
                arcs.add((i, j))
    return Digraph(k, frozenset(arcs))


def split_matching_min_positive(g: Graph, m: Matching, exact_cap: int = 14) -> list[Matching]:
    """Partition M into positive matchings, minimising the count.

    Exact below ``exact_cap`` matched edges via subset dynamic programming
    over the family of positive sub-matchings (which is downward closed);
    greedy maximal stripping above the cap.  Every part is positive in the
    full host, hence in any residual when parts are removed sequentially.
    """
    edges = sorted(m.edges)
    k = len(edges)
    if k == 0:
        return []

    pos_memo: dict[int, bool] = {0: True}

    def positive_mask(mask: int) -> bool:
        got = pos_memo.get(mask)
        if got is None:
            sub = Matching(g, frozenset(edges[i] for i in range(k) if (mask >> i) & 1))
            got = find_peel_order(sub) is not None
            pos_memo[mask] = got
        return got

    if k <= exact_cap:
        best: dict[int, list[int]] = {0: []}

        def solve(mask: int) -> list[int] | None:
            if mask in best:
                return best[mask]
            low = mask & -mask
            result: list[int] | None = None
            sub = mask
            while sub:
                if sub & low and positive_mask(sub):
                    rest = solve(mask & ~sub)
                    if rest is not None and (result is None or len(rest) + 1 < len(result)):
                        result = [sub] + rest
                sub = (sub - 1) & mask
            best[mask] = result
            return result

        parts_masks = solve((1 << k) - 1)
        assert parts_masks is not None  # singletons always work
    else:
        parts_masks = []
        left = (1 << k) - 1
        while left:
            cur = 0
            for i in range(k):
                bit = 1 << i
                if left & bit and positive_mask(cur | bit):
                    cur |= bit
            parts_masks.append(cur)
            left &= ~cur
    out = []
    for mask in parts_masks:
        out.append(Matching(g, frozenset(edges[i] for i in range(k) if (mask >> i) & 1)))
    return out
