"""Constructors for the graph families under study, with fixed id conventions.

Ladder-style families use the paper-independent convention: outer vertices
``u_1..u_n`` map to ids ``0..n-1`` and inner vertices ``v_1..v_n`` to ids
``n..2n-1``.  Complete multipartite parts occupy consecutive id blocks in
ascending size order.  Hypercube ids are the integer values of the
coordinate bit vectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .core import Edge, Graph, GraphError, edge


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise GraphError("complete bipartite graph needs m, n >= 1")
    return Graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def multipartite_blocks(sizes: tuple[int, ...]) -> list[range]:
    """Consecutive id ranges for ascending part sizes."""
    out = []
    at = 0
    for s in sizes:
        out.append(range(at, at + s))
        at += s
    return out


def complete_multipartite(*sizes: int) -> Graph:
    """Complete multipartite graph; part sizes are re-sorted ascending."""
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise GraphError("need at least two parts of positive size")
    ordered = tuple(sorted(sizes))
    blocks = multipartite_blocks(ordered)
    es = []
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            es.extend((u, v) for u in blocks[a] for v in blocks[b])
    return Graph(sum(ordered), es)


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1 vertices")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """Star with n leaves (center 0)."""
    if n < 1:
        raise GraphError("star needs at least one leaf")
    return Graph(n + 1, [(0, i) for i in range(1, n + 1)])


def generalized_petersen(n: int, k: int) -> Graph:
    """Outer cycle u_i ~ u_{i+1}, spokes u_i ~ v_i, inner edges v_i ~ v_{i+k}.

    For n = 2k each inner pair arises twice and is kept once, so the graph
    stays simple (inner vertices then have degree 2).
    """
    if n < 3 or not 1 <= k <= n / 2:
        raise GraphError(f"generalized Petersen graph needs n >= 3, 1 <= k <= n/2, got {(n, k)}")
    es: set[Edge] = set()
    for i in range(n):
        es.add(edge(i, (i + 1) % n))
        es.add(edge(i, n + i))
        es.add(edge(n + i, n + (i + k) % n))
    return Graph(2 * n, es)


def circular_ladder(n: int) -> Graph:
    """Prism over an n-cycle: two rails u_i, v_i plus spokes."""
    if n < 3:
        raise GraphError("circular ladder needs n >= 3")
    return generalized_petersen(n, 1)


def mobius_ladder(n: int) -> Graph:
    """Rails u_1..u_n and v_1..v_n, crossed ends u_n ~ v_1, v_n ~ u_1, spokes."""
    if n < 3:
        raise GraphError("Mobius ladder needs n >= 3")
    es = []
    for i in range(n - 1):
        es.append((i, i + 1))
        es.append((n + i, n + i + 1))
    es.append((n - 1, n))          # u_n ~ v_1
    es.append((0, 2 * n - 1))      # v_n ~ u_1
    es.extend((i, n + i) for i in range(n))
    return Graph(2 * n, es)


def hypercube(n: int) -> Graph:
    """n-cube on ids 0..2^n-1; neighbors differ in one coordinate bit."""
    if not 1 <= n <= 5:
        raise GraphError("hypercube supported for 1 <= n <= 5")
    es = []
    for v in range(1 << n):
        for b in range(n):
            w = v ^ (1 << b)
            if v < w:
                es.append((v, w))
    return Graph(1 << n, es)


def corona(g: Graph, pendants) -> Graph:
    """Attach pendant vertices: ``pendants`` maps vertex -> count (>= 0).

    A plain int attaches that many pendants to every vertex.  Original ids
    are preserved; new vertices are appended in base-vertex order.
    """
    if isinstance(pendants, int):
        counts = {v: pendants for v in range(g.n)}
    else:
        counts = dict(pendants)
    for v, c in counts.items():
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
        if c < 0:
            raise GraphError("pendant counts must be >= 0")
    es = list(g.edges)
    nxt = g.n
    for v in sorted(counts):
        for _ in range(counts[v]):
            es.append((v, nxt))
            nxt += 1
    return Graph(nxt, es)


def antler(g: Graph, rooted_trees) -> Graph:
    """Glue the root (vertex 0) of a tree onto each listed vertex of g.

    ``rooted_trees`` maps vertex -> tree Graph; the root is identified with
    the base vertex, the remaining tree vertices are appended.
    """
    es = list(g.edges)
    nxt = g.n
    for v in sorted(dict(rooted_trees)):
        t = rooted_trees[v]
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
        if t.n == 0:
            continue
        if len(t.edges) != t.n - 1 or not t.is_connected():
            raise GraphError("attachments must be trees")
        remap = {0: v}
        for w in range(1, t.n):
            remap[w] = nxt
            nxt += 1
        es.extend((remap[a], remap[b]) for a, b in t.edges)
    return Graph(nxt, es)


def subdivide_by_five(g: Graph) -> tuple[Graph, dict[Edge, tuple[int, ...]]]:
    """Replace each edge u-v by a five-edge path u, a, b, c, d, v.

    Returns the subdivided graph and, per original edge, the six-vertex
    path; its middle edge is (path[2], path[3]) and the stub edges at the
    original endpoints are (path[0], path[1]) and (path[4], path[5]).
    """
    es = []
    prov: dict[Edge, tuple[int, ...]] = {}
    nxt = g.n
    for u, v in sorted(g.edges):
        a, b, c, d = nxt, nxt + 1, nxt + 2, nxt + 3
        nxt += 4
        seq = (u, a, b, c, d, v)
        prov[(u, v)] = seq
        es.extend(zip(seq, seq[1:]))
    return Graph(nxt, es), prov


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform random labeled tree via Prufer sequence decoding."""
    if n < 1:
        raise GraphError("tree needs n >= 1")
    if n == 1:
        return Graph(1)
    if n == 2:
        return Graph(2, [(0, 1)])
    rng = random.Random(seed)
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    es = []
    for v in prufer:
        for leaf in range(n):
            if degree[leaf] == 1:
                es.append((leaf, v))
                degree[leaf] -= 1
                degree[v] -= 1
                break
    tail = [v for v in range(n) if degree[v] == 1]
    es.append((tail[0], tail[1]))
    return Graph(n, es)


def random_cactus(n: int, seed: int = 0) -> Graph:
    """Random cactus grown by hanging pendant edges or cycles on vertices."""
    if n < 1:
        raise GraphError("cactus needs n >= 1")
    rng = random.Random(seed)
    es: list[Edge] = []
    cur = 1
    while cur < n:
        anchor = rng.randrange(cur)
        room = n - cur
        if room >= 2 and rng.random() < 0.5:
            length = rng.randint(3, min(5, room + 1))
            ring = [anchor] + list(range(cur, cur + length - 1))
            cur += length - 1
            es.extend(zip(ring, ring[1:]))
            es.append((ring[-1], ring[0]))
        else:
            es.append((anchor, cur))
            cur += 1
    return Graph(cur, es)


def _blocks(g: Graph) -> list[set[Edge]]:
    """Biconnected components as edge sets (iterative lowpoint algorithm)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    timer = 0
    out: list[set[Edge]] = []
    stack_edges: list[Edge] = []
    for root in range(g.n):
        if root in disc or not g.neighbors(root):
            continue
        work: list[tuple[int, int, iter]] = [(root, -1, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while work:
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue  # simple graph: the tree edge appears once
                if w not in disc:
                    stack_edges.append(edge(v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    work.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    stack_edges.append(edge(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= disc[pv]:
                    block: set[Edge] = set()
                    while stack_edges:
                        e = stack_edges.pop()
                        block.add(e)
                        if e == edge(pv, v):
                            break
                    out.append(block)
    return out


def is_cactus(g: Graph) -> bool:
    """Connected and every block is a single edge or a cycle."""
    if g.n == 0 or not g.is_connected():
        return False
    for block in _blocks(g):
        if len(block) == 1:
            continue
        verts = {v for e in block for v in e}
        if len(block) != len(verts):
            return False
        deg: dict[int, int] = {}
        for u, v in block:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        if any(d != 2 for d in deg.values()):
            return False
    return True


def is_triangle_free(g: Graph) -> bool:
    return all(
        not (g.neighbor_bits(u) & g.neighbor_bits(v))
        for u, v in g.edges
    )


# -- family specs (canonical text form used by the CLI) ----------------------

_FAMILIES = {
    "kn", "kmn", "kpartite", "path", "cycle", "star",
    "cl", "mob", "gp", "q", "tree", "cactus", "sub5",
}


@dataclass(frozen=True)
class FamilySpec:
    """Parsed family descriptor, e.g. gp:7,2 or kpartite:2,2,3 or sub5:kn:4."""

    family: str
    params: tuple[int, ...]
    inner: "FamilySpec | None" = None

    def text(self) -> str:
        if self.inner is not None:
            return f"{self.family}:{self.inner.text()}"
        return f"{self.family}:{','.join(str(p) for p in self.params)}"


def parse_family_spec(text: str) -> FamilySpec:
    name, sep, rest = text.strip().partition(":")
    name = name.lower()
    if name not in _FAMILIES:
        raise GraphError(f"unknown family {name!r}; known: {sorted(_FAMILIES)}")
    if not sep or not rest:
        raise GraphError(f"family spec {text!r} needs parameters")
    if name == "sub5":
        return FamilySpec("sub5", (), parse_family_spec(rest))
    try:
        params = tuple(int(tok) for tok in rest.split(","))
    except ValueError as exc:
        raise GraphError(f"non-integer parameter in family spec {text!r}") from exc
    return FamilySpec(name, params)


def build_family(spec: FamilySpec) -> Graph:
    fam, p = spec.family, spec.params
    if fam == "sub5":
        assert spec.inner is not None
        return subdivide_by_five(build_family(spec.inner))[0]
    arity = {"kn": 1, "kmn": 2, "path": 1, "cycle": 1, "star": 1,
             "cl": 1, "mob": 1, "gp": 2, "q": 1}
    if fam in arity and len(p) != arity[fam]:
        raise GraphError(f"family {fam} takes {arity[fam]} parameter(s), got {len(p)}")
    if fam == "kn":
        return complete(p[0])
    if fam == "kmn":
        return complete_bipartite(p[0], p[1])
    if fam == "kpartite":
        return complete_multipartite(*p)
    if fam == "path":
        return path(p[0])
    if fam == "cycle":
        return cycle(p[0])
    if fam == "star":
        return star(p[0])
    if fam == "cl":
        return circular_ladder(p[0])
    if fam == "mob":
        return mobius_ladder(p[0])
    if fam == "gp":
        return generalized_petersen(p[0], p[1])
    if fam == "q":
        return hypercube(p[0])
    if fam == "tree":
        if len(p) not in (1, 2):
            raise GraphError("tree takes n[,seed]")
        return random_tree(p[0], p[1] if len(p) == 2 else 0)
    if fam == "cactus":
        if len(p) not in (1, 2):
            raise GraphError("cactus takes n[,seed]")
        return random_cactus(p[0], p[1] if len(p) == 2 else 0)
    raise GraphError(f"unhandled family {fam}")  # pragma: no cover
