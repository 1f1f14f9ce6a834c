"""Immutable simple graphs, subgraph operations, and graph6 / edge-list I/O.

Vertices are dense 0-based integers ``0..n-1``; isolated vertices are
allowed.  Edges are canonical pairs ``(u, v)`` with ``u < v``.  Graphs are
values: every "remove" or "induce" operation returns a new graph, so solver
code can hold many residual graphs without aliasing worries.  Adjacency is
kept both as sorted neighbor tuples and as per-vertex bitmasks (arbitrary
width Python ints), the latter feeding the search kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph construction or misuse of a graph operation."""


class FormatError(GraphError):
    """Malformed graph6 or edge-list input."""


def edge(u: int, v: int) -> Edge:
    """Canonical edge (min, max); loops are rejected."""
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "_adj", "_bits")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        canon: set[Edge] = set()
        for u, v in edges:
            e = edge(u, v)
            if not (0 <= e[0] and e[1] < n):
                raise GraphError(f"edge {e} out of range for n={n}")
            canon.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(canon))
        adj: list[list[int]] = [[] for _ in range(n)]
        bits = [0] * n
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "_bits", tuple(bits))

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("Graph is immutable")

    # -- basic accessors -------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    @property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def neighbor_bits(self, v: int) -> int:
        """Neighbors of ``v`` as a bitmask."""
        self._check_vertex(v)
        return self._bits[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def max_degree(self) -> int:
        if self.n == 0:
            raise GraphError("max_degree of the empty graph is undefined")
        return max(len(a) for a in self._adj)

    def vertices(self) -> range:
        return range(self.n)

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self._adj[v])

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    # -- derived graphs --------------------------------------------------

    def induced_subgraph(self, vs: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Subgraph induced by ``vs`` plus the old->new id map."""
        keep = sorted(set(vs))
        for v in keep:
            self._check_vertex(v)
        remap = {old: new for new, old in enumerate(keep)}
        kept = {v: True for v in keep}
        es = [
            (remap[u], remap[v])
            for u, v in self.edges
            if u in kept and v in kept
        ]
        return Graph(len(keep), es), remap

    def remove_edges(self, es: Iterable[tuple[int, int]]) -> "Graph":
        """Same vertices, edges minus ``es``; removing a non-edge is an error."""
        drop = set()
        for u, v in es:
            e = edge(u, v)
            if e not in self.edges:
                raise GraphError(f"cannot remove non-edge {e}")
            drop.add(e)
        return Graph(self.n, self.edges - drop)

    # -- structure -------------------------------------------------------

    def connected_components(self) -> list[tuple[int, ...]]:
        """Vertex sets of components, ordered by smallest member."""
        seen = [False] * self.n
        comps: list[tuple[int, ...]] = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def bipartition(self) -> "Bipartition | None":
        """2-coloring as a Bipartition, or None when an odd cycle exists.

        Per component the side containing the smallest vertex goes to
        ``x_side``; within each side vertices are listed in increasing order
        (the default labeling used by the slope algorithm).
        """
        color: dict[int, int] = {}
        for comp in self.connected_components():
            root = comp[0]
            color[root] = 0
            queue = [root]
            while queue:
                v = queue.pop()
                for w in self._adj[v]:
                    if w not in color:
                        color[w] = 1 - color[v]
                        queue.append(w)
                    elif color[w] == color[v]:
                        return None
        xs = tuple(v for v in range(self.n) if color.get(v) == 0)
        ys = tuple(v for v in range(self.n) if color.get(v) == 1)
        return Bipartition(xs, ys)


@dataclass(frozen=True)
class Bipartition:
    """Two ordered vertex sides; the order defines a labeling."""

    x_side: tuple[int, ...]
    y_side: tuple[int, ...]

    def __post_init__(self):
        if set(self.x_side) & set(self.y_side):
            raise GraphError("bipartition sides overlap")

    def side_of(self, v: int) -> int:
        """0 for x-side, 1 for y-side."""
        if v in self.x_side:
            return 0
        if v in self.y_side:
            return 1
        raise GraphError(f"vertex {v} is on neither side")

    def validate_for(self, g: Graph) -> None:
        """Check no edge of ``g`` joins two vertices of the same side."""
        xs, ys = set(self.x_side), set(self.y_side)
        for u, v in g.edges:
            if (u in xs and v in xs) or (u in ys and v in ys):
                raise GraphError(f"edge {(u, v)} lies within one side")


@dataclass(frozen=True)
class Digraph:
    """Internal digraph: node count plus a set of arcs (no self-loops)."""

    n: int
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        for i, j in self.arcs:
            if i == j:
                raise GraphError(f"self-loop at node {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"arc {(i, j)} out of range")

    def successors(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(j for (a, j) in self.arcs if a == i))

    def find_cycle(self) -> list[int] | None:
        """Some directed cycle as a node list, or None; deterministic DFS."""
        succ: dict[int, list[int]] = {i: [] for i in range(self.n)}
        for i, j in sorted(self.arcs):
            succ[i].append(j)
        state = [0] * self.n  # 0 new, 1 on stack, 2 done
        parent: dict[int, int] = {}
        for root in range(self.n):
            if state[root]:
                continue
            stack: list[tuple[int, int]] = [(root, 0)]
            state[root] = 1
            while stack:
                v, it = stack[-1]
                if it < len(succ[v]):
                    stack[-1] = (v, it + 1)
                    w = succ[v][it]
                    if state[w] == 0:
                        state[w] = 1
                        parent[w] = v
                        stack.append((w, 0))
                    elif state[w] == 1:
                        cycle = [v]
                        while cycle[-1] != w:
                            cycle.append(parent[cycle[-1]])
                        cycle.reverse()
                        return cycle
                else:
                    state[v] = 2
                    stack.pop()
        return None

    def is_acyclic(self) -> bool:
        return self.find_cycle() is None


# -- graph6 ---------------------------------------------------------------

_G6_MAX_N = 62  # single-byte size header only


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (n <= 62, bit-exact column-major upper triangle)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("malformed header: empty graph6 string")
    data = [ord(c) - 63 for c in s]
    for c, d in zip(s, data):
        if not 0 <= d <= 63:
            raise FormatError(f"character {c!r} out of graph6 range 63..126")
    n = data[0]
    if n == 63:
        raise FormatError("multi-byte graph6 size headers (n > 62) are unsupported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[1:]
    if len(body) < need:
        raise FormatError(f"truncated bit vector: need {need} data bytes, got {len(body)}")
    if len(body) > need:
        raise FormatError(f"overlong bit vector: need {need} data bytes, got {len(body)}")
    bits = []
    for d in body:
        for k in range(5, -1, -1):
            bits.append((d >> k) & 1)
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits")
    es = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                es.append((i, j))
            idx += 1
    return Graph(n, es)


def emit_graph6(g: Graph) -> str:
    """Encode a graph (n <= 62) as a graph6 string."""
    if g.n > _G6_MAX_N:
        raise FormatError(f"graph6 single-byte encoding caps at n=62, got n={g.n}")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in g.edges else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def iter_graph6_lines(text: str):
    """Yield (line_number, Graph) for each nonempty line; raises FormatError with context."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            yield lineno, parse_graph6(line)
        except FormatError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc


# -- edge-list text -------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines; optional first line "n <count>"; '#' comments.

    Duplicate edges and loops are rejected rather than silently dropped.
    """
    declared_n: int | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    first_data_line = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if first_data_line and tokens[0] == "n":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise FormatError(f"line {lineno}: bad vertex-count line {raw!r}")
            declared_n = int(tokens[1])
            first_data_line = False
            continue
        first_data_line = False
        if len(tokens) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: non-integer token in {raw!r}") from exc
        if u < 0 or v < 0:
            raise FormatError(f"line {lineno}: negative vertex id")
        if u == v:
            raise FormatError(f"line {lineno}: loop at vertex {u}")
        e = edge(u, v)
        if e in seen:
            raise FormatError(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    n = declared_n if declared_n is not None else (1 + max((max(e) for e in edges), default=-1))
    try:
        return Graph(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def emit_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_list)
    return "\n".join(lines) + "\n"
