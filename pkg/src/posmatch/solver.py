"""Exact computation of the positive matching decomposition number (pmd).

A pmd of a graph is an ordered partition of the edge set where each part is
a positive matching of the graph with all earlier parts removed; pmd(G) is
the minimum number of parts.  The solver:

* strips pendant vertices first (the value only depends on the pendant-free
  core and the maximum degree, and a decomposition of the core extends back
  mechanically);
* runs iterative deepening on the part count over each core component,
  enumerating candidate first parts (positive matchings covering every
  vertex whose degree exceeds the remaining budget) with memoization on
  residual edge sets;
* certifies every answer with an explicit decomposition that
  `verify_decomposition` re-checks.

`pmd_bruteforce_oracle` is an independent referee for tiny graphs: it
recognises positive matchings purely by exhaustive integer weight search
over a provably sufficient finite family, never by peeling.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import permutations, product
from math import inf

from .core import Edge, Graph, GraphError
from .matchings import (
    AlternatingClosedWalk,
    Matching,
    find_alternating_closed_walk,
    find_peel_order,
)


class SolverError(GraphError):
    """Solver misuse: cap exceeded, bad inputs, invalid seed decomposition."""


class BudgetExhausted(Exception):
    """Search gave up under a node or time budget; result is bounds-only."""


@dataclass(frozen=True)
class SearchLimits:
    """Caps for the exact search; None means unlimited."""

    max_core_vertices: int = 16
    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class Decomposition:
    """Ordered edge-set parts partitioning the host's edges."""

    host: Graph
    parts: tuple[frozenset[Edge], ...]

    def part_count(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    part_index: int | None = None
    reason: str | None = None
    walk: AlternatingClosedWalk | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PendantReduction:
    """Pendant-free core plus the bookkeeping needed to reattach the peels.

    ``peeled_layers[j]`` holds the (edge, pendant vertex) pairs removed in
    the j-th peeling round; replaying the layers in reverse rebuilds the
    input graph as a sequence of pendant attachments over the core.
    """

    core: Graph
    delta_original: int
    peeled_layers: tuple[tuple[tuple[Edge, int], ...], ...]


@dataclass(frozen=True)
class PmdResult:
    value: int | None
    decomposition: Decomposition | None
    lower_bound_used: int
    upper_bound_used: int
    nodes_explored: int
    elapsed: float
    exact: bool


# -- pendant reduction ------------------------------------------------------

def reduce_pendants(g: Graph) -> PendantReduction:
    """Delete degree-1 vertices in rounds until none remain.

    Each round removes the pendant edges present at the round's start; a
    bare-edge component contributes one pendant record (smaller endpoint as
    the pendant) and leaves its other endpoint isolated.
    """
    deg = [g.degree(v) for v in range(g.n)] if g.n else []
    incident: list[set[Edge]] = [set() for _ in range(g.n)]
    for e in g.edges:
        incident[e[0]].add(e)
        incident[e[1]].add(e)
    edges = set(g.edges)
    layers: list[tuple[tuple[Edge, int], ...]] = []
    while True:
        leaves = [v for v in range(g.n) if deg[v] == 1]
        if not leaves:
            break
        layer: list[tuple[Edge, int]] = []
        for v in leaves:
            if deg[v] != 1:
                continue  # the mate of a bare edge was already peeled
            (e,) = incident[v]
            layer.append((e, v))
            edges.discard(e)
            for w in e:
                incident[w].discard(e)
                deg[w] -= 1
        layers.append(tuple(layer))
    core = Graph(g.n, edges)
    delta = g.max_degree() if g.n else 0
    return PendantReduction(core=core, delta_original=delta, peeled_layers=tuple(layers))


# -- bounds -----------------------------------------------------------------

def complete_multipartite_parts(g: Graph) -> list[int] | None:
    """Part sizes (ascending) when g is complete multipartite, else None."""
    if g.n == 0:
        return None
    full = (1 << g.n) - 1
    comp_bits = [full & ~g.neighbor_bits(v) & ~(1 << v) for v in range(g.n)]
    seen = [False] * g.n
    parts: list[int] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            mask = comp_bits[v]
            while mask:
                bit = mask & -mask
                w = bit.bit_length() - 1
                mask ^= bit
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        for u in comp:
            for w in comp:
                if u < w and g.has_edge(u, w):
                    return None  # complement component is not independent in g
        parts.append(len(comp))
    if len(parts) < 2:
        return None
    return sorted(parts)


def pmd_lower_bound(g: Graph) -> int:
    """Max degree, strengthened on complete multipartite graphs.

    For complete multipartite graphs with ascending part sizes n_1..n_m on N
    vertices the bound max(ceil(3N/2) - n_m - 1, N + ceil(m/2) - 2) applies;
    fractional values are ceiled since pmd is an integer.
    """
    if not g.edges:
        raise GraphError("lower bound needs at least one edge")
    lb = g.max_degree()
    parts = complete_multipartite_parts(g)
    if parts is not None:
        total = g.n
        m = len(parts)
        lb = max(
            lb,
            -(-3 * total // 2) - parts[-1] - 1,
            total + -(-m // 2) - 2,
        )
    return lb


def pmd_upper_bound(g: Graph) -> int:
    """Minimum of the applicable closed-form upper bounds."""
    if g.n < 2:
        raise GraphError("upper bound needs at least two vertices")
    m = len(g.edges)
    if m == 0:
        return 0
    n_act = g.n - len(g.isolated_vertices())
    ub = min(2 * n_act - 3, m) if n_act >= 2 else m
    b = g.bipartition()
    if b is not None:
        ub = min(ub, n_act - 1)
        degs = {g.degree(v) for v in range(g.n) if g.degree(v) > 0}
        if len(degs) == 1:
            r = degs.pop()
            ub = min(ub, r * (r - 1) // 2 + 2)
    parts = complete_multipartite_parts(g)
    if parts is not None and len(parts) >= 2:
        ub = min(ub, 2 * g.n - parts[-2] - parts[-1] - 1)
    return ub


# -- decomposition checking ---------------------------------------------------

def verify_decomposition(d: Decomposition) -> VerifyReport:
    """Re-check both pmd invariants, reporting the first failure found."""
    claimed: dict[Edge, int] = {}
    for i, part in enumerate(d.parts):
        for e in part:
            if e in claimed:
                return VerifyReport(False, i, f"edge {e} already used in part {claimed[e]}")
            if e not in d.host.edges:
                return VerifyReport(False, i, f"{e} is not an edge of the host")
            claimed[e] = i
    if len(claimed) != len(d.host.edges):
        missing = sorted(d.host.edges - set(claimed))[:3]
        return VerifyReport(False, None, f"edges not covered, e.g. {missing}")
    residual = d.host
    for i, part in enumerate(d.parts):
        try:
            m = Matching(residual, frozenset(part))
        except GraphError as exc:
            return VerifyReport(False, i, f"part is not a matching: {exc}")
        if find_peel_order(m) is None:
            walk = find_alternating_closed_walk(m)
            return VerifyReport(False, i, "part is not positive in the residual", walk)
        if part:
            residual = residual.remove_edges(part)
    return VerifyReport(True)


def decomposition_certificates(d: Decomposition) -> list[dict[int, int]]:
    """Per-part integer weight certificates against the residual at each stage."""
    from .matchings import build_weight_certificate

    out = []
    residual = d.host
    for part in d.parts:
        m = Matching(residual, frozenset(part))
        order = find_peel_order(m)
        if order is None:
            raise SolverError("cannot certify: part is not positive in its residual")
        out.append(dict(build_weight_certificate(m, order).weights))
        if part:
            residual = residual.remove_edges(part)
    return out


def restrict_decomposition(d: Decomposition, h: Graph) -> Decomposition:
    """Intersect parts with an edge-subgraph's edges, dropping empty parts.

    Positivity survives edge deletion, so the result is again a valid
    decomposition of ``h``.
    """
    if h.n != d.host.n or not h.edges <= d.host.edges:
        raise SolverError("restriction target must be an edge-subgraph on the same vertices")
    parts = tuple(p & h.edges for p in d.parts)
    return Decomposition(h, tuple(p for p in parts if p))


# -- independent brute-force oracle -------------------------------------------

def _oracle_positive(edges: list[Edge], residual_mask: int, sub_mask: int) -> bool:
    """Positivity by raw definition: exhaustive integer weight search.

    No peeling: per connected piece of the induced subgraph the candidate
    weights run over every edge ordering and endpoint orientation of the
    scheme (-2, +3), (-4, +5), ..., a finite family large enough to contain
    a certificate whenever one exists; each candidate is checked against the
    sign conditions directly.
    """
    chosen = [edges[i] for i in range(len(edges)) if (sub_mask >> i) & 1]
    vmask = 0
    for u, v in chosen:
        bit = (1 << u) | (1 << v)
        if vmask & bit:
            return False  # not a matching
        vmask |= bit
    induced: list[Edge] = []
    for i in range(len(edges)):
        if (residual_mask >> i) & 1:
            u, v = edges[i]
            if (vmask >> u) & 1 and (vmask >> v) & 1:
                induced.append(edges[i])
    # split matched edges into connected pieces of the induced subgraph
    adj: dict[int, set[int]] = {}
    for u, v in induced:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    comp_of: dict[int, int] = {}
    for root in sorted(adj):
        if root in comp_of:
            continue
        stack = [root]
        comp_of[root] = root
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp_of:
                    comp_of[y] = root
                    stack.append(y)
    groups: dict[int, list[Edge]] = {}
    for e in chosen:
        groups.setdefault(comp_of.get(e[0], e[0]), []).append(e)
    for root, med in groups.items():
        local = [e for e in induced if comp_of.get(e[0], e[0]) == root]
        if not _oracle_component_positive(med, local):
            return False
    return True


def _oracle_component_positive(matched: list[Edge], induced: list[Edge]) -> bool:
    k = len(matched)
    if k <= 1:
        return True
    matched_set = set(matched)
    for order in permutations(range(k)):
        for flips in product((0, 1), repeat=k):
            w: dict[int, int] = {}
            for level, (idx, flip) in enumerate(zip(order, flips), start=1):
                a, b = matched[idx]
                p, q = (a, b) if not flip else (b, a)
                w[q] = -2 * level
                w[p] = 2 * level + 1
            ok = True
            for u, v in induced:
                s = w[u] + w[v]
                if (u, v) in matched_set:
                    if s <= 0:
                        ok = False
                        break
                elif s >= 0:
                    ok = False
                    break
            if ok:
                return True
    return False


def pmd_bruteforce_oracle(g: Graph) -> int:
    """Minimum part count over all ordered edge partitions, tiny graphs only.

    Part positivity is decided by `_oracle_positive` (weight search on the
    definition), making this a referee independent of the peel-based solver.
    """
    edges = sorted(g.edges)
    m = len(edges)
    if m > 8:
        raise SolverError(f"oracle caps at 8 edges, got {m}")
    memo: dict[int, int] = {0: 0}

    def rec(mask: int) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        best = mask.bit_count()  # singleton parts always work
        sub = mask
        while sub:
            if _oracle_positive(edges, mask, sub):
                cand = 1 + rec(mask & ~sub)
                if cand < best:
                    best = cand
            sub = (sub - 1) & mask
        memo[mask] = best
        return best

    return rec((1 << m) - 1)


# -- exact solver -------------------------------------------------------------

class _Budget:
    __slots__ = ("nodes", "max_nodes", "deadline")

    def __init__(self, limits: SearchLimits):
        self.nodes = 0
        self.max_nodes = limits.max_nodes
        self.deadline = (
            time.monotonic() + limits.max_seconds if limits.max_seconds is not None else None
        )

    def tick(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted
        if self.deadline is not None and (self.nodes & 0xFF) == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExhausted


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _ComponentSolver:
    """Deepening search over one connected pendant-free subgraph.

    Residual graphs are edge-index bitmasks over the component's sorted edge
    list; the memo maps a residual to the largest refuted and smallest
    achieved part counts seen so far.
    """

    def __init__(self, edges: list[Edge], budget: _Budget, seed: int = 0):
        self.edges = edges
        self.k = len(edges)
        self.full = (1 << self.k) - 1
        self.vbit = [(1 << u) | (1 << v) for u, v in edges]
        self.incident: dict[int, int] = {}
        for i, (u, v) in enumerate(edges):
            self.incident[u] = self.incident.get(u, 0) | (1 << i)
            self.incident[v] = self.incident.get(v, 0) | (1 << i)
        # suffix[i] = edges with index >= i, for cover-deadline pruning
        self.suffix = [0] * (self.k + 1)
        for i in range(self.k - 1, -1, -1):
            self.suffix[i] = self.suffix[i + 1] | (1 << i)
        self.budget = budget
        self.seed = seed
        self.memo: dict[int, list] = {}

    # ---- mask helpers

    def _edge_indices(self, mask: int) -> list[int]:
        return list(_iter_bits(mask))

    def _vertex_mask(self, mask: int) -> int:
        out = 0
        for i in _iter_bits(mask):
            out |= self.vbit[i]
        return out

    def _degrees(self, mask: int) -> dict[int, int]:
        deg: dict[int, int] = {}
        for i in _iter_bits(mask):
            u, v = self.edges[i]
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    def _components(self, mask: int) -> list[int]:
        comps = []
        rem = mask
        while rem:
            low = rem & -rem
            cmask = low
            vm = self.vbit[low.bit_length() - 1]
            grew = True
            while grew:
                grew = False
                scan = rem & ~cmask
                for i in _iter_bits(scan):
                    if self.vbit[i] & vm:
                        cmask |= 1 << i
                        vm |= self.vbit[i]
                        grew = True
            comps.append(cmask)
            rem &= ~cmask
        return comps

    def _is_matching(self, mask: int) -> bool:
        vm = 0
        for i in _iter_bits(mask):
            if vm & self.vbit[i]:
                return False
            vm |= self.vbit[i]
        return True

    def _positive(self, sub: int, residual: int) -> bool:
        """Peel check for the matching ``sub`` inside graph ``residual``."""
        self.budget.tick()
        vm = self._vertex_mask(sub)
        nb: dict[int, int] = {}
        for i in _iter_bits(residual):
            u, v = self.edges[i]
            if (vm >> u) & 1 and (vm >> v) & 1:
                nb[u] = nb.get(u, 0) | (1 << v)
                nb[v] = nb.get(v, 0) | (1 << u)
        todo = self._edge_indices(sub)
        while todo:
            pick = -1
            for pos, i in enumerate(todo):
                u, v = self.edges[i]
                if (nb.get(u, 0) & vm).bit_count() == 1 or (nb.get(v, 0) & vm).bit_count() == 1:
                    pick = pos
                    break
            if pick < 0:
                return False
            i = todo.pop(pick)
            vm &= ~self.vbit[i]
        return True

    # ---- quick classifications

    def _paths_split(self, mask: int) -> list[int] | None:
        """Two alternating parts when the residual is a union of paths."""
        deg = self._degrees(mask)
        if any(d > 2 for d in deg.values()):
            return None
        m = mask.bit_count()
        if m != len(deg) - len(self._components(mask)):
            return None  # has a cycle
        part_a = part_b = 0
        incident = self.incident
        seen = 0
        for start_v in sorted(v for v, d in deg.items() if d == 1):
            if (incident[start_v] & mask) & ~seen == 0:
                continue
            v = start_v
            toggle = 0
            prev = -1
            while True:
                avail = incident[v] & mask & ~seen
                if not avail:
                    break
                low = avail & -avail
                i = low.bit_length() - 1
                seen |= low
                if toggle == 0:
                    part_a |= low
                else:
                    part_b |= low
                toggle ^= 1
                u, w = self.edges[i]
                v = w if v == u else u
                prev = i
        if seen != mask:
            return None  # leftover cycles (unreachable given the forest test)
        if not part_b:
            return [part_a]
        return [part_a, part_b]

    # ---- candidate first parts

    def _first_parts(self, mask: int, t: int) -> list[int]:
        """All positive matchings of ``mask`` covering each vertex of degree > t-1.

        The family of positive matchings is closed under subsets, so a
        depth-first scan over increasing edge indices that only extends
        positive states enumerates each exactly once; branches that can no
        longer cover a forced vertex are cut.
        """
        deg = self._degrees(mask)
        forced = sorted(v for v, d in deg.items() if d > t - 1)
        out: list[int] = []
        indices = self._edge_indices(mask)
        incident = self.incident

        def dfs(pos: int, sub: int, vm: int, open_forced: tuple[int, ...]) -> None:
            self.budget.tick()
            still = tuple(v for v in open_forced if not (vm >> v) & 1)
            if still:
                tail = self.suffix[indices[pos]] if pos < len(indices) else 0
                for v in still:
                    if not incident[v] & mask & tail:
                        return
            elif sub:
                out.append(sub)
            for idx in range(pos, len(indices)):
                i = indices[idx]
                if self.vbit[i] & vm:
                    continue
                cand = sub | (1 << i)
                if self._positive(cand, mask):
                    dfs(idx + 1, cand, vm | self.vbit[i], still)

        dfs(0, 0, 0, tuple(forced))
        out.sort(key=lambda s: (-s.bit_count(), s))
        return out

    # ---- greedy witness probe

    def _greedy_parts(self, mask: int, t: int) -> list[int] | None:
        orders = []
        base = self._edge_indices(mask)
        deg = self._degrees(mask)
        orders.append(base)
        orders.append(base[::-1])
        orders.append(
            sorted(base, key=lambda i: -(deg[self.edges[i][0]] + deg[self.edges[i][1]]))
        )
        rng = random.Random(self.seed)
        for _ in range(3):
            shuffled = base[:]
            rng.shuffle(shuffled)
            orders.append(shuffled)
        for order in orders:
            parts: list[int] = []
            cur = mask
            while cur and len(parts) < t:
                if self._is_matching(cur):
                    parts.append(cur)
                    cur = 0
                    break
                split = self._paths_split(cur)
                if split is not None and len(parts) + len(split) <= t:
                    parts.extend(split)
                    cur = 0
                    break
                remaining = t - len(parts)
                degs = self._degrees(cur)
                hot = [v for v, d in degs.items() if d > remaining - 1]
                ordered = [i for i in order if (cur >> i) & 1]
                ordered.sort(key=lambda i: not (
                    self.edges[i][0] in hot or self.edges[i][1] in hot
                ))
                sub = vm = 0
                for i in ordered:
                    if self.vbit[i] & vm:
                        continue
                    cand = sub | (1 << i)
                    if self._positive(cand, cur):
                        sub = cand
                        vm |= self.vbit[i]
                parts.append(sub)
                cur &= ~sub
            if cur == 0 and parts:
                return parts
        return None

    # ---- the decision search

    def can(self, mask: int, t: int) -> list[int] | None:
        """Parts witnessing pmd(mask) <= t, or None; complete for all t."""
        if not mask:
            return []
        self.budget.tick()
        comps = self._components(mask)
        if len(comps) > 1:
            merged: list[int] = []
            for c in comps:
                sub = self.can(c, t)
                if sub is None:
                    return None
                for i, p in enumerate(sub):
                    if i < len(merged):
                        merged[i] |= p
                    else:
                        merged.append(p)
            return merged
        if self._is_matching(mask):
            return [mask] if t >= 1 else None
        if t <= 1:
            return None
        split = self._paths_split(mask)
        if split is not None:
            return split if t >= len(split) else None
        if t <= 2:
            return None
        deg = self._degrees(mask)
        if max(deg.values()) > t:
            return None
        m = mask.bit_count()
        if m <= t:
            return [1 << i for i in _iter_bits(mask)]
        half = max(1, len(deg) // 2)
        if -(-m // half) > t:
            return None
        entry = self.memo.get(mask)
        if entry is None:
            entry = [0, inf, None]
            self.memo[mask] = entry
        if t <= entry[0]:
            return None
        if t >= entry[1]:
            return entry[2]
        probe = self._greedy_parts(mask, t)
        if probe is not None:
            if len(probe) < entry[1]:
                entry[1], entry[2] = len(probe), probe
            return probe
        for part in self._first_parts(mask, t):
            rest = self.can(mask & ~part, t - 1)
            if rest is not None:
                parts = [part] + rest
                if len(parts) < entry[1]:
                    entry[1], entry[2] = len(parts), parts
                return parts
        entry[0] = max(entry[0], t)
        return None

    def solve(self, lb: int, seed_parts: list[int] | None = None) -> list[int]:
        ub_parts = seed_parts if seed_parts is not None else [1 << i for i in range(self.k)]
        for t in range(lb, len(ub_parts)):
            parts = self.can(self.full, t)
            if parts is not None:
                return parts
        return ub_parts


def _component_lower_bound(sub: Graph) -> int:
    """Lower bound for a pendant-free component with at least one cycle.

    ``sub`` must carry only the component's vertices (no strays), so that
    the complete-multipartite detector can fire.
    """
    lb = max(3, pmd_lower_bound(sub))
    m = len(sub.edges)
    act = sub.n - len(sub.isolated_vertices())
    lb = max(lb, -(-m // max(1, act // 2)))
    return lb


def _replay_pendants(
    core_parts: list[set[Edge]], reduction: PendantReduction, host: Graph
) -> list[set[Edge]]:
    """Extend a core decomposition over the peeled pendant layers.

    Replaying layers innermost-first, each base vertex's pendant edges fill
    the earliest part levels where the base is unmatched, growing the level
    count to the running maximum degree; those parts stay positive because a
    pendant vertex never has a second edge anywhere in the host.
    """
    parts = [set(p) for p in core_parts]
    occupied: list[set[int]] = [{v for e in p for v in e} for p in parts]
    deg = [0] * host.n
    for e in reduction.core.edges:
        deg[e[0]] += 1
        deg[e[1]] += 1
    for layer in reversed(reduction.peeled_layers):
        for e, _pend in layer:
            deg[e[0]] += 1
            deg[e[1]] += 1
        target = max(len(parts), max(deg) if host.n else 0)
        while len(parts) < target:
            parts.append(set())
            occupied.append(set())
        by_base: dict[int, list[tuple[Edge, int]]] = {}
        for e, pend in layer:
            base = e[0] if e[1] == pend else e[1]
            by_base.setdefault(base, []).append((e, pend))
        for base in sorted(by_base):
            pend_edges = sorted(by_base[base])
            level = 0
            for e, pend in pend_edges:
                while base in occupied[level]:
                    level += 1
                parts[level].add(e)
                occupied[level].add(base)
                occupied[level].add(pend)
                level += 1
    return [p for p in parts if p]


def pmd_exact(
    g: Graph,
    limits: SearchLimits | None = None,
    upper: Decomposition | None = None,
) -> PmdResult:
    """Exact pmd with a verified witnessing decomposition.

    ``upper`` may seed the search with an externally built decomposition of
    ``g`` (it is re-verified here); the solver then only has to refute
    smaller part counts.  Budget exhaustion yields a flagged, bounds-only
    result instead of a wrong answer.
    """
    limits = limits or SearchLimits()
    start = time.monotonic()
    lb_global = pmd_lower_bound(g) if g.edges else 0
    try:
        ub_global = pmd_upper_bound(g) if g.n >= 2 else len(g.edges)
    except GraphError:
        ub_global = len(g.edges)
    if upper is not None:
        if upper.host != g:
            raise SolverError("seed decomposition host differs from the input graph")
        report = verify_decomposition(upper)
        if not report:
            raise SolverError(f"seed decomposition is invalid: {report.reason}")
        ub_global = min(ub_global, upper.part_count())
    budget = _Budget(limits)

    if not g.edges:
        return PmdResult(0, Decomposition(g, ()), 0, 0, 0, time.monotonic() - start, True)

    reduction = reduce_pendants(g)
    core = reduction.core
    core_parts: list[set[Edge]] = []
    try:
        if core.edges:
            comp_vertices = [c for c in core.connected_components() if len(c) > 1]
            for comp in comp_vertices:
                if len(comp) > limits.max_core_vertices:
                    raise SolverError(
                        f"pendant-free core component has {len(comp)} vertices, "
                        f"cap is {limits.max_core_vertices}"
                    )
            merged: list[set[Edge]] = []
            for comp in comp_vertices:
                comp_set = set(comp)
                comp_edges = sorted(e for e in core.edges if e[0] in comp_set)
                sub, _ = core.induced_subgraph(comp)
                lb = _component_lower_bound(sub)
                seed_masks = None
                if upper is not None:
                    index = {e: i for i, e in enumerate(comp_edges)}
                    seed_masks = []
                    for part in upper.parts:
                        pm = 0
                        for e in part:
                            if e in index:
                                pm |= 1 << index[e]
                        if pm:
                            seed_masks.append(pm)
                solver = _ComponentSolver(comp_edges, budget)
                masks = solver.solve(lb, seed_masks)
                for i, pm in enumerate(masks):
                    part = {comp_edges[j] for j in _iter_bits(pm)}
                    if i < len(merged):
                        merged[i] |= part
                    else:
                        merged.append(part)
            core_parts = merged
    except BudgetExhausted:
        return PmdResult(
            None, None, lb_global, ub_global, budget.nodes, time.monotonic() - start, False
        )

    parts = _replay_pendants(core_parts, reduction, g)
    value = len(parts)
    expected = max(len(core_parts), g.max_degree())
    if value != expected:
        raise SolverError(f"reassembly produced {value} parts, expected {expected}")
    decomposition = Decomposition(g, tuple(frozenset(p) for p in parts))
    report = verify_decomposition(decomposition)
    if not report:
        raise SolverError(f"solver produced an invalid decomposition: {report.reason}")
    return PmdResult(
        value,
        decomposition,
        lb_global,
        ub_global,
        budget.nodes,
        time.monotonic() - start,
        True,
    )
