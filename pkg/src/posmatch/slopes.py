"""Slope-driven decomposition of labeled bipartite graphs.

For ordered sides x_1..x_m / y_1..y_n the slope of an edge x_i y_j is j - i.
The sweep algorithm repeatedly peels one part: scanning ascending slopes
over the shrinking active x-set, it admits each minimum-slope edge whose y
endpoint is still unclaimed in the current part, and retires every x it
touched either way (faithful to the published pseudocode, where rejected
edges still knock their x out of the sweep but stay for a later part).
Every emitted part is re-checked to be a positive matching of its residual.

``kappa`` of a labeling is the number of parts the sweep outputs; its
minimum over labelings upper-bounds the decomposition number of the graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product

from .core import Bipartition, Edge, Graph, GraphError
from .matchings import Matching, find_peel_order
from .solver import Decomposition, verify_decomposition

SlopeLabeling = Bipartition  # ordered sides ARE the labeling


class SlopeError(GraphError):
    """Bad labeling or an internal positivity violation."""


@dataclass(frozen=True)
class KappaReport:
    labeling: SlopeLabeling
    parts: Decomposition
    kappa: int
    slope_count: int


@dataclass(frozen=True)
class KappaSearchResult:
    best: KappaReport
    certified: bool
    evaluated: int


def slope(labeling: SlopeLabeling, e: tuple[int, int]) -> int:
    """j - i for the edge x_i y_j (1-based positions)."""
    u, v = e
    pos_x = {x: i + 1 for i, x in enumerate(labeling.x_side)}
    pos_y = {y: j + 1 for j, y in enumerate(labeling.y_side)}
    if u in pos_x and v in pos_y:
        return pos_y[v] - pos_x[u]
    if v in pos_x and u in pos_y:
        return pos_y[u] - pos_x[v]
    raise SlopeError(f"edge {e} does not cross the labeling's sides")


def default_labeling(g: Graph) -> SlopeLabeling:
    """Vertex-id order on the canonical 2-coloring; errors if not bipartite."""
    b = g.bipartition()
    if b is None:
        raise SlopeError("graph is not bipartite")
    return b


def run_slope_algorithm(g: Graph, labeling: SlopeLabeling | None = None) -> KappaReport:
    """Sweep the labeled graph into positive matchings, one per outer round."""
    if labeling is None:
        labeling = default_labeling(g)
    labeling.validate_for(g)
    covered = set(labeling.x_side) | set(labeling.y_side)
    for u, v in g.edges:
        if u not in covered or v not in covered:
            raise SlopeError(f"labeling misses endpoint of {(u, v)}")
    pos_x = {x: i + 1 for i, x in enumerate(labeling.x_side)}
    pos_y = {y: j + 1 for j, y in enumerate(labeling.y_side)}

    def side_x(e: Edge) -> int:
        return e[0] if e[0] in pos_x else e[1]

    def side_y(e: Edge) -> int:
        return e[1] if e[0] in pos_x else e[0]

    def slope_of(e: Edge) -> int:
        return pos_y[side_y(e)] - pos_x[side_x(e)]

    remaining = set(g.edges)
    parts: list[set[Edge]] = []
    while remaining:
        active = {side_x(e) for e in remaining}
        claimed_y: set[int] = set()
        part: set[Edge] = set()
        while active:
            live = [e for e in remaining if side_x(e) in active]
            s = min(slope_of(e) for e in live)
            sweep = [e for e in live if slope_of(e) == s]
            for e in sweep:
                if side_y(e) not in claimed_y:
                    part.add(e)
            active -= {side_x(e) for e in sweep}
            claimed_y |= {side_y(e) for e in sweep}
        parts.append(part)
        remaining -= part
    deco = Decomposition(g, tuple(frozenset(p) for p in parts))
    report = verify_decomposition(deco)
    if not report:
        raise SlopeError(f"sweep produced a non-positive part: {report.reason}")
    slopes = {slope_of(e) for e in g.edges}
    return KappaReport(labeling, deco, len(parts), len(slopes))


# -- searching over labelings -------------------------------------------------

def _component_sides(g: Graph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Per-component 2-coloring (components with edges only)."""
    b = g.bipartition()
    if b is None:
        raise SlopeError("graph is not bipartite")
    xs, ys = set(b.x_side), set(b.y_side)
    out = []
    for comp in g.connected_components():
        if len(comp) < 2:
            continue
        out.append((
            tuple(v for v in comp if v in xs),
            tuple(v for v in comp if v in ys),
        ))
    return out


def _labelings(g: Graph):
    """Every labeling: per-component side swaps times side orderings."""
    comps = _component_sides(g)
    for flips in product((0, 1), repeat=len(comps)):
        xs: list[int] = []
        ys: list[int] = []
        for flip, (cx, cy) in zip(flips, comps):
            xs.extend(cy if flip else cx)
            ys.extend(cx if flip else cy)
        for px in permutations(sorted(xs)):
            for py in permutations(sorted(ys)):
                yield Bipartition(px, py)


def count_labelings(g: Graph) -> int:
    from math import factorial

    comps = _component_sides(g)
    m = sum(len(cx) for cx, _ in comps)
    n = sum(len(cy) for _, cy in comps)
    return (2 ** len(comps)) * factorial(m) * factorial(n)


def kappa_search(
    g: Graph,
    mode: str = "exhaustive",
    budget: int = 500_000,
    seed: int = 0,
    restarts: int = 64,
) -> KappaSearchResult:
    """Minimum part count over labelings.

    Exhaustive mode enumerates side swaps and orderings (certified when it
    finishes within ``budget`` evaluations, best-so-far flagged otherwise);
    heuristic mode runs seeded restarts of first-improvement descent over
    adjacent transpositions on either side.
    """
    if not g.edges:
        raise SlopeError("kappa needs at least one edge")
    if mode == "exhaustive":
        best: KappaReport | None = None
        evaluated = 0
        certified = True
        for labeling in _labelings(g):
            if evaluated >= budget:
                certified = False
                break
            report = run_slope_algorithm(g, labeling)
            evaluated += 1
            if best is None or report.kappa < best.kappa:
                best = report
        assert best is not None
        return KappaSearchResult(best, certified, evaluated)
    if mode != "heuristic":
        raise SlopeError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    comps = _component_sides(g)
    best = None
    evaluated = 0
    for _ in range(restarts):
        xs: list[int] = []
        ys: list[int] = []
        for cx, cy in comps:
            if rng.random() < 0.5:
                cx, cy = cy, cx
            xs.extend(cx)
            ys.extend(cy)
        rng.shuffle(xs)
        rng.shuffle(ys)
        current = run_slope_algorithm(g, Bipartition(tuple(xs), tuple(ys)))
        evaluated += 1
        improved = True
        while improved and evaluated < budget:
            improved = False
            for side in (xs, ys):
                for i in range(len(side) - 1):
                    side[i], side[i + 1] = side[i + 1], side[i]
                    cand = run_slope_algorithm(g, Bipartition(tuple(xs), tuple(ys)))
                    evaluated += 1
                    if cand.kappa < current.kappa:
                        current = cand
                        improved = True
                    else:
                        side[i], side[i + 1] = side[i + 1], side[i]
                    if evaluated >= budget:
                        break
                if evaluated >= budget:
                    break
        if best is None or current.kappa < best.kappa:
            best = current
    assert best is not None
    return KappaSearchResult(best, False, evaluated)


# -- scanning the open questions ----------------------------------------------

@dataclass(frozen=True)
class QuestionScanRow:
    graph6: str
    n: int
    edge_count: int
    pmd: int | None
    kappa: int | None
    kappa_certified: bool
    min_slopes: int | None
    strict_gap: bool | None          # pmd < kappa over all labelings?
    sweep_beats_min_slopes: bool | None  # some min-slope labeling with kappa < slopes?
    skipped: str | None = None


@dataclass(frozen=True)
class QuestionScanReport:
    rows: tuple[QuestionScanRow, ...]

    def findings(self) -> dict[str, list[str]]:
        gap = [r.graph6 for r in self.rows if r.strict_gap]
        beat = [r.graph6 for r in self.rows if r.sweep_beats_min_slopes]
        return {"pmd_lt_kappa": gap, "kappa_lt_min_slopes": beat}

    def summary(self) -> str:
        f = self.findings()
        lines = []
        for key, hits in f.items():
            if hits:
                lines.append(f"{key}: {len(hits)} instance(s) found: {', '.join(hits)}")
            else:
                lines.append(f"{key}: none found in corpus")
        skipped = [r.graph6 for r in self.rows if r.skipped]
        if skipped:
            lines.append(f"skipped (over caps): {len(skipped)}")
        return "\n".join(lines)


def question_scan(graphs, budget: int = 500_000, solver_limits=None) -> QuestionScanReport:
    """Per bipartite graph: exact pmd, certified kappa, minimum slope count.

    Flags instances where pmd is strictly below kappa, and labelings
    attaining the minimum slope count whose sweep still uses fewer parts.
    Absence of hits is reported as such, never as a proof.
    """
    from .core import emit_graph6
    from .solver import SolverError, pmd_exact

    rows: list[QuestionScanRow] = []
    for g in graphs:
        g6 = emit_graph6(g)
        if g.bipartition() is None or not g.edges:
            rows.append(QuestionScanRow(g6, g.n, len(g.edges), None, None, False,
                                        None, None, None, "not bipartite or edgeless"))
            continue
        if count_labelings(g) > budget:
            rows.append(QuestionScanRow(g6, g.n, len(g.edges), None, None, False,
                                        None, None, None, "labeling count over budget"))
            continue
        try:
            pmd = pmd_exact(g, solver_limits).value
        except SolverError:
            rows.append(QuestionScanRow(g6, g.n, len(g.edges), None, None, False,
                                        None, None, None, "solver cap"))
            continue
        best_kappa = None
        min_slopes = None
        beats = False
        for labeling in _labelings(g):
            report = run_slope_algorithm(g, labeling)
            if best_kappa is None or report.kappa < best_kappa:
                best_kappa = report.kappa
            if min_slopes is None or report.slope_count < min_slopes:
                min_slopes = report.slope_count
                beats = report.kappa < report.slope_count
            elif report.slope_count == min_slopes and report.kappa < report.slope_count:
                beats = True
        rows.append(QuestionScanRow(
            g6, g.n, len(g.edges), pmd, best_kappa, True, min_slopes,
            pmd is not None and best_kappa is not None and pmd < best_kappa,
            beats,
        ))
    return QuestionScanReport(tuple(rows))
