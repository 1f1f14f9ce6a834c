"""Batch solving, conjecture scans, and the append-only results store.

Records are newline-delimited JSON behind a schema-version header line.
Appends are idempotent on the (graph6, command, options) key so corpus runs
can be resumed; a version mismatch refuses the file rather than guessing.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .core import Graph, emit_graph6, parse_graph6
from .generators import build_family, parse_family_spec
from .solver import (
    Decomposition,
    SearchLimits,
    SolverError,
    decomposition_certificates,
    pmd_exact,
    pmd_lower_bound,
    pmd_upper_bound,
)

SCHEMA_VERSION = 1


@dataclass
class ResultRecord:
    graph6: str
    n: int
    edge_count: int
    max_degree: int
    lo: int
    hi: int
    flags: str  # "exact" | "bounds" | "budget-exhausted"
    provenance: str
    command: str
    options_key: str = ""
    kappa: int | None = None
    elapsed: float = 0.0

    @property
    def exact(self) -> bool:
        return self.lo == self.hi and self.flags == "exact"

    def key(self) -> tuple[str, str, str]:
        return (self.graph6, self.command, self.options_key)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def solve_record(
    g: Graph,
    limits: SearchLimits | None = None,
    command: str = "exact",
    options_key: str = "",
) -> tuple[ResultRecord, Decomposition | None]:
    """One exact solve wrapped into a record; budget failures become bounds."""
    g6 = emit_graph6(g) if g.n <= 62 else f"<n={g.n}>"
    delta = g.max_degree() if g.n else 0
    start = time.monotonic()
    try:
        result = pmd_exact(g, limits)
    except SolverError:
        lo = pmd_lower_bound(g) if g.edges else 0
        hi = pmd_upper_bound(g) if g.n >= 2 else 0
        rec = ResultRecord(g6, g.n, len(g.edges), delta, lo, hi, "bounds",
                           "bound", command, options_key,
                           elapsed=time.monotonic() - start)
        return rec, None
    if not result.exact:
        rec = ResultRecord(g6, g.n, len(g.edges), delta,
                           result.lower_bound_used, result.upper_bound_used,
                           "budget-exhausted", "bound", command, options_key,
                           elapsed=result.elapsed)
        return rec, None
    rec = ResultRecord(g6, g.n, len(g.edges), delta, result.value, result.value,
                       "exact", "solver", command, options_key, elapsed=result.elapsed)
    return rec, result.decomposition


def bounds_record(g: Graph, command: str = "bounds", options_key: str = "") -> ResultRecord:
    g6 = emit_graph6(g) if g.n <= 62 else f"<n={g.n}>"
    lo = pmd_lower_bound(g) if g.edges else 0
    hi = pmd_upper_bound(g) if g.n >= 2 else len(g.edges)
    return ResultRecord(g6, g.n, len(g.edges), g.max_degree() if g.n else 0,
                        lo, hi, "bounds", "bound", command, options_key)


# -- results store -------------------------------------------------------------

class StoreError(RuntimeError):
    pass


def _read_store(path: str) -> list[dict]:
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return []
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line for line in fh.read().splitlines() if line.strip()]
    header = json.loads(lines[0])
    if header.get("schema") != SCHEMA_VERSION:
        raise StoreError(
            f"results store schema {header.get('schema')} != {SCHEMA_VERSION}; "
            "migrate or move the file"
        )
    return [json.loads(line) for line in lines[1:]]


def results_store(path: str, records) -> int:
    """Append records, skipping keys already present; returns appended count."""
    existing = _read_store(path)
    seen = {(r["graph6"], r["command"], r.get("options_key", "")) for r in existing}
    fresh = []
    for rec in records:
        if rec.key() not in seen:
            seen.add(rec.key())
            fresh.append(rec)
    is_new = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", encoding="utf-8") as fh:
        if is_new:
            fh.write(json.dumps({"schema": SCHEMA_VERSION, "kind": "pmd-results"}) + "\n")
        for rec in fresh:
            fh.write(rec.to_json() + "\n")
    return len(fresh)


def results_query(path: str, **filters) -> list[dict]:
    """Filter records by equality (n, flags, graph6, ...) or lo/hi ranges."""
    rows = _read_store(path)
    out = []
    for row in rows:
        ok = True
        for key, want in filters.items():
            if key.endswith("_min"):
                ok = ok and row.get(key[:-4], 0) >= want
            elif key.endswith("_max"):
                ok = ok and row.get(key[:-4], 0) <= want
            else:
                ok = ok and row.get(key) == want
        if ok:
            out.append(row)
    return out


# -- witness files ---------------------------------------------------------------

def witness_payload(g: Graph, d: Decomposition) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "graph6": emit_graph6(g),
        "parts": [sorted([list(e) for e in part]) for part in d.parts],
        "certificates": [
            {str(v): w for v, w in cert.items()}
            for cert in decomposition_certificates(d)
        ],
    }


def load_witness(payload: dict) -> tuple[Graph, Decomposition, list[dict[int, int]]]:
    if payload.get("schema") != SCHEMA_VERSION:
        raise StoreError(f"witness schema {payload.get('schema')} != {SCHEMA_VERSION}")
    g = parse_graph6(payload["graph6"])
    parts = tuple(
        frozenset((int(u), int(v)) for u, v in part) for part in payload["parts"]
    )
    certs = [
        {int(v): int(w) for v, w in cert.items()}
        for cert in payload.get("certificates", [])
    ]
    return g, Decomposition(g, parts), certs


def decomposition_dot(g: Graph, d: Decomposition, name: str = "pmd") -> str:
    """Graphviz rendering with one color per part."""
    palette = [
        "red", "blue", "forestgreen", "orange", "purple", "brown", "magenta",
        "cyan4", "gold3", "gray40", "deeppink3", "navy", "olivedrab", "tomato3",
    ]
    part_of = {}
    for i, part in enumerate(d.parts):
        for e in part:
            part_of[e] = i
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for e in g.edge_list:
        i = part_of[e]
        color = palette[i % len(palette)]
        lines.append(f'  {e[0]} -- {e[1]} [color="{color}", label="{i + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- corpus scans ------------------------------------------------------------------

def _solve_one(args) -> dict:
    g6, limits_tuple, command = args
    limits = SearchLimits(*limits_tuple)
    g = parse_graph6(g6)
    rec, _ = solve_record(g, limits, command=command)
    return asdict(rec)


def solve_many(
    graphs6: list[str],
    limits: SearchLimits | None = None,
    jobs: int = 1,
    command: str = "exact",
) -> list[ResultRecord]:
    """Solve a corpus, preserving input order regardless of worker scheduling."""
    limits = limits or SearchLimits()
    ltuple = (limits.max_core_vertices, limits.max_nodes, limits.max_seconds)
    tasks = [(g6, ltuple, command) for g6 in graphs6]
    if jobs <= 1 or len(tasks) < 2:
        rows = [_solve_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_solve_one, tasks, chunksize=8))
    return [ResultRecord(**row) for row in rows]


@dataclass
class ScanReport:
    conjecture: str
    records: list[ResultRecord]
    counterexamples: list[str]
    skipped: list[str]
    notes: list[str] = field(default_factory=list)

    def summary(self) -> str:
        lines = [f"scan: {self.conjecture}",
                 f"graphs: {len(self.records)}, skipped: {len(self.skipped)}"]
        if self.counterexamples:
            lines.append(f"COUNTEREXAMPLES FOUND ({len(self.counterexamples)}): "
                         + ", ".join(self.counterexamples))
        else:
            lines.append("counterexamples: none found in corpus")
        lines.extend(self.notes)
        return "\n".join(lines)


def scan_max_degree_conjecture(
    graphs6: list[str], limits: SearchLimits | None = None, jobs: int = 1
) -> ScanReport:
    """Check pmd <= 2*max_degree - 1 over a corpus; hits are surfaced loudly."""
    records = solve_many(graphs6, limits, jobs, command="scan")
    hits, skipped = [], []
    for rec in records:
        if not rec.exact:
            skipped.append(rec.graph6)
        elif rec.max_degree and rec.lo > 2 * rec.max_degree - 1:
            hits.append(rec.graph6)
    return ScanReport("pmd <= 2*max_degree - 1", records, hits, skipped)


def scan_family_grid(spec: str, limits: SearchLimits | None = None) -> ScanReport:
    """Family sweeps: 'k2mn:M,N' tables K_{2,m,n}; 'qn:N' runs hypercubes."""
    from .families import hypercube_decomposition
    from .generators import complete_multipartite, hypercube

    records: list[ResultRecord] = []
    notes: list[str] = []
    skipped: list[str] = []
    kind, _, arg = spec.partition(":")
    if kind == "k2mn":
        mmax, nmax = (int(t) for t in arg.split(","))
        hits = []
        for m in range(2, mmax + 1):
            for n in range(m, nmax + 1):
                g = complete_multipartite(2, m, n)
                rec, _ = solve_record(g, limits, command=f"scan:k2mn")
                rec.options_key = f"m={m},n={n}"
                records.append(rec)
                if rec.exact:
                    expected = m + n + 2
                    note = f"K_2,{m},{n}: pmd={rec.lo}, conjectured {expected}"
                    if rec.lo != expected:
                        hits.append(rec.graph6)
                        note += "  <-- differs"
                    notes.append(note)
                else:
                    skipped.append(rec.graph6)
        return ScanReport("pmd(K_2,m,n) = m+n+2", records, hits, skipped, notes)
    if kind == "qn":
        nmax = int(arg)
        hits = []
        for n in range(1, nmax + 1):
            g = hypercube(n)
            constructed = hypercube_decomposition(n).hi
            rec, _ = solve_record(g, limits, command="scan:qn")
            rec.options_key = f"n={n}"
            records.append(rec)
            if rec.exact:
                note = f"Q_{n}: pmd={rec.lo}, construction gives {constructed}, conjectured {2 * n - 1}"
                if rec.lo != 2 * n - 1:
                    hits.append(rec.graph6)
                    note += "  <-- differs"
                notes.append(note)
            else:
                skipped.append(rec.graph6)
                notes.append(f"Q_{n}: over solver cap; construction gives {constructed}")
        return ScanReport("pmd(Q_n) = 2n-1", records, hits, skipped, notes)
    raise StoreError(f"unknown family grid {spec!r} (use k2mn:M,N or qn:N)")


def records_csv(records: list[ResultRecord]) -> str:
    cols = ["graph6", "n", "edge_count", "max_degree", "lo", "hi", "flags",
            "provenance", "command", "options_key", "kappa", "elapsed"]
    lines = [",".join(cols)]
    for rec in records:
        row = asdict(rec)
        lines.append(",".join("" if row[c] is None else str(row[c]) for c in cols))
    return "\n".join(lines) + "\n"
