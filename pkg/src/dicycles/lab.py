"""Checks of the G <-> L(G) correspondence on concrete digraphs.

* :func:`verify_lemma_roundtrip` pushes every cycle of G into L(G) and
  pulls every cycle of L(G) back into G.
* :func:`verify_duality` compares the four optima nu/tau of G (arc mode)
  and of L(G) (vertex mode).
* :func:`audit_lu_claim` tests, vertex by vertex, whether the part of L(G)
  spanned by the arcs at a vertex is acyclic. It is not when the vertex
  sits on a digon.
* :func:`gap_survey` tabulates nu_arc and tau_arc over generated families.
"""
from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass, field
from typing import Iterable

from dicycles.digraph import (
    Cycle,
    CycleCapExceeded,
    Digraph,
    DigraphError,
    enumerate_simple_cycles,
    shortest_cycle,
    validate_cycle,
)
from dicycles.generators import GenSpec
from dicycles.linegraph import (
    ExtractionError,
    build_line_digraph,
    extract_cycle_from_line_cycle,
    image_cycle,
    line_neighborhood,
    preimage_trail,
)
from dicycles.solvers import (
    SolveBudget,
    max_disjoint_cycle_packing,
    min_feedback_arc_set,
    min_feedback_vertex_set,
)


@dataclass(frozen=True)
class RoundtripReport:
    passed: bool
    partial: bool
    base_cycles: int
    line_cycles: int
    counterexamples: tuple[str, ...] = ()


def _cycles_upto(G: Digraph, cap: int | None) -> tuple[list[Cycle], bool]:
    try:
        return enumerate_simple_cycles(G, cap), False
    except CycleCapExceeded as exc:
        return exc.partial, True


def verify_lemma_roundtrip(G: Digraph, cap: int | None = None) -> RoundtripReport:
    LG = build_line_digraph(G)
    problems: list[str] = []
    base, base_partial = _cycles_upto(G, cap)
    for C in base:
        try:
            image = image_cycle(LG, C)
            validate_cycle(LG.graph, image)
        except DigraphError as exc:
            problems.append(f"image of {C}: {exc}")
            continue
        if len(image) != len(C):
            problems.append(f"image of {C} has length {len(image)}")
        back = extract_cycle_from_line_cycle(LG, image)
        if back != C.canonical():
            problems.append(f"round trip of {C} gave {back}")
    line, line_partial = _cycles_upto(LG.graph, cap)
    for Cp in line:
        try:
            C = extract_cycle_from_line_cycle(LG, Cp)
        except (ExtractionError, DigraphError) as exc:
            problems.append(f"extraction from line cycle {Cp}: {exc}")
            continue
        if not set(C.arcs) <= set(preimage_trail(LG, Cp).arcs):
            problems.append(f"extraction from {Cp} left its arc set")
    return RoundtripReport(
        not problems, base_partial or line_partial, len(base), len(line), tuple(problems)
    )


@dataclass(frozen=True)
class DualityReport:
    """nu/tau of G (arc mode) next to nu/tau of L(G) (vertex mode).

    ``equalities_hold`` is ``None`` unless all four solves were optimal.
    """

    instance_id: str
    nu_arc: int
    tau_arc: int
    nu_vertex_line: int
    tau_vertex_line: int
    all_optimal: bool
    equalities_hold: bool | None

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.nu_arc, self.tau_arc, self.nu_vertex_line, self.tau_vertex_line)


def verify_duality(
    G: Digraph, budget: SolveBudget | None = None, instance_id: str = ""
) -> DualityReport:
    budget = budget or SolveBudget()
    LG = build_line_digraph(G)
    nu_arc = max_disjoint_cycle_packing(G, "arc", budget)
    tau_arc = min_feedback_arc_set(G, budget)
    nu_line = max_disjoint_cycle_packing(LG.graph, "vertex", budget)
    tau_line = min_feedback_vertex_set(LG.graph, budget)
    all_optimal = all(r.optimal for r in (nu_arc, tau_arc, nu_line, tau_line))
    holds = None
    if all_optimal:
        holds = len(nu_arc) == len(nu_line) and len(tau_arc) == len(tau_line)
    return DualityReport(
        instance_id, len(nu_arc), len(tau_arc), len(nu_line), len(tau_line), all_optimal, holds
    )


@dataclass(frozen=True)
class LuEntry:
    vertex: int
    acyclic: bool
    witness: Cycle | None = None  # on line-vertex ids of L(G)


@dataclass(frozen=True)
class LuAuditReport:
    entries: tuple[LuEntry, ...]

    @property
    def failing(self) -> list[int]:
        return [e.vertex for e in self.entries if not e.acyclic]

    @property
    def all_acyclic(self) -> bool:
        return not self.failing


def digon_vertices(G: Digraph) -> set[int]:
    return {a.tail for a in G.arcs if G.has_arc((a.head, a.tail))}


def audit_lu_claim(G: Digraph) -> LuAuditReport:
    LG = build_line_digraph(G)
    entries = []
    for u in range(G.n):
        Lu, local = line_neighborhood(LG, u)
        cyc = shortest_cycle(Lu)
        if cyc is None:
            entries.append(LuEntry(u, True))
            continue
        to_line = {i: x for x, i in local.items()}
        witness = Cycle.from_vertices([to_line[v] for v in cyc.vertices])
        validate_cycle(LG.graph, witness)
        assert set(witness.vertices) <= set(local), "witness escaped L_u"
        entries.append(LuEntry(u, False, witness))
    return LuAuditReport(tuple(entries))


SURVEY_COLUMNS = ("family", "seed", "n", "m", "nu_arc", "tau_arc", "nu_optimal", "tau_optimal")


@dataclass(frozen=True)
class SurveyRow:
    family: str
    seed: int
    n: int
    m: int
    nu_arc: int
    tau_arc: int
    nu_optimal: bool
    tau_optimal: bool


@dataclass
class SurveyReport:
    rows: list[SurveyRow]
    summary: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SURVEY_COLUMNS)
        for row in self.rows:
            d = asdict(row)
            writer.writerow(
                [str(d[c]).lower() if isinstance(d[c], bool) else d[c] for c in SURVEY_COLUMNS]
            )
        return buf.getvalue()


def _summarize(rows: list[SurveyRow]) -> dict:
    ratios = [
        r.tau_arc / r.nu_arc
        for r in rows
        if r.nu_arc >= 1 and r.nu_optimal and r.tau_optimal
    ]
    return {
        "rows": len(rows),
        "non_optimal_rows": sum(not (r.nu_optimal and r.tau_optimal) for r in rows),
        "ratio_rows": len(ratios),
        "max_tau_over_nu": max(ratios) if ratios else None,
    }


def gap_survey(
    specs: Iterable[GenSpec], trials: int, budget: SolveBudget | None = None
) -> SurveyReport:
    """One row per (spec, trial); trial ``t`` uses seed ``spec.seed + t``."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    budget = budget or SolveBudget()
    rows = []
    for spec in specs:
        for t in range(trials):
            seed = spec.seed + t
            G = spec.build(seed)
            nu = max_disjoint_cycle_packing(G, "arc", budget)
            tau = min_feedback_arc_set(G, budget)
            rows.append(
                SurveyRow(spec.label(), seed, G.n, G.m, len(nu), len(tau), nu.optimal, tau.optimal)
            )
    return SurveyReport(rows, _summarize(rows))
