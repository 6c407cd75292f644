"""Exact cycle packing and covering by branch-and-bound.

Four optima are computed here, in either *arc* or *vertex* mode:

* minimum feedback arc/vertex set (a hitting set for all directed cycles),
* maximum arc-/vertex-disjoint cycle packing,

and :func:`erdos_posa_gate` combines them through the line digraph to
return either ``k`` arc-disjoint cycles or a minimum feedback arc set.

Search effort is bounded by :class:`SolveBudget`. Running out of budget
is not an error: the best certificate found so far is returned with
``optimal=False``. Certificates are always sound.
"""
from __future__ import annotations

import logging
import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Literal

from dicycles.digraph import (
    Arc,
    CycleCapExceeded,
    Cycle,
    Digraph,
    enumerate_chordless_cycles,
    enumerate_simple_cycles,
    is_acyclic,
    remove_arcs,
    remove_vertices,
    validate_cycle,
)
from dicycles.linegraph import build_line_digraph, extract_cycle_from_line_cycle

log = logging.getLogger(__name__)

Mode = Literal["arc", "vertex"]
MODES = ("arc", "vertex")

TIME_LIMIT_ENV = "DICYCLES_TIME_LIMIT_MS"
DEFAULT_NODE_LIMIT = 1_000_000
DEFAULT_TIME_LIMIT_MS = 60_000


def default_time_limit_ms() -> int:
    value = os.environ.get(TIME_LIMIT_ENV)
    return int(value) if value else DEFAULT_TIME_LIMIT_MS


@dataclass(frozen=True)
class SolveBudget:
    """Search limits. ``node_limit`` also caps cycle enumeration in packing."""

    node_limit: int = DEFAULT_NODE_LIMIT
    time_limit_ms: int = field(default_factory=default_time_limit_ms)

    def __post_init__(self) -> None:
        if self.node_limit < 1 or self.time_limit_ms < 1:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class SolveStats:
    nodes: int = 0
    elapsed_ms: float = 0.0


@dataclass(frozen=True)
class HittingSet:
    elements: tuple  # sorted Arcs (arc mode) or vertex ids (vertex mode)
    mode: Mode
    optimal: bool
    lower_bound: int
    stats: SolveStats = SolveStats()

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class Packing:
    cycles: tuple[Cycle, ...]
    mode: Mode
    optimal: bool
    stats: SolveStats = SolveStats()

    def __len__(self) -> int:
        return len(self.cycles)


@dataclass(frozen=True)
class GateResult:
    """Either ``k`` arc-disjoint cycles of G or a feedback arc set of G."""

    k: int
    packing: Packing | None = None
    cover: HittingSet | None = None

    def __post_init__(self) -> None:
        if (self.packing is None) == (self.cover is None):
            raise ValueError("a gate result holds exactly one of packing or cover")

    @property
    def optimal(self) -> bool:
        """Whether the answer is settled.

        ``k`` disjoint cycles settle it outright; a cover is settled only
        when both the packing and the covering search completed.
        """
        return self.packing is not None or self.cover.optimal


class CertificateError(AssertionError):
    """A certificate failed re-validation (indicates a solver bug)."""


def check_hitting_set(G: Digraph, hs: HittingSet) -> None:
    residual = remove_arcs(G, hs.elements) if hs.mode == "arc" else remove_vertices(G, hs.elements)
    if not is_acyclic(residual):
        raise CertificateError(f"removing {hs.elements} leaves a cycle")


def check_packing(G: Digraph, packing: Packing) -> None:
    used: set = set()
    for cycle in packing.cycles:
        validate_cycle(G, cycle)
        items = set(cycle.arcs) if packing.mode == "arc" else set(cycle.vertices)
        if used & items:
            raise CertificateError(f"{cycle} overlaps an earlier cycle ({packing.mode} mode)")
        used |= items


class _OutOfBudget(Exception):
    pass


class _Clock:
    def __init__(self, budget: SolveBudget):
        self.budget = budget
        self.nodes = 0
        self.start = time.monotonic()

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            raise _OutOfBudget
        if (self.nodes & 63) == 0 and self.elapsed_ms() > self.budget.time_limit_ms:
            raise _OutOfBudget

    def elapsed_ms(self) -> float:
        return (time.monotonic() - self.start) * 1000.0

    def stats(self) -> SolveStats:
        return SolveStats(self.nodes, round(self.elapsed_ms(), 3))


def _short_cycle(n: int, succ: list[list[int]]) -> list[int] | None:
    """Vertex list of some minimum-length cycle (deterministic), else None.

    BFS from every vertex; cheaper than :func:`shortest_cycle` because it
    skips the lexicographic tie-break, which the search does not need.
    """
    best: list[int] | None = None
    for s in range(n):
        if not succ[s]:
            continue
        parent = {s: -1}
        depth = {s: 0}
        queue = deque([s])
        closing = None
        while queue and closing is None:
            v = queue.popleft()
            if best is not None and depth[v] + 1 >= len(best):
                break
            for w in succ[v]:
                if w == s:
                    closing = v
                    break
                if w not in parent:
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    queue.append(w)
        if closing is not None:
            path = []
            v = closing
            while v != -1:
                path.append(v)
                v = parent[v]
            path.reverse()
            if best is None or len(path) < len(best):
                best = path
                if len(best) == 2:
                    return best
    return best


class _Residual:
    """Digraph with some arcs or vertices deleted, as plain successor lists."""

    def __init__(self, G: Digraph, mode: Mode, deleted: set):
        self.n = G.n
        if mode == "arc":
            self.succ = [[a.head for a in G.out_arcs[v] if a not in deleted] for v in range(G.n)]
        else:
            self.succ = [
                [] if v in deleted else [w for w in G.successors(v) if w not in deleted]
                for v in range(G.n)
            ]

    def short_cycle(self) -> list[int] | None:
        return _short_cycle(self.n, self.succ)

    def drop(self, verts: list[int], mode: Mode) -> None:
        k = len(verts)
        if mode == "arc":
            for i, v in enumerate(verts):
                self.succ[v].remove(verts[(i + 1) % k])
        else:
            gone = set(verts)
            self.succ = [[] if v in gone else [w for w in s if w not in gone] for v, s in enumerate(self.succ)]


def _cycle_elements(verts: list[int], mode: Mode) -> list:
    if mode == "vertex":
        return sorted(verts)
    k = len(verts)
    return sorted(Arc(verts[i], verts[(i + 1) % k]) for i in range(k))


def greedy_packing(G: Digraph, mode: Mode, deleted: set = frozenset()) -> list[Cycle]:
    """Repeatedly take a shortest cycle and delete its arcs (or vertices)."""
    residual = _Residual(G, mode, set(deleted))
    cycles = []
    while (verts := residual.short_cycle()) is not None:
        cycles.append(Cycle.from_vertices(verts).canonical())
        residual.drop(verts, mode)
    return cycles


def _greedy_cover(G: Digraph, mode: Mode) -> list:
    chosen: list = []
    residual = _Residual(G, mode, set())
    while (verts := residual.short_cycle()) is not None:
        element = _cycle_elements(verts, mode)[0]
        chosen.append(element)
        residual = _Residual(G, mode, set(chosen))
    return sorted(chosen)


def _min_hitting_set(G: Digraph, mode: Mode, budget: SolveBudget) -> HittingSet:
    """Branch on the elements of a shortest cycle, since any solution hits it.

    Branch ``i`` deletes the ``i``-th element and forbids deleting the
    earlier ones, so the subtrees are disjoint. Nodes are pruned when the
    deleted count plus a greedy disjoint packing of the residual exceeds
    the incumbent; equal-size subtrees are still explored so the
    lexicographically smallest optimum wins.
    """
    clock = _Clock(budget)
    best = _greedy_cover(G, mode)
    root_lb = len(greedy_packing(G, mode))

    def search(deleted: list, forbidden: frozenset) -> None:
        nonlocal best
        clock.tick()
        residual = _Residual(G, mode, set(deleted))
        verts = residual.short_cycle()
        if verts is None:
            cand = sorted(deleted)
            if len(cand) < len(best) or (len(cand) == len(best) and cand < best):
                best = cand
            return
        lb = len(deleted) + len(greedy_packing(G, mode, set(deleted)))
        if lb > len(best):
            return
        blocked = set(forbidden)
        for element in _cycle_elements(verts, mode):
            if element in blocked:
                continue
            search(deleted + [element], frozenset(blocked))
            blocked.add(element)

    optimal = True
    try:
        search([], frozenset())
    except _OutOfBudget:
        optimal = False
        log.info("hitting set search stopped after %d nodes", clock.nodes)
    hs = HittingSet(
        tuple(best), mode, optimal, len(best) if optimal else root_lb, clock.stats()
    )
    check_hitting_set(G, hs)
    return hs


def min_feedback_arc_set(G: Digraph, budget: SolveBudget | None = None) -> HittingSet:
    return _min_hitting_set(G, "arc", budget or SolveBudget())


def min_feedback_vertex_set(H: Digraph, budget: SolveBudget | None = None) -> HittingSet:
    return _min_hitting_set(H, "vertex", budget or SolveBudget())


def _max_set_packing(masks: list[int], sizes: list[int], clock: _Clock, warm: int) -> list[int]:
    """Indices of a maximum family of pairwise disjoint masks.

    ``masks`` must be sorted by nondecreasing size. Returns ``[]`` if
    nothing beats ``warm``.
    """
    k = len(masks)
    suffix_or = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suffix_or[i] = suffix_or[i + 1] | masks[i]
    best: list[int] = []
    best_size = warm

    def search(cands: list[int], chosen: list[int]) -> None:
        nonlocal best, best_size
        clock.tick()
        if len(chosen) > best_size:
            best, best_size = list(chosen), len(chosen)
        union = 0
        tails = []
        for idx in reversed(cands):
            union |= masks[idx]
            tails.append(union)
        tails.reverse()
        for pos, idx in enumerate(cands):
            # every cycle in cands[pos:] has at least sizes[idx] elements
            room = min(len(cands) - pos, bin(tails[pos]).count("1") // sizes[idx])
            if len(chosen) + room <= best_size:
                return
            m = masks[idx]
            rest = [j for j in cands[pos + 1 :] if not masks[j] & m]
            chosen.append(idx)
            search(rest, chosen)
            chosen.pop()

    search(list(range(k)), [])
    return best


def max_disjoint_cycle_packing(
    G: Digraph, mode: Mode = "arc", budget: SolveBudget | None = None
) -> Packing:
    """Maximum packing of arc- or vertex-disjoint cycles.

    The candidate cycles are enumerated (at most ``budget.node_limit``),
    then a maximum disjoint subfamily is found by include/exclude search
    over the list, warm-started by :func:`greedy_packing`. Arc mode needs
    every simple cycle; vertex mode only the chordless ones, since any
    cycle can be swapped for a chordless cycle on a subset of its vertices.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    budget = budget or SolveBudget()
    clock = _Clock(budget)
    warm = greedy_packing(G, mode)
    optimal = True
    chosen = warm
    try:
        enumerator = enumerate_simple_cycles if mode == "arc" else enumerate_chordless_cycles
        cycles = enumerator(G, cap=budget.node_limit)
    except CycleCapExceeded:
        log.info("cycle enumeration exceeded %d; keeping greedy packing", budget.node_limit)
        cycles = None
        optimal = False
    if cycles is not None:
        index: dict = {}
        masks = []
        for c in cycles:
            items = c.arcs if mode == "arc" else c.vertices
            m = 0
            for item in items:
                m |= 1 << index.setdefault(item, len(index))
            masks.append(m)
        order = sorted(range(len(cycles)), key=lambda i: (len(cycles[i]), cycles[i].arcs))
        try:
            picked = _max_set_packing(
                [masks[i] for i in order], [len(cycles[i]) for i in order], clock, len(warm)
            )
        except _OutOfBudget:
            picked = []
            optimal = False
        if picked:
            chosen = [cycles[order[i]] for i in picked]
    packing = Packing(tuple(sorted(chosen, key=lambda c: c.arcs)), mode, optimal, clock.stats())
    check_packing(G, packing)
    return packing


def erdos_posa_gate(G: Digraph, k: int, budget: SolveBudget | None = None) -> GateResult:
    """Return ``k`` arc-disjoint cycles of ``G`` or a minimum feedback arc set.

    Works entirely in the line digraph: a vertex-disjoint packing there
    pulls back to arc-disjoint cycles of ``G`` (one extracted from each
    line cycle), and a feedback vertex set there is, read as arcs, a
    feedback arc set of ``G``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    budget = budget or SolveBudget()
    LG = build_line_digraph(G)
    line_packing = max_disjoint_cycle_packing(LG.graph, "vertex", budget)
    if len(line_packing) >= k:
        base_cycles = tuple(
            extract_cycle_from_line_cycle(LG, c) for c in line_packing.cycles[:k]
        )
        packing = Packing(
            base_cycles, "arc", line_packing.optimal and len(line_packing) == k, line_packing.stats
        )
        check_packing(G, packing)
        return GateResult(k, packing=packing)
    fvs = min_feedback_vertex_set(LG.graph, budget)
    cover = HittingSet(
        tuple(sorted(LG.to_base[x] for x in fvs.elements)),
        "arc",
        fvs.optimal and line_packing.optimal,
        fvs.lower_bound,
        SolveStats(line_packing.stats.nodes + fvs.stats.nodes,
                   line_packing.stats.elapsed_ms + fvs.stats.elapsed_ms),
    )
    check_hitting_set(G, cover)
    return GateResult(k, cover=cover)
