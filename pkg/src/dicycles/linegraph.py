"""Directed line digraph L(G) and the cycle maps between G and L(G).

Line-vertex ``i`` stands for ``G.arcs[i]``; there is an arc ``x -> y`` in
L(G) exactly when the head of arc ``x`` is the tail of arc ``y``.
A cycle of G maps to a cycle of L(G) of the same length. A cycle of L(G)
only maps back to a closed trail of G, from which a genuine cycle is cut
out by the minimal-gap rule in :func:`extract_cycle_from_line_cycle`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from dicycles.digraph import (
    Arc,
    ClosedTrail,
    Cycle,
    Digraph,
    InvalidCycleError,
    arcs_at,
    induced_subgraph_by_vertices,
    validate_closed_trail,
    validate_cycle,
)


class ExtractionError(AssertionError):
    """Extraction produced something that is not a cycle of the base graph.

    Valid input can never trigger this; it signals a bug.
    """


@dataclass(frozen=True)
class LineDigraph:
    base: Digraph
    graph: Digraph
    to_base: tuple[Arc, ...]
    from_base: dict[Arc, int]

    def __hash__(self) -> int:
        return hash((self.base, self.graph))


def build_line_digraph(G: Digraph) -> LineDigraph:
    to_base = G.arcs
    from_base = {arc: i for i, arc in enumerate(to_base)}
    line_arcs = [
        (from_base[e], from_base[f])
        for v in range(G.n)
        for e in G.in_arcs[v]
        for f in G.out_arcs[v]
    ]
    return LineDigraph(G, Digraph(len(to_base), line_arcs), to_base, from_base)


def image_cycle(LG: LineDigraph, C: Cycle | ClosedTrail) -> Cycle:
    """Map a cycle (or closed trail) of the base graph into L(G).

    The returned cycle visits ``from_base(arc)`` for the arcs of ``C`` in
    the given order, so its length is ``len(C)``.
    """
    if isinstance(C, Cycle):
        validate_cycle(LG.base, C)
    else:
        validate_closed_trail(LG.base, C)
    return Cycle.from_vertices([LG.from_base[a] for a in C.arcs])


def preimage_trail(LG: LineDigraph, Cp: Cycle) -> ClosedTrail:
    """The closed trail of G traced by a cycle of L(G)."""
    validate_cycle(LG.graph, Cp)
    return ClosedTrail(tuple(LG.to_base[x] for x in Cp.vertices))


def _minimal_gap(seq: Sequence[Arc]) -> tuple[int, int]:
    """Indices ``i < j`` with ``tail(seq[i]) == head(seq[j])`` and ``j - i`` minimal.

    Ties go to the smallest ``i``. ``seq`` must be a closed chained walk,
    so the pair ``(0, len-1)`` always qualifies.
    """
    last_tail_at: dict[int, int] = {}
    best: tuple[int, int] | None = None
    # scan j forward; the best i for head(seq[j]) is its latest tail position
    for j, arc in enumerate(seq):
        last_tail_at[arc.tail] = j
        i = last_tail_at.get(arc.head)
        if i is not None and i < j:
            if best is None or j - i < best[1] - best[0]:
                best = (i, j)
    if best is None:
        raise InvalidCycleError("sequence is not a closed walk")
    return best


def _rotate_to_min(seq: Sequence[Arc]) -> list[Arc]:
    k = seq.index(min(seq))
    return list(seq[k:]) + list(seq[:k])


def extract_cycle_from_line_cycle(LG: LineDigraph, Cp: Cycle) -> Cycle:
    """Cut a cycle of G out of the closed trail traced by ``Cp``.

    The trail is rotated to start at its smallest arc (equivalently, the
    smallest line-vertex); the cycle returned is ``v_i .. v_j`` for the
    minimal-gap pair of :func:`_minimal_gap`.
    """
    trail = preimage_trail(LG, Cp)
    seq = _rotate_to_min(trail.arcs)
    i, j = _minimal_gap(seq)
    try:
        cycle = Cycle(tuple(seq[i : j + 1]))
        validate_cycle(LG.base, cycle)
    except InvalidCycleError as exc:
        raise ExtractionError(f"extraction from {Cp} failed: {exc}") from exc
    if not set(cycle.arcs) <= set(trail.arcs):
        raise ExtractionError("extracted arcs escape the line cycle")
    return cycle


def decompose_closed_trail(G: Digraph, W: ClosedTrail) -> list[Cycle]:
    """Split a closed trail into arc-disjoint cycles covering all its arcs.

    Greedy: extract by the minimal-gap rule, splice the cycle out (what is
    left is again a closed trail), repeat.
    """
    validate_closed_trail(G, W)
    seq = list(W.arcs)
    cycles = []
    while seq:
        seq = _rotate_to_min(seq)
        i, j = _minimal_gap(seq)
        cycles.append(Cycle(tuple(seq[i : j + 1])).canonical())
        seq = seq[:i] + seq[j + 1 :]
    return cycles


def line_neighborhood(LG: LineDigraph, u: int) -> tuple[Digraph, dict[int, int]]:
    """Subgraph L_u of L(G) induced on the line-vertices of arcs at ``u``.

    Returns the subgraph (renumbered in line-vertex order) and the
    line-vertex -> local index map.
    """
    members = [LG.from_base[a] for a in arcs_at(LG.base, u)]
    return induced_subgraph_by_vertices(LG.graph, members)
