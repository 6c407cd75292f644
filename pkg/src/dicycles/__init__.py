"""Packing and covering directed cycles through the directed line graph."""
from dicycles.digraph import (
    Arc,
    ClosedTrail,
    Cycle,
    CycleCapExceeded,
    Digraph,
    arcs_at,
    enumerate_chordless_cycles,
    enumerate_simple_cycles,
    induced_subgraph_by_arcs,
    is_acyclic,
    remove_arcs,
    shortest_cycle,
)
from dicycles.linegraph import (
    LineDigraph,
    build_line_digraph,
    decompose_closed_trail,
    extract_cycle_from_line_cycle,
    image_cycle,
    line_neighborhood,
)
from dicycles.solvers import (
    GateResult,
    HittingSet,
    Packing,
    SolveBudget,
    erdos_posa_gate,
    max_disjoint_cycle_packing,
    min_feedback_arc_set,
    min_feedback_vertex_set,
)

__version__ = "0.1.0"
