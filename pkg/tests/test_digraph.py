import networkx as nx
import pytest
from conftest import brute_chordless, brute_cycles, digraphs, kahn_acyclic
from hypothesis import given, settings
from hypothesis import strategies as st

from dicycles.digraph import (
    Arc,
    ClosedTrail,
    Cycle,
    CycleCapExceeded,
    Digraph,
    DuplicateArcError,
    InvalidCycleError,
    LoopError,
    MissingArcError,
    VertexRangeError,
    arcs_at,
    enumerate_chordless_cycles,
    enumerate_simple_cycles,
    induced_subgraph_by_arcs,
    is_acyclic,
    remove_arcs,
    shortest_cycle,
    validate_cycle,
)
from dicycles.generators import complete_digraph, digon, gen_rose, path, triangle
from dicycles.linegraph import build_line_digraph

T3 = triangle()
D2 = digon()
R2 = gen_rose(2, 3)
K3 = complete_digraph(3)


def test_construction_rejects_bad_arcs():
    with pytest.raises(LoopError):
        Digraph(2, [(1, 1)])
    with pytest.raises(DuplicateArcError):
        Digraph(2, [(0, 1), (0, 1)])
    with pytest.raises(VertexRangeError):
        Digraph(2, [(0, 2)])


def test_arcs_are_kept_in_lexicographic_order():
    G = Digraph(3, [(2, 0), (0, 2), (1, 0), (0, 1)])
    assert G.arcs == ((0, 1), (0, 2), (1, 0), (2, 0))
    assert G == Digraph(3, reversed(G.arcs))
    assert G.out_arcs[0] == ((0, 1), (0, 2))
    assert G.in_arcs[0] == ((1, 0), (2, 0))


@pytest.mark.parametrize(
    "arcs",
    [
        [(0, 1), (2, 0)],  # broken chain
        [(0, 1), (1, 0), (0, 1), (1, 0)],  # repeated vertex
        [],
    ],
)
def test_cycle_invariants_enforced(arcs):
    with pytest.raises(InvalidCycleError):
        Cycle(tuple(arcs))


def test_closed_trail_allows_repeated_vertices_but_not_arcs():
    trail = ClosedTrail(((0, 1), (1, 2), (2, 0), (0, 3), (3, 0)))
    assert len(trail) == 5
    with pytest.raises(InvalidCycleError):
        ClosedTrail(((0, 1), (1, 0), (0, 1), (1, 0)))


def test_validate_cycle_checks_membership():
    validate_cycle(T3, Cycle.from_vertices([0, 1, 2]))
    with pytest.raises(MissingArcError):
        validate_cycle(T3, Cycle.from_vertices([0, 2, 1]))


def test_canonical_rotation_starts_at_smallest_arc():
    c = Cycle.from_vertices([2, 0, 1])
    assert c.canonical().arcs == ((0, 1), (1, 2), (2, 0))


def test_induced_subgraph_by_arcs():
    H, mapping = induced_subgraph_by_arcs(T3, {(0, 1), (1, 2)})
    assert (H.n, H.m) == (3, 2)
    assert mapping == {0: 0, 1: 1, 2: 2}
    H, mapping = induced_subgraph_by_arcs(R2, [])
    assert (H.n, H.m) == (0, 0) and mapping == {}
    H, _ = induced_subgraph_by_arcs(R2, R2.arcs)
    assert H == R2


def test_induced_subgraph_renumbers_and_drops_isolated():
    H, mapping = induced_subgraph_by_arcs(R2, {(0, 3), (3, 4), (4, 0)})
    assert mapping == {0: 0, 3: 1, 4: 2}
    assert H.arcs == ((0, 1), (1, 2), (2, 0))
    with pytest.raises(MissingArcError):
        induced_subgraph_by_arcs(T3, {(1, 0)})


def test_remove_arcs_examples():
    G = remove_arcs(T3, {(0, 1)})
    assert G.m == 2 and is_acyclic(G)
    assert remove_arcs(R2, set()) == R2
    assert is_acyclic(remove_arcs(R2, {(2, 0), (4, 0)}))
    assert enumerate_simple_cycles(remove_arcs(R2, {(2, 0), (4, 0)})) == []
    with pytest.raises(MissingArcError):
        remove_arcs(T3, {(1, 0)})


@given(digraphs(), st.data())
def test_remove_arcs_partitions_the_arc_set(G, data):
    X = set(data.draw(st.lists(st.sampled_from(G.arcs), unique=True))) if G.arcs else set()
    H = remove_arcs(G, X)
    assert H.n == G.n
    assert set(H.arcs) | X == set(G.arcs)
    assert not set(H.arcs) & X


def test_is_acyclic_examples():
    assert is_acyclic(path(4))
    assert not is_acyclic(T3)
    assert not is_acyclic(D2)
    assert is_acyclic(Digraph(0))


def test_shortest_cycle_examples():
    assert shortest_cycle(D2).arcs == ((0, 1), (1, 0))
    assert shortest_cycle(T3).arcs == ((0, 1), (1, 2), (2, 0))
    assert shortest_cycle(R2).arcs == ((0, 1), (1, 2), (2, 0))
    assert shortest_cycle(path(5)) is None


@settings(max_examples=150)
@given(digraphs(max_n=7))
def test_acyclicity_three_ways(G):
    acyclic = is_acyclic(G)
    assert acyclic == kahn_acyclic(G.n, G.arcs)
    assert acyclic == (enumerate_simple_cycles(G) == [])
    assert acyclic == (shortest_cycle(G) is None)


@given(digraphs())
def test_shortest_cycle_matches_brute_force(G):
    cycles = brute_cycles(G)
    found = shortest_cycle(G)
    if not cycles:
        assert found is None
        return
    girth = min(map(len, cycles))
    expected = min(c for c in cycles if len(c) == girth)
    assert found.arcs == expected


def test_enumerate_examples():
    assert len(enumerate_simple_cycles(T3)) == 1
    k3 = enumerate_simple_cycles(K3)
    assert sorted(map(len, k3)) == [2, 2, 2, 3, 3]
    assert {c.arcs for c in k3} == brute_cycles(K3)
    assert [c.arcs for c in enumerate_simple_cycles(R2)] == [
        ((0, 1), (1, 2), (2, 0)),
        ((0, 3), (3, 4), (4, 0)),
    ]


@settings(max_examples=150)
@given(digraphs())
def test_enumeration_matches_brute_force(G):
    cycles = enumerate_simple_cycles(G)
    arcs = [c.arcs for c in cycles]
    assert set(arcs) == brute_cycles(G)
    assert len(arcs) == len(set(arcs))
    assert arcs == sorted(arcs)
    assert all(c.canonical() == c for c in cycles)
    assert enumerate_simple_cycles(G) == cycles


@settings(max_examples=60)
@given(digraphs(max_n=7))
def test_enumeration_matches_networkx(G):
    nxg = nx.DiGraph(list(G.arcs))
    expected = {Cycle.from_vertices(c).canonical().arcs for c in nx.simple_cycles(nxg) if len(c) > 1}
    assert {c.arcs for c in enumerate_simple_cycles(G)} == expected


def test_enumeration_cap():
    with pytest.raises(CycleCapExceeded) as info:
        enumerate_simple_cycles(K3, cap=3)
    assert info.value.cap == 3
    assert len(info.value.partial) == 3
    assert len(enumerate_simple_cycles(K3, cap=5)) == 5


@settings(max_examples=150)
@given(digraphs())
def test_chordless_cycles_match_brute_force(G):
    assert {c.arcs for c in enumerate_chordless_cycles(G)} == brute_chordless(G)


@settings(max_examples=60)
@given(digraphs(max_n=5))
def test_chordless_cycles_of_line_digraph_are_images_of_base_cycles(G):
    LG = build_line_digraph(G)
    assert len(enumerate_chordless_cycles(LG.graph)) == len(enumerate_simple_cycles(G))


def test_arcs_at_examples():
    assert arcs_at(R2, 0) == {(2, 0), (4, 0), (0, 1), (0, 3)}
    assert arcs_at(R2, 1) == {(0, 1), (1, 2)}
    assert arcs_at(Digraph(3, [(0, 1)]), 2) == set()
    with pytest.raises(VertexRangeError):
        arcs_at(R2, 5)


def test_arc_is_a_plain_pair():
    assert Arc(0, 1) == (0, 1)
    assert Arc(0, 2) > Arc(0, 1)
