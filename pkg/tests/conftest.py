"""Shared brute-force oracles and hypothesis strategies.

The oracles deliberately avoid the package's algorithms: cycles come from
vertex permutations, acyclicity from Kahn's algorithm, optima from
exhaustive subset search.
"""
from __future__ import annotations

from itertools import combinations, permutations

from hypothesis import strategies as st

from dicycles.digraph import Arc, Digraph
from dicycles.generators import gen_random


def kahn_acyclic(n: int, arcs) -> bool:
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for t, h in arcs:
        succ[t].append(h)
        indeg[h] += 1
    ready = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == n


def brute_cycles(G: Digraph) -> set[tuple[Arc, ...]]:
    """Every simple cycle as its canonical arc tuple, via vertex permutations."""
    arcset = set(G.arcs)
    found = set()
    for s in range(G.n):
        rest = [v for v in range(s + 1, G.n)]
        for k in range(1, len(rest) + 1):
            for combo in combinations(rest, k):
                for perm in permutations(combo):
                    verts = (s,) + perm
                    arcs = tuple(Arc(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts)))
                    if all(a in arcset for a in arcs):
                        found.add(arcs)
    return found


def brute_chordless(G: Digraph) -> set[tuple[Arc, ...]]:
    out = set()
    for arcs in brute_cycles(G):
        verts = {a.tail for a in arcs}
        induced = {a for a in G.arcs if a.tail in verts and a.head in verts}
        if induced == set(arcs):
            out.add(arcs)
    return out


def brute_min_fas(G: Digraph) -> int:
    for size in range(G.m + 1):
        for X in combinations(G.arcs, size):
            dropped = set(X)
            if kahn_acyclic(G.n, [a for a in G.arcs if a not in dropped]):
                return size
    raise AssertionError("unreachable")


def brute_min_fvs(G: Digraph) -> int:
    for size in range(G.n + 1):
        for S in combinations(range(G.n), size):
            gone = set(S)
            if kahn_acyclic(G.n, [a for a in G.arcs if a.tail not in gone and a.head not in gone]):
                return size
    raise AssertionError("unreachable")


def brute_max_packing(cycles, mode: str) -> int:
    """Largest pairwise-disjoint subfamily, by checking every subset."""
    items = [frozenset(c) if mode == "arc" else frozenset(a.tail for a in c) for c in cycles]
    best = 0
    for mask in range(1 << len(items)):
        chosen = [items[i] for i in range(len(items)) if mask >> i & 1]
        if len(chosen) <= best:
            continue
        union = frozenset().union(*chosen)
        if len(union) == sum(len(c) for c in chosen):
            best = len(chosen)
    return best


def random_corpus(count: int, max_n: int = 7, ps=(0.2, 0.3, 0.4, 0.5)) -> list[Digraph]:
    return [
        gen_random(2 + i % (max_n - 1), ps[(i // (max_n - 1)) % len(ps)], 1000 + i)
        for i in range(count)
    ]


@st.composite
def digraphs(draw, max_n: int = 6) -> Digraph:
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Digraph(n, chosen)
