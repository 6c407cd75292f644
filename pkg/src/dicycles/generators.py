"""Seeded instance generators and a few named small digraphs.

Random instances draw from :class:`random.Random` (MT19937), one
``random()`` call per ordered pair ``(u, v)``, ``u != v``, in
lexicographic order; the pair is kept when the draw is below ``p``.
The same ``(n, p, seed)`` therefore always yields the same digraph.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from dicycles.digraph import Arc, ClosedTrail, Digraph

PRNG_NAME = "mt19937"
FAMILIES = ("random", "rose", "digon-chain")


@dataclass(frozen=True)
class GenSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def build(self, seed: int | None = None) -> Digraph:
        seed = self.seed if seed is None else seed
        if self.family == "random":
            return gen_random(self.params["n"], self.params["p"], seed)
        if self.family == "rose":
            return gen_rose(self.params["r"], self.params["length"])
        return gen_digon_chain(self.params["m"])

    def label(self) -> str:
        if self.family == "random":
            return f"random({self.params['n']},{self.params['p']})"
        if self.family == "rose":
            return f"rose({self.params['r']},{self.params['length']})"
        return f"digon_chain({self.params['m']})"

    def header(self, seed: int | None = None) -> str:
        seed = self.seed if seed is None else seed
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"gen family={self.family} {params} seed={seed} prng={PRNG_NAME}"


def gen_random(n: int, p: float, seed: int) -> Digraph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    return Digraph(n, arcs)


def gen_rose(r: int, length: int) -> Digraph:
    """``r`` cycles of length ``length`` through hub 0, petals numbered consecutively."""
    if r < 1 or length < 2:
        raise ValueError("rose needs r >= 1 and length >= 2")
    arcs = []
    for petal in range(r):
        first = 1 + petal * (length - 1)
        ring = [0] + list(range(first, first + length - 1))
        arcs += [(ring[i], ring[(i + 1) % length]) for i in range(length)]
    return Digraph(r * (length - 1) + 1, arcs)


def rose_euler_trail(r: int, length: int) -> ClosedTrail:
    """Closed trail through every arc of ``gen_rose(r, length)``, petal by petal."""
    G = gen_rose(r, length)
    arcs = []
    for petal in range(r):
        first = 1 + petal * (length - 1)
        ring = [0] + list(range(first, first + length - 1))
        arcs += [Arc(ring[i], ring[(i + 1) % length]) for i in range(length)]
    assert len(arcs) == G.m
    return ClosedTrail(tuple(arcs))


def gen_digon_chain(m: int) -> Digraph:
    if m < 1:
        raise ValueError("digon chain needs m >= 1")
    return Digraph(m + 1, [a for i in range(m) for a in ((i, i + 1), (i + 1, i))])


def triangle() -> Digraph:
    return Digraph(3, [(0, 1), (1, 2), (2, 0)])


def digon() -> Digraph:
    return gen_digon_chain(1)


def path(n: int) -> Digraph:
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_digraph(n: int) -> Digraph:
    return gen_random(n, 1.0, 0)


def named_instances() -> dict[str, Digraph]:
    """The small fixed instances used throughout the tests and the lab."""
    return {
        "T3": triangle(),
        "D2": digon(),
        "R2": gen_rose(2, 3),
        "rose(3,3)": gen_rose(3, 3),
        "rose(4,3)": gen_rose(4, 3),
        "digon_chain(1)": gen_digon_chain(1),
        "digon_chain(2)": gen_digon_chain(2),
        "digon_chain(3)": gen_digon_chain(3),
        "K3": complete_digraph(3),
        "path4": path(4),
    }
