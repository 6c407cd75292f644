"""Simple loop-free digraphs, directed cycles and closed trails.

Vertices are dense integers ``0 .. n-1``. An arc is the ordered pair
``(tail, head)`` and is its own identity, so parallel arcs cannot exist.
Arcs are kept in lexicographic order; every tie-break in the package
derives from that order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class DigraphError(ValueError):
    """Base class for malformed digraph input."""


class LoopError(DigraphError):
    pass


class DuplicateArcError(DigraphError):
    pass


class VertexRangeError(DigraphError):
    pass


class MissingArcError(DigraphError):
    pass


class InvalidCycleError(DigraphError):
    pass


class CycleCapExceeded(RuntimeError):
    """Raised when cycle enumeration finds more than ``cap`` cycles.

    ``partial`` holds the first ``cap`` cycles found (canonically sorted);
    it is not the complete cycle set.
    """

    def __init__(self, cap: int, partial: list[Cycle]):
        super().__init__(f"more than {cap} simple cycles (enumeration stopped)")
        self.cap = cap
        self.partial = partial


class Arc(NamedTuple):
    tail: int
    head: int

    def __repr__(self) -> str:
        return f"({self.tail},{self.head})"


class Digraph:
    """Immutable simple digraph without loops.

    Antiparallel pairs (digons) are allowed.
    """

    __slots__ = ("n", "arcs", "out_arcs", "in_arcs", "_arcset")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise VertexRangeError(f"vertex count must be nonnegative, got {n}")
        seen: set[Arc] = set()
        for tail, head in arcs:
            arc = Arc(int(tail), int(head))
            if not (0 <= arc.tail < n and 0 <= arc.head < n):
                raise VertexRangeError(f"arc {arc} has an endpoint outside [0, {n})")
            if arc.tail == arc.head:
                raise LoopError(f"loop at vertex {arc.tail} is not allowed")
            if arc in seen:
                raise DuplicateArcError(f"duplicate arc {arc}")
            seen.add(arc)
        ordered = tuple(sorted(seen))
        out_arcs: list[list[Arc]] = [[] for _ in range(n)]
        in_arcs: list[list[Arc]] = [[] for _ in range(n)]
        for arc in ordered:
            out_arcs[arc.tail].append(arc)
            in_arcs[arc.head].append(arc)
        self.n = n
        self.arcs: tuple[Arc, ...] = ordered
        self.out_arcs: tuple[tuple[Arc, ...], ...] = tuple(map(tuple, out_arcs))
        self.in_arcs: tuple[tuple[Arc, ...], ...] = tuple(map(tuple, in_arcs))
        self._arcset = frozenset(seen)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def has_arc(self, arc: tuple[int, int]) -> bool:
        return arc in self._arcset

    def successors(self, u: int) -> list[int]:
        return [a.head for a in self.out_arcs[u]]

    def predecessors(self, u: int) -> list[int]:
        return [a.tail for a in self.in_arcs[u]]

    def outdegree(self, u: int) -> int:
        return len(self.out_arcs[u])

    def indegree(self, u: int) -> int:
        return len(self.in_arcs[u])

    def _check_vertex(self, u: int) -> None:
        if not 0 <= u < self.n:
            raise VertexRangeError(f"vertex {u} outside [0, {self.n})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={list(map(tuple, self.arcs))})"


def _check_chained(arcs: Sequence[Arc], what: str) -> None:
    if not arcs:
        raise InvalidCycleError(f"{what} must have at least one arc")
    for i, arc in enumerate(arcs):
        nxt = arcs[(i + 1) % len(arcs)]
        if arc.head != nxt.tail:
            raise InvalidCycleError(f"{what} breaks between {arc} and {nxt}")


@dataclass(frozen=True)
class ClosedTrail:
    """Closed walk with pairwise distinct arcs; vertices may repeat."""

    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        arcs = tuple(Arc(*a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        _check_chained(arcs, "closed trail")
        if len(set(arcs)) != len(arcs):
            raise InvalidCycleError("closed trail repeats an arc")

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class Cycle:
    """Directed cycle as a head-to-tail chained arc sequence.

    Construction enforces the cycle invariants: closed, chained, all
    tails distinct, length at least 2.
    """

    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        arcs = tuple(Arc(*a) for a in self.arcs)
        object.__setattr__(self, "arcs", arcs)
        _check_chained(arcs, "cycle")
        if len(arcs) < 2:
            raise InvalidCycleError("a cycle needs at least two arcs")
        tails = [a.tail for a in arcs]
        if len(set(tails)) != len(tails):
            raise InvalidCycleError(f"cycle revisits a vertex: {tails}")

    @classmethod
    def from_vertices(cls, vertices: Sequence[int]) -> Cycle:
        k = len(vertices)
        return cls(tuple(Arc(vertices[i], vertices[(i + 1) % k]) for i in range(k)))

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(a.tail for a in self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def canonical(self) -> Cycle:
        """Rotation that starts at the smallest arc."""
        start = self.arcs.index(min(self.arcs))
        if start == 0:
            return self
        return Cycle(self.arcs[start:] + self.arcs[:start])


def validate_cycle(G: Digraph, cycle: Cycle) -> None:
    """Raise unless every arc of ``cycle`` is an arc of ``G``.

    Structural invariants are already enforced by :class:`Cycle` itself.
    """
    for arc in cycle.arcs:
        if not G.has_arc(arc):
            raise MissingArcError(f"cycle arc {arc} is not in the digraph")


def validate_closed_trail(G: Digraph, trail: ClosedTrail) -> None:
    for arc in trail.arcs:
        if not G.has_arc(arc):
            raise MissingArcError(f"trail arc {arc} is not in the digraph")


def _require_arcs(G: Digraph, arcs: Iterable[tuple[int, int]]) -> set[Arc]:
    result = set()
    for a in arcs:
        arc = Arc(*a)
        if not G.has_arc(arc):
            raise MissingArcError(f"arc {arc} is not in the digraph")
        result.add(arc)
    return result


def induced_subgraph_by_arcs(
    G: Digraph, T: Iterable[tuple[int, int]]
) -> tuple[Digraph, dict[int, int]]:
    """Smallest subgraph of ``G`` whose arc set is ``T``.

    Only endpoints of ``T`` survive; they are renumbered densely in
    increasing order. Returns the subgraph and the old -> new vertex map.
    """
    chosen = _require_arcs(G, T)
    kept = sorted({v for a in chosen for v in a})
    old_to_new = {v: i for i, v in enumerate(kept)}
    H = Digraph(len(kept), ((old_to_new[a.tail], old_to_new[a.head]) for a in chosen))
    return H, old_to_new


def induced_subgraph_by_vertices(
    G: Digraph, S: Iterable[int]
) -> tuple[Digraph, dict[int, int]]:
    """Subgraph induced on vertex set ``S``, renumbered densely."""
    kept = sorted(set(S))
    for v in kept:
        G._check_vertex(v)
    old_to_new = {v: i for i, v in enumerate(kept)}
    H = Digraph(
        len(kept),
        (
            (old_to_new[a.tail], old_to_new[a.head])
            for v in kept
            for a in G.out_arcs[v]
            if a.head in old_to_new
        ),
    )
    return H, old_to_new


def remove_arcs(G: Digraph, X: Iterable[tuple[int, int]]) -> Digraph:
    dropped = _require_arcs(G, X)
    return Digraph(G.n, (a for a in G.arcs if a not in dropped))


def remove_vertices(G: Digraph, S: Iterable[int]) -> Digraph:
    """Drop every arc touching ``S``; vertex indices are kept (``S`` ends isolated)."""
    dropped = set(S)
    for v in dropped:
        G._check_vertex(v)
    return Digraph(G.n, (a for a in G.arcs if a.tail not in dropped and a.head not in dropped))


def arcs_at(G: Digraph, u: int) -> set[Arc]:
    """All arcs with ``u`` as tail or head."""
    G._check_vertex(u)
    return set(G.out_arcs[u]) | set(G.in_arcs[u])


WHITE, GRAY, BLACK = 0, 1, 2


def is_acyclic(G: Digraph) -> bool:
    """Iterative depth-first search with three-color marking."""
    color = [WHITE] * G.n
    for root in range(G.n):
        if color[root] != WHITE:
            continue
        color[root] = GRAY
        stack = [(root, iter(G.out_arcs[root]))]
        while stack:
            v, it = stack[-1]
            for arc in it:
                w = arc.head
                if color[w] == GRAY:
                    return False
                if color[w] == WHITE:
                    color[w] = GRAY
                    stack.append((w, iter(G.out_arcs[w])))
                    break
            else:
                color[v] = BLACK
                stack.pop()
    return True


def _bfs_distances_to(G: Digraph, target: int, floor: Arc | None) -> list[int]:
    """Distance from every vertex to ``target`` using only arcs > ``floor``."""
    dist = [-1] * G.n
    dist[target] = 0
    queue = deque([target])
    while queue:
        w = queue.popleft()
        for arc in G.in_arcs[w]:
            if floor is not None and arc <= floor:
                continue
            if dist[arc.tail] < 0:
                dist[arc.tail] = dist[w] + 1
                queue.append(arc.tail)
    return dist


def shortest_cycle(G: Digraph) -> Cycle | None:
    """A minimum-length cycle, or ``None`` when ``G`` is acyclic.

    Among cycles of minimum length the one whose canonical arc sequence
    is lexicographically smallest is returned.
    """
    if not G.arcs:
        return None
    # girth: shortest path head -> tail closes each arc
    girth = None
    for v in range(G.n):
        if not G.out_arcs[v]:
            continue
        dist = _bfs_distances_to(G, v, None)
        for arc in G.out_arcs[v]:
            if dist[arc.head] >= 0:
                length = dist[arc.head] + 1
                if girth is None or length < girth:
                    girth = length
    if girth is None:
        return None
    # a canonical cycle starts with its smallest arc, so every later arc is larger
    for first in G.arcs:
        dist = _bfs_distances_to(G, first.tail, first)
        if dist[first.head] != girth - 1:
            continue
        arcs = [first]
        v, remaining = first.head, girth - 1
        while remaining:
            for arc in G.out_arcs[v]:
                if arc > first and dist[arc.head] == remaining - 1:
                    arcs.append(arc)
                    v = arc.head
                    remaining -= 1
                    break
        return Cycle(tuple(arcs))
    raise AssertionError("girth found but no cycle reconstructed")


def _reach(succ: list[list[int]], start: int, allowed: set[int]) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in succ[v]:
            if w in allowed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _johnson_from(s: int, succ: dict[int, list[int]]):
    """Elementary circuits through ``s`` inside one strong component.

    Non-recursive form of Johnson's blocking search; yields vertex lists
    starting at ``s``.
    """
    blocked = {s}
    blocked_by: dict[int, set[int]] = {v: set() for v in succ}
    path = [s]
    stack = [iter(succ[s])]
    closed = [False]

    def unblock(v: int) -> None:
        todo = [v]
        while todo:
            u = todo.pop()
            if u in blocked:
                blocked.discard(u)
                todo.extend(blocked_by[u])
                blocked_by[u].clear()

    while stack:
        for w in stack[-1]:
            if w == s:
                yield list(path)
                closed[-1] = True
            elif w not in blocked:
                path.append(w)
                blocked.add(w)
                stack.append(iter(succ[w]))
                closed.append(False)
                break
        else:
            stack.pop()
            v = path.pop()
            found = closed.pop()
            if found:
                unblock(v)
                if closed:
                    closed[-1] = True
            else:
                for w in succ[v]:
                    blocked_by[w].add(v)


def enumerate_simple_cycles(G: Digraph, cap: int | None = None) -> list[Cycle]:
    """All simple cycles of ``G``, canonical and sorted, each once up to rotation.

    Johnson's algorithm: for each start vertex ``s`` the search runs in the
    strong component of ``s`` within the subgraph on vertices ``>= s``, so
    every circuit is found once, from its smallest vertex, which is also
    where its canonical rotation begins. Raises :class:`CycleCapExceeded`
    if more than ``cap`` cycles exist.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive")
    succ = [G.successors(v) for v in range(G.n)]
    pred = [G.predecessors(v) for v in range(G.n)]
    found: list[Cycle] = []
    for s in range(G.n):
        allowed = set(range(s, G.n))
        component = _reach(succ, s, allowed) & _reach(pred, s, allowed)
        if len(component) < 2:
            continue
        sub = {v: [w for w in succ[v] if w in component] for v in sorted(component)}
        for verts in _johnson_from(s, sub):
            if cap is not None and len(found) >= cap:
                found.sort(key=lambda c: c.arcs)
                raise CycleCapExceeded(cap, found)
            found.append(Cycle.from_vertices(verts))
    found.sort(key=lambda c: c.arcs)
    return found


def enumerate_chordless_cycles(G: Digraph, cap: int | None = None) -> list[Cycle]:
    """Cycles whose vertex set induces no arc besides the cycle's own.

    Every cycle contains a chordless one on a subset of its vertices, so
    these suffice for vertex-disjoint packing. Each is grown from its
    smallest vertex along induced paths; output is canonical and sorted.
    """
    if cap is not None and cap < 1:
        raise ValueError("cap must be positive")
    succ = [set(G.successors(v)) for v in range(G.n)]
    near = [succ[v] | set(G.predecessors(v)) for v in range(G.n)]
    found: list[Cycle] = []

    def emit(verts: list[int]) -> None:
        if cap is not None and len(found) >= cap:
            found.sort(key=lambda c: c.arcs)
            raise CycleCapExceeded(cap, found)
        found.append(Cycle.from_vertices(verts))

    for s in range(G.n):
        path = [s]
        stack = [iter(sorted(w for w in succ[s] if w > s))]
        while stack:
            for w in stack[-1]:
                last = path[-1]
                # w may touch the path only via last -> w and a closing w -> s
                if w in path:
                    continue
                if len(path) > 1 and (last in succ[w] or w in succ[s]):
                    continue
                if any(c in near[w] for c in path[1:-1]):
                    continue
                if s in succ[w]:
                    emit(path + [w])
                    continue
                path.append(w)
                stack.append(iter(sorted(x for x in succ[w] if x > s)))
                break
            else:
                stack.pop()
                path.pop()
    found.sort(key=lambda c: c.arcs)
    return found
