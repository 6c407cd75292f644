"""Instance files and result documents.

Edge-list instance format::

    # comments anywhere, starting with '#'
    digraph <n> <m>
    <tail> <head>      (m lines, 0-based)

Result documents are JSON objects with sorted keys, so identical inputs
give byte-identical output.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Iterable

from dicycles.digraph import Arc, Cycle, Digraph
from dicycles.linegraph import LineDigraph
from dicycles.solvers import (
    GateResult,
    HittingSet,
    Packing,
    check_hitting_set,
    check_packing,
)


class InstanceFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class MalformedHeaderError(InstanceFormatError):
    pass


class MalformedArcLineError(InstanceFormatError):
    pass


class ArcCountError(InstanceFormatError):
    pass


class IndexRangeError(InstanceFormatError):
    pass


class LoopLineError(InstanceFormatError):
    pass


class DuplicateArcLineError(InstanceFormatError):
    pass


def _ints(tokens: list[str]) -> list[int] | None:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        return None


def parse_instance(text: str) -> Digraph:
    header: tuple[int, int] | None = None
    header_line = 0
    seen: dict[Arc, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if header is None:
            values = _ints(tokens[1:])
            if tokens[0] != "digraph" or values is None or len(values) != 2 or min(values) < 0:
                raise MalformedHeaderError(lineno, f"expected 'digraph <n> <m>', got {line!r}")
            header, header_line = (values[0], values[1]), lineno
            continue
        values = _ints(tokens)
        if values is None or len(values) != 2:
            raise MalformedArcLineError(lineno, f"expected '<tail> <head>', got {line!r}")
        n = header[0]
        tail, head = values
        if not (0 <= tail < n and 0 <= head < n):
            raise IndexRangeError(lineno, f"arc {tail} {head} has an index outside [0, {n})")
        if tail == head:
            raise LoopLineError(lineno, f"loop {tail} {head}")
        arc = Arc(tail, head)
        if arc in seen:
            raise DuplicateArcLineError(lineno, f"arc {tail} {head} repeats line {seen[arc]}")
        seen[arc] = lineno
    if header is None:
        raise MalformedHeaderError(0, "missing 'digraph <n> <m>' header")
    if len(seen) != header[1]:
        raise ArcCountError(header_line, f"header declares {header[1]} arcs, found {len(seen)}")
    return Digraph(header[0], seen)


def emit_instance(G: Digraph, fmt: str = "edge-list", comments: Iterable[str] = ()) -> str:
    if fmt == "edge-list":
        lines = [f"# {c}" for c in comments]
        lines.append(f"digraph {G.n} {G.m}")
        lines += [f"{a.tail} {a.head}" for a in G.arcs]
        return "\n".join(lines) + "\n"
    if fmt == "dot":
        lines = [f"// {c}" for c in comments]
        lines.append("digraph G {")
        lines += [f"  {v};" for v in range(G.n)]
        lines += [f"  {a.tail} -> {a.head};" for a in G.arcs]
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown instance format {fmt!r}")


def mapping_comments(LG: LineDigraph) -> list[str]:
    """One ``line-vertex <x> = arc <tail> <head>`` comment per line-vertex."""
    return [f"line-vertex {x} = arc {a.tail} {a.head}" for x, a in enumerate(LG.to_base)]


def instance_digest(G: Digraph) -> str:
    return "sha256:" + hashlib.sha256(emit_instance(G).encode()).hexdigest()


def _arc_list(arcs: Iterable[Arc]) -> list[list[int]]:
    return [[a.tail, a.head] for a in arcs]


def packing_certificate(packing: Packing) -> dict[str, Any]:
    return {
        "kind": "packing",
        "mode": packing.mode,
        "size": len(packing),
        "cycles": [_arc_list(c.arcs) for c in packing.cycles],
    }


def cover_certificate(cover: HittingSet) -> dict[str, Any]:
    elements = _arc_list(cover.elements) if cover.mode == "arc" else list(cover.elements)
    return {
        "kind": "cover",
        "mode": cover.mode,
        "size": len(cover),
        "lower_bound": cover.lower_bound,
        "elements": elements,
    }


def result_document(
    command: str,
    G: Digraph,
    result: Packing | HittingSet | GateResult,
    with_timing: bool = False,
) -> dict[str, Any]:
    """Structured record of a solve.

    ``elapsed_ms`` is ``None`` unless ``with_timing`` is set; wall-clock
    time would otherwise break byte-for-byte reproducibility.
    """
    if isinstance(result, GateResult):
        inner = result.packing if result.packing is not None else result.cover
        optimal = result.optimal
        extra = {"k": result.k, "outcome": "packing" if result.packing is not None else "cover"}
    else:
        inner, optimal, extra = result, result.optimal, {}
    cert = packing_certificate(inner) if isinstance(inner, Packing) else cover_certificate(inner)
    doc = {
        "command": command,
        "instance_digest": instance_digest(G),
        "certificate": cert,
        "optimal": optimal,
        "stats": {
            "nodes": inner.stats.nodes,
            "elapsed_ms": inner.stats.elapsed_ms if with_timing else None,
        },
    }
    doc.update(extra)
    return doc


def dump_document(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class CertificateMismatch(ValueError):
    pass


def check_document(doc: dict[str, Any], G: Digraph) -> None:
    """Re-validate a result document's certificate against ``G``."""
    if doc.get("instance_digest") != instance_digest(G):
        raise CertificateMismatch("document was produced for a different instance")
    cert = doc["certificate"]
    mode = cert["mode"]
    if cert["kind"] == "packing":
        cycles = tuple(Cycle(tuple(Arc(*a) for a in arcs)) for arcs in cert["cycles"])
        check_packing(G, Packing(cycles, mode, False))
        if "k" in doc and len(cycles) < doc["k"]:
            raise CertificateMismatch(f"gate packing has fewer than {doc['k']} cycles")
    elif cert["kind"] == "cover":
        elements = [Arc(*e) for e in cert["elements"]] if mode == "arc" else cert["elements"]
        check_hitting_set(G, HittingSet(tuple(elements), mode, False, 0))
    else:
        raise CertificateMismatch(f"unknown certificate kind {cert['kind']!r}")
