from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from fmsync.continuum import AtVertex, Direction, OnEdge, Point
from fmsync.engine.signal import Trace
from fmsync.fssp import kinds as k
from fmsync.graph import EdgeId, Multigraph, VertexId
from fmsync.utils.logging import logger

type Cut = tuple[Point, Direction]


def leaf_cuts(trace: Trace) -> list[Cut]:
    """Points where leaf signals were created, with the direction each one cuts off."""
    found: set[Cut] = set()
    for batch in trace.events:
        for entry in batch.entries:
            for s in entry.produced:
                if s.kind == k.L and isinstance(s.datum, Direction):
                    found.add((entry.point, s.datum))
    return sorted(found, key=lambda cut: (str(cut[0]), cut[1]))


def virtual_tree(g: Multigraph, trace: Trace) -> Multigraph:
    """The graph obtained by cutting `g` wherever the trace created leaf signals.

    An edge cut inside becomes two pendant pieces; a vertex cut detaches the end of the cut
    edge into a fresh leaf. Vertices left without edges disappear.
    """
    cuts = leaf_cuts(trace)
    if not cuts:
        return g

    inner: dict[EdgeId, set[Fraction]] = defaultdict(set)
    detached: set[tuple[VertexId, EdgeId]] = set()
    for point, d in cuts:
        match point:
            case OnEdge(edge=e, offset=x):
                inner[e].add(x)
            case AtVertex(vertex=v):
                detached.add((v, d.edge))

    def end(v: VertexId, e: EdgeId) -> VertexId:
        return f"{v}|{e}" if (v, e) in detached else v

    edges: list[tuple[EdgeId, VertexId, VertexId, Fraction]] = []
    for edge in g.edges:
        source, target = end(edge.source, edge.id), end(edge.target, edge.id)
        offsets = sorted(inner.get(edge.id, ()))
        if not offsets:
            edges.append((edge.id, source, target, edge.weight))
            continue
        stops = [Fraction(0), *offsets, edge.weight]
        ends = [source]
        for x in offsets:
            ends += [f"{edge.id}<{x}", f"{edge.id}>{x}"]
        ends.append(target)
        for i in range(len(stops) - 1):
            piece = (f"{edge.id}#{i}", ends[2 * i], ends[2 * i + 1], stops[i + 1] - stops[i])
            edges.append(piece)

    vertices = {v for _, a, b, _ in edges for v in (a, b)}
    logger.debug(
        "Virtual tree with {cuts} cuts and {edges} edges", cuts=len(cuts), edges=len(edges)
    )
    return Multigraph.create(vertices, edges)


def is_tree(g: Multigraph) -> bool:
    return g.is_tree()
