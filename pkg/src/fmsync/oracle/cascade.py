"""Closed-form positions of the boundaries the divide cascade leaves on an edge.

A part of length ``L`` receiving divide types ``0 .. t - 1`` from its origin end gets a
boundary at ``L * (2/3)**j`` for ``j = 1 .. t - 1``; the part between the boundaries
``j`` and ``j - 1`` is divided again by the ``j`` types sent on from boundary ``j``.
"""

from __future__ import annotations

from fractions import Fraction

from fmsync.continuum import AtVertex, Point, make_point
from fmsync.fssp.kinds import RATIO
from fmsync.graph import EdgeId, Multigraph, VertexId, vertex_distance


def division_positions(length: Fraction, depth: int) -> list[Fraction]:
    """Boundaries of the primary cascade, as distances from the origin end."""
    if length <= 0:
        raise ValueError(f"Length must be positive, got {length}")
    return [length * RATIO**n for n in range(1, depth + 1)]


def cascade_positions(length: Fraction, depth: int) -> list[Fraction]:
    """Every point where a fire signal appears on an edge, the origin end included."""
    if length <= 0:
        raise ValueError(f"Length must be positive, got {length}")
    found: set[Fraction] = {Fraction(0)}

    def split(origin: Fraction, size: Fraction, types: int) -> None:
        for j in range(1, types):
            boundary = origin + size * RATIO**j
            found.add(boundary)
            split(boundary, size * RATIO ** (j - 1) - size * RATIO**j, j)

    split(Fraction(0), length, depth + 1)
    return sorted(found)


def origin_end(g: Multigraph, general: VertexId, edge_id: EdgeId) -> VertexId:
    edge = g.edge(edge_id)
    if vertex_distance(g, general, edge.target) < vertex_distance(g, general, edge.source):
        return edge.target
    return edge.source


def fire_positions(g: Multigraph, general: VertexId, depth: int) -> dict[EdgeId, frozenset[Point]]:
    """Fire points per edge of a tree when the general starts with divide types 0..depth."""
    positions: dict[EdgeId, frozenset[Point]] = {}
    for edge in g.edges:
        forward = origin_end(g, general, edge.id) == edge.source
        points: set[Point] = set()
        for x in cascade_positions(edge.weight, depth):
            offset = x if forward else edge.weight - x
            points.add(make_point(g, edge.id, offset))
        positions[edge.id] = frozenset(points)
    return positions


def all_fire_points(g: Multigraph, general: VertexId, depth: int) -> frozenset[Point]:
    points = set().union(*fire_positions(g, general, depth).values())
    points.add(AtVertex(general))
    return frozenset(points)
