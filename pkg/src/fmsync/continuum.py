"""Points, directions and motion on the continuum representation of a multigraph.

Each edge is the closed interval ``[0, weight]`` measured from its source endpoint; the
endpoints themselves are always represented as `AtVertex`, so a point has exactly one
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from fmsync.exception import BadDirection
from fmsync.graph import EdgeId, Multigraph, VertexId, vertex_distance


@dataclass(frozen=True, slots=True, order=True)
class Direction:
    edge: EdgeId
    orientation: int

    def __post_init__(self) -> None:
        if self.orientation not in (1, -1):
            raise BadDirection(f"Orientation must be +1 or -1, got {self.orientation}")

    def reversed(self) -> Direction:
        return Direction(self.edge, -self.orientation)

    def __neg__(self) -> Direction:
        return self.reversed()

    def __str__(self) -> str:
        return f"{'+' if self.orientation > 0 else '-'}{self.edge}"


class Every(Enum):
    """The semi-direction of stationary signals."""

    EVERY = "every"

    def __str__(self) -> str:
        return "every"


EVERY = Every.EVERY

type SemiDirection = Direction | Every


@dataclass(frozen=True, slots=True, order=True)
class AtVertex:
    vertex: VertexId

    def __str__(self) -> str:
        return self.vertex


@dataclass(frozen=True, slots=True, order=True)
class OnEdge:
    edge: EdgeId
    offset: Fraction

    def __str__(self) -> str:
        return f"{self.edge}@{self.offset}"


type Point = AtVertex | OnEdge


def point_key(p: Point) -> tuple[int, str, Fraction]:
    """Total order on points: vertices first, then edge interiors by (edge, offset)."""
    match p:
        case AtVertex(vertex=v):
            return (0, v, Fraction(0))
        case OnEdge(edge=e, offset=x):
            return (1, e, x)


@dataclass(frozen=True, slots=True)
class Arrow:
    magnitude: Fraction
    direction: SemiDirection

    def __post_init__(self) -> None:
        if self.magnitude < 0 or (self.magnitude == 0) != (self.direction is EVERY):
            raise ValueError(f"Inconsistent arrow: {self.magnitude} {self.direction}")


def scalar_mul(a: Arrow, t: Fraction) -> Arrow:
    if t == 0 or a.magnitude == 0:
        return Arrow(Fraction(0), EVERY)
    return Arrow(a.magnitude * t, a.direction)


def orientation(g: Multigraph) -> dict[EdgeId, tuple[VertexId, VertexId]]:
    return {e.id: (e.source, e.target) for e in g.edges}


def reverse(d: Direction) -> Direction:
    return d.reversed()


def heading_vertex(g: Multigraph, d: Direction) -> VertexId:
    """The endpoint that a signal moving in direction `d` approaches."""
    edge = g.edge(d.edge)
    return edge.target if d.orientation > 0 else edge.source


def leaving_vertex(g: Multigraph, d: Direction) -> VertexId:
    return heading_vertex(g, d.reversed())


def outgoing(g: Multigraph, vertex: VertexId, edge_id: EdgeId) -> Direction:
    """The direction on `edge_id` pointing away from `vertex`."""
    return Direction(edge_id, 1 if g.edge(edge_id).source == vertex else -1)


def dirs(g: Multigraph, p: Point) -> frozenset[Direction]:
    match p:
        case OnEdge(edge=e):
            return frozenset({Direction(e, 1), Direction(e, -1)})
        case AtVertex(vertex=v):
            return frozenset(outgoing(g, v, e) for e in g.incident(v))


def make_point(g: Multigraph, edge_id: EdgeId, offset: Fraction) -> Point:
    edge = g.edge(edge_id)
    if offset == 0:
        return AtVertex(edge.source)
    if offset == edge.weight:
        return AtVertex(edge.target)
    if not 0 < offset < edge.weight:
        raise ValueError(f"Offset {offset} outside edge {edge_id}")
    return OnEdge(edge_id, offset)


def offset_on(g: Multigraph, p: Point, edge_id: EdgeId) -> Fraction:
    """Offset of `p` along `edge_id`; a vertex maps to 0 or the edge weight."""
    edge = g.edge(edge_id)
    match p:
        case OnEdge(edge=e, offset=x) if e == edge_id:
            return x
        case AtVertex(vertex=v) if v == edge.source:
            return Fraction(0)
        case AtVertex(vertex=v) if v == edge.target:
            return edge.weight
    raise BadDirection(f"Point {p} is not on edge {edge_id}")


@dataclass(frozen=True, slots=True)
class Interior:
    point: Point
    direction: Direction


@dataclass(frozen=True, slots=True)
class HitVertex:
    vertex: VertexId
    consumed: Fraction
    arrival: Direction


type MoveOutcome = Interior | HitVertex


def advance(g: Multigraph, p: Point, d: Direction, dist: Fraction) -> MoveOutcome:
    """Move from `p` along `d` by at most `dist`, stopping at the first endpoint reached."""
    if dist < 0:
        raise ValueError(f"Negative distance {dist}")
    match p:
        case AtVertex():
            if d not in dirs(g, p):
                raise BadDirection(f"Direction {d} does not leave vertex {p}")
        case OnEdge(edge=e):
            if d.edge != e:
                raise BadDirection(f"Direction {d} is not on edge {e}")
    if dist == 0:
        return Interior(p, d)

    edge = g.edge(d.edge)
    start = offset_on(g, p, d.edge)
    room = edge.weight - start if d.orientation > 0 else start
    if dist >= room:
        return HitVertex(heading_vertex(g, d), room, d)
    return Interior(OnEdge(d.edge, start + d.orientation * dist), d)


def reach(g: Multigraph, p: Point, a: Arrow) -> set[tuple[Point, SemiDirection]]:
    """Ends of all direction-preserving walks of length ``a.magnitude`` leaving `p` along ``a``."""
    if a.magnitude == 0:
        return {(p, EVERY)}
    assert isinstance(a.direction, Direction)
    found: set[tuple[Point, SemiDirection]] = set()

    def walk(point: Point, d: Direction, remaining: Fraction) -> None:
        match advance(g, point, d, remaining):
            case Interior(point=q, direction=heading):
                found.add((q, heading))
            case HitVertex(vertex=v, consumed=used, arrival=arrival):
                left = remaining - used
                if left == 0:
                    found.add((AtVertex(v), arrival))
                    return
                back = arrival.reversed()
                for nxt in sorted(dirs(g, AtVertex(v))):
                    if nxt != back:
                        walk(AtVertex(v), nxt, left)

    walk(p, a.direction, a.magnitude)
    return found


def _exits(g: Multigraph, p: Point) -> list[tuple[VertexId, Fraction]]:
    match p:
        case AtVertex(vertex=v):
            return [(v, Fraction(0))]
        case OnEdge(edge=e, offset=x):
            edge = g.edge(e)
            return [(edge.source, x), (edge.target, edge.weight - x)]


def point_distance(g: Multigraph, p: Point, q: Point) -> Fraction:
    if p == q:
        return Fraction(0)
    best = min(
        cp + vertex_distance(g, u, w) + cq for u, cp in _exits(g, p) for w, cq in _exits(g, q)
    )
    match p, q:
        case OnEdge(edge=e1, offset=x), OnEdge(edge=e2, offset=y) if e1 == e2:
            best = min(best, abs(x - y))
    return best
