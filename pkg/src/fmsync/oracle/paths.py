"""Direction-preserving paths and the times at which their midpoints are found."""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction

from fmsync.continuum import AtVertex, Direction, OnEdge, Point, dirs, heading_vertex, make_point
from fmsync.exception import OracleError
from fmsync.graph import (
    EdgeId,
    Multigraph,
    Path,
    VertexId,
    check_path,
    invert,
    metric_summary,
    require_direction_preserving,
    vertex_distance,
    weight,
)

type PathKey = tuple[tuple[VertexId, ...], tuple[EdgeId, ...]]


def path_key(p: Path) -> PathKey:
    """Key of the undirected path: the smaller of `p` and its inverse."""
    q = invert(p)
    return min((p.vertices, p.edges), (q.vertices, q.edges))


def default_hop_limit(g: Multigraph) -> int | None:
    return None if g.is_tree() else 2 * len(g.edges)


def enumerate_paths(g: Multigraph, hop_limit: int | None = None) -> list[Path]:
    """All non-empty direction-preserving paths, both orientations of each.

    Trees need no limit; on other graphs `hop_limit` defaults to twice the edge count.
    """
    limit = hop_limit if hop_limit is not None else default_hop_limit(g)
    found: list[Path] = []

    def extend(vertices: tuple[VertexId, ...], edges: tuple[EdgeId, ...]) -> None:
        if edges:
            found.append(Path(vertices, edges))
        if limit is not None and len(edges) >= limit:
            return
        here = vertices[-1]
        for edge_id in g.incident(here):
            if edges and edges[-1] == edge_id:
                continue
            extend((*vertices, g.edge(edge_id).other(here)), (*edges, edge_id))

    for v in g.vertices:
        extend((v,), ())
    return found


def midpoint_time(g: Multigraph, general: VertexId, p: Path) -> Fraction:
    require_direction_preserving(p)
    check_path(g, p)
    far = max(vertex_distance(g, general, p.source), vertex_distance(g, general, p.target))
    return far + weight(g, p) / 2


def path_midpoint(g: Multigraph, p: Path) -> Point:
    half = weight(g, p) / 2
    for step in p.directed_edges():
        edge = g.edge(step.bed)
        if half <= edge.weight:
            offset = half if step.source == edge.source else edge.weight - half
            return make_point(g, step.bed, offset)
        half -= edge.weight
    return AtVertex(p.source)


def max_weight_paths(g: Multigraph, paths: Iterable[Path]) -> tuple[Fraction, list[Path]]:
    weighted = [(weight(g, p), p) for p in paths]
    if not weighted:
        raise OracleError("Graph has no paths")
    top = max(w for w, _ in weighted)
    return top, [p for w, p in weighted if w == top]


def longest_midpoint(
    g: Multigraph, general: VertexId, hop_limit: int | None = None
) -> tuple[Point, Fraction]:
    """Common midpoint of all maximum-weight paths and the time it is found."""
    _, longest = max_weight_paths(g, enumerate_paths(g, hop_limit))
    points = {path_midpoint(g, p) for p in longest}
    if len(points) != 1:
        raise OracleError(f"Maximum-weight paths have {len(points)} different midpoints")
    summary = metric_summary(g, general)
    return points.pop(), summary.radius + summary.diameter / 2


def sync_time(g: Multigraph, general: VertexId) -> Fraction:
    summary = metric_summary(g, general)
    return summary.radius + summary.diameter


def _follow(
    g: Multigraph, start: Point, word: tuple[Direction, ...]
) -> tuple[list[VertexId], list[EdgeId]]:
    vertices: list[VertexId] = []
    edges: list[EdgeId] = []
    here = start
    for d in word:
        match here:
            case OnEdge(edge=e) if d.edge != e:
                raise OracleError(f"Direction {d} does not continue along edge {e}")
            case AtVertex() if d not in dirs(g, here):
                raise OracleError(f"Direction {d} does not leave vertex {here}")
        edges.append(d.edge)
        vertices.append(heading_vertex(g, d))
        here = AtVertex(vertices[-1])
    return vertices, edges


def decode_midpoint(g: Multigraph, point: Point, words: Iterable[tuple[Direction, ...]]) -> Path:
    """The path whose midpoint signal sits at `point` with the two given words."""
    first, second = sorted(words)
    if not first or not second:
        raise OracleError(f"Midpoint at {point} carries an empty word")
    v1, e1 = _follow(g, point, first)
    v2, e2 = _follow(g, point, second)
    match point:
        case AtVertex(vertex=v):
            p = Path((*reversed(v1), v, *v2), (*reversed(e1), *e2))
        case OnEdge(edge=e):
            if e1[0] != e or e2[0] != e:
                raise OracleError(f"Midpoint words at {point} leave edge {e}")
            p = Path((*reversed(v1), *v2), (*reversed(e1), *e2[1:]))
    check_path(g, p)
    require_direction_preserving(p)
    return p
