"""Weighted undirected multigraphs, paths over them and their metric quantities."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

import networkx as nx

from fmsync.exception import (
    Disconnected,
    NonPositiveWeight,
    NotAPath,
    NotDirectionPreserving,
    SelfLoop,
    SourceTargetMismatch,
    Trivial,
    UnknownVertex,
)

type VertexId = str
type EdgeId = str


@dataclass(frozen=True, slots=True, kw_only=True)
class Edge:
    """An edge with its designated source (the smaller endpoint id) and target."""

    id: EdgeId
    source: VertexId
    target: VertexId
    weight: Fraction

    def other(self, vertex: VertexId) -> VertexId:
        if vertex == self.source:
            return self.target
        if vertex == self.target:
            return self.source
        raise UnknownVertex(vertex)


@dataclass(frozen=True, slots=True, kw_only=True)
class DirectedEdge:
    source: VertexId
    bed: EdgeId
    target: VertexId


@dataclass(frozen=True, slots=True, kw_only=True)
class Multigraph:
    vertices: tuple[VertexId, ...]
    edges: tuple[Edge, ...]
    _by_id: Mapping[EdgeId, Edge] = field(repr=False, compare=False, hash=False)
    _incident: Mapping[VertexId, tuple[EdgeId, ...]] = field(
        repr=False, compare=False, hash=False
    )
    _nx: nx.MultiGraph = field(repr=False, compare=False, hash=False)
    _distances: dict[VertexId, dict[VertexId, Fraction]] = field(
        default_factory=dict, repr=False, compare=False, hash=False
    )

    @staticmethod
    def create(
        vertices: Iterable[VertexId],
        edges: Iterable[tuple[EdgeId, VertexId, VertexId, Fraction | int | str]],
    ) -> Multigraph:
        """Build a multigraph; call `validate` before simulating on it."""
        vertex_ids = tuple(sorted(set(vertices)))
        records: list[Edge] = []
        for edge_id, u, w, weight in edges:
            source, target = sorted((u, w))
            records.append(Edge(id=edge_id, source=source, target=target, weight=Fraction(weight)))
        records.sort(key=lambda e: e.id)

        incident: dict[VertexId, list[EdgeId]] = {v: [] for v in vertex_ids}
        graph = nx.MultiGraph()
        graph.add_nodes_from(vertex_ids)
        for edge in records:
            for end in {edge.source, edge.target}:
                incident.setdefault(end, []).append(edge.id)
            graph.add_edge(edge.source, edge.target, key=edge.id, weight=edge.weight)

        return Multigraph(
            vertices=vertex_ids,
            edges=tuple(records),
            _by_id=MappingProxyType({e.id: e for e in records}),
            _incident=MappingProxyType({v: tuple(ids) for v, ids in incident.items()}),
            _nx=graph,
        )

    def edge(self, edge_id: EdgeId) -> Edge:
        return self._by_id[edge_id]

    def has_edge(self, edge_id: EdgeId) -> bool:
        return edge_id in self._by_id

    def has_vertex(self, vertex: VertexId) -> bool:
        return vertex in self._incident

    def incident(self, vertex: VertexId) -> tuple[EdgeId, ...]:
        """Edges touching `vertex`, sorted by id."""
        if vertex not in self._incident:
            raise UnknownVertex(vertex)
        return self._incident[vertex]

    def is_tree(self) -> bool:
        return nx.is_tree(self._nx)

    def distances_from(self, vertex: VertexId) -> Mapping[VertexId, Fraction]:
        if not self.has_vertex(vertex):
            raise UnknownVertex(vertex)
        if vertex not in self._distances:
            # A walk that turns around on an edge is longer by twice that edge's positive
            # weight, so the plain shortest walk is also the shortest direction-preserving one.
            lengths = nx.single_source_dijkstra_path_length(self._nx, vertex, weight="weight")
            self._distances[vertex] = {v: Fraction(d) for v, d in lengths.items()}
        return self._distances[vertex]


@dataclass(frozen=True, slots=True)
class Path:
    """Alternating vertex/edge sequence; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`."""

    vertices: tuple[VertexId, ...]
    edges: tuple[EdgeId, ...] = ()

    @staticmethod
    def empty(vertex: VertexId) -> Path:
        return Path((vertex,))

    @property
    def source(self) -> VertexId:
        return self.vertices[0]

    @property
    def target(self) -> VertexId:
        return self.vertices[-1]

    @property
    def is_empty(self) -> bool:
        return not self.edges

    @property
    def is_direction_preserving(self) -> bool:
        return all(a != b for a, b in zip(self.edges, self.edges[1:], strict=False))

    def directed_edges(self) -> list[DirectedEdge]:
        return [
            DirectedEdge(source=self.vertices[i], bed=e, target=self.vertices[i + 1])
            for i, e in enumerate(self.edges)
        ]


@dataclass(frozen=True, slots=True, kw_only=True)
class MetricSummary:
    general: VertexId
    radius: Fraction
    diameter: Fraction


def validate(g: Multigraph) -> None:
    if not g.edges:
        raise Trivial("Graph has no edges")
    for edge in g.edges:
        for end in (edge.source, edge.target):
            if not g.has_vertex(end) or end not in g.vertices:
                raise UnknownVertex(end)
        if edge.source == edge.target:
            raise SelfLoop(edge.id)
        if edge.weight <= 0:
            raise NonPositiveWeight(edge.id, edge.weight)
    if not nx.is_connected(g._nx):
        raise Disconnected("Graph is not connected")


def check_path(g: Multigraph, p: Path) -> None:
    if not p.vertices or len(p.vertices) != len(p.edges) + 1:
        raise NotAPath(f"Malformed path: {p}")
    if not g.has_vertex(p.source):
        raise NotAPath(f"Unknown vertex {p.source} in path")
    for step in p.directed_edges():
        if not g.has_edge(step.bed):
            raise NotAPath(f"Unknown edge {step.bed} in path")
        edge = g.edge(step.bed)
        if {step.source, step.target} != {edge.source, edge.target}:
            raise NotAPath(f"Edge {step.bed} does not join {step.source} and {step.target}")


def weight(g: Multigraph, p: Path) -> Fraction:
    check_path(g, p)
    return sum((g.edge(e).weight for e in p.edges), Fraction(0))


def concat(p: Path, q: Path) -> Path:
    if p.target != q.source:
        raise SourceTargetMismatch(f"Path ends at {p.target} but next starts at {q.source}")
    return Path(p.vertices + q.vertices[1:], p.edges + q.edges)


def invert(p: Path) -> Path:
    return Path(p.vertices[::-1], p.edges[::-1])


def require_direction_preserving(p: Path) -> None:
    if p.is_empty or not p.is_direction_preserving:
        raise NotDirectionPreserving(f"Not a non-empty direction-preserving path: {p}")


def vertex_distance(g: Multigraph, v: VertexId, w: VertexId) -> Fraction:
    if not g.has_vertex(w):
        raise UnknownVertex(w)
    return g.distances_from(v)[w]


def continuum_eccentricity(g: Multigraph, vertex: VertexId) -> Fraction:
    """Largest distance from `vertex` to any point, edge interiors included."""
    dist = g.distances_from(vertex)
    # |d(s,u) - d(s,w)| <= w(e), so the interior maximum dominates both endpoints.
    return max((dist[e.source] + dist[e.target] + e.weight) / 2 for e in g.edges)


def _pair_sup(g: Multigraph, e: Edge, f: Edge) -> Fraction:
    if e.id == f.id:
        return (vertex_distance(g, e.source, e.target) + e.weight) / 2
    da, db = g.distances_from(e.source), g.distances_from(e.target)
    c, d, w = f.source, f.target, f.weight

    def to_point(dist: Mapping[VertexId, Fraction], y: Fraction) -> Fraction:
        return min(dist[c] + y, dist[d] + w - y)

    candidates = {Fraction(0), w}
    for dist in (da, db):
        y = (dist[d] + w - dist[c]) / 2
        candidates.add(min(max(y, Fraction(0)), w))
    return max((to_point(da, y) + to_point(db, y) + e.weight) / 2 for y in candidates)


def continuum_diameter(g: Multigraph) -> Fraction:
    return max(_pair_sup(g, e, f) for e in g.edges for f in g.edges)


def metric_summary(g: Multigraph, general: VertexId) -> MetricSummary:
    if not g.has_vertex(general):
        raise UnknownVertex(general)
    return MetricSummary(
        general=general,
        radius=continuum_eccentricity(g, general),
        diameter=continuum_diameter(g),
    )
