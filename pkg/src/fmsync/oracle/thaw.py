"""The graph along which thaw signals spread from the midpoints of the longest paths.

Nodes are undirected direction-preserving paths (empty paths included). Each path points
at the heaviest lighter paths with its source whose midpoint lies on it, and likewise at
those with its target; an edge is weighted by the distance between the two midpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from fmsync.continuum import AtVertex, OnEdge, Point, point_distance
from fmsync.exception import OracleError, ReachabilityFailure, WeightMismatch
from fmsync.graph import Multigraph, Path, weight
from fmsync.oracle.paths import PathKey, enumerate_paths, path_key, path_midpoint
from fmsync.utils.logging import logger


@dataclass(frozen=True, slots=True, kw_only=True)
class ThawGraph:
    graph: nx.DiGraph
    max_weight: Fraction

    def classes(self) -> list[PathKey]:
        return sorted(self.graph.nodes)

    def path(self, key: PathKey) -> Path:
        return self.graph.nodes[key]["path"]

    def weight_of(self, key: PathKey) -> Fraction:
        return self.graph.nodes[key]["weight"]

    def maximum_classes(self) -> list[PathKey]:
        return [key for key in self.classes() if self.weight_of(key) == self.max_weight]


@dataclass(frozen=True, slots=True, kw_only=True)
class ThawSummary:
    classes: int
    edges: int
    max_weight: Fraction
    reachable: int


def midpoint_of(g: Multigraph, p: Path) -> Point:
    return AtVertex(p.source) if p.is_empty else path_midpoint(g, p)


def lies_on(p: Path, point: Point) -> bool:
    """Closed membership: a vertex is on `p` iff `p` visits it."""
    match point:
        case AtVertex(vertex=v):
            return v in p.vertices
        case OnEdge(edge=e):
            return e in p.edges


def thaw_graph(g: Multigraph) -> ThawGraph:
    if not g.is_tree():
        raise OracleError("The thaw graph is only defined on trees")
    paths = enumerate_paths(g) + [Path.empty(v) for v in g.vertices]
    weights = {p: weight(g, p) for p in paths}
    midpoints = {p: midpoint_of(g, p) for p in paths}

    graph = nx.DiGraph()
    for p in paths:
        graph.add_node(path_key(p), path=p, weight=weights[p])

    for p in paths:
        if p.is_empty:
            continue
        candidates = [q for q in paths if weights[q] < weights[p] and lies_on(p, midpoints[q])]
        # the sharing-source and sharing-target sets each get their own heaviest members
        for lighter in (
            [q for q in candidates if q.source == p.source],
            [q for q in candidates if q.target == p.target],
        ):
            top = max(weights[q] for q in lighter)
            for q in lighter:
                if weights[q] == top:
                    distance = point_distance(g, midpoints[p], midpoints[q])
                    graph.add_edge(path_key(p), path_key(q), weight=distance)

    max_weight = max(weights.values())
    logger.debug(
        "Thaw graph with {nodes} classes and {edges} edges",
        nodes=graph.number_of_nodes(),
        edges=graph.number_of_edges(),
    )
    return ThawGraph(graph=graph, max_weight=max_weight)


def thaw_path_weight_check(tg: ThawGraph) -> ThawSummary:
    """Every class reachable from a maximum-weight class must be reached after ``d/2 - w/2``
    along every route, and every edge and vertex class must be reachable."""
    graph = tg.graph
    if not nx.is_directed_acyclic_graph(graph):
        raise OracleError("Thaw graph has a cycle")
    tops = tg.maximum_classes()
    for key in tops:
        if graph.in_degree(key) != 0:
            raise OracleError(f"Maximum-weight class {key} has incoming edges")

    for a, b, distance in graph.edges(data="weight"):
        expected = tg.weight_of(a) / 2 - tg.weight_of(b) / 2
        if distance != expected:
            raise WeightMismatch(f"Edge {a} -> {b} has weight {distance}, expected {expected}")

    lowest: dict[PathKey, Fraction] = {key: Fraction(0) for key in tops}
    highest: dict[PathKey, Fraction] = dict(lowest)
    for key in nx.topological_sort(graph):
        if key not in lowest:
            continue
        for _, nxt, distance in graph.out_edges(key, data="weight"):
            lo, hi = lowest[key] + distance, highest[key] + distance
            lowest[nxt] = min(lowest.get(nxt, lo), lo)
            highest[nxt] = max(highest.get(nxt, hi), hi)

    for key in lowest:
        expected = tg.max_weight / 2 - tg.weight_of(key) / 2
        if lowest[key] != expected or highest[key] != expected:
            raise WeightMismatch(
                f"Routes to {key} weigh {lowest[key]}..{highest[key]}, expected {expected}"
            )

    for key in tg.classes():
        if len(tg.path(key).edges) <= 1 and key not in lowest:
            raise ReachabilityFailure(f"Class {key} is not reachable from a longest path")

    return ThawSummary(
        classes=graph.number_of_nodes(),
        edges=graph.number_of_edges(),
        max_weight=tg.max_weight,
        reachable=len(lowest),
    )
