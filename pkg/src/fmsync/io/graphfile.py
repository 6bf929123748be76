"""Plain-text graph files.

One declaration per line; ``#`` starts a comment::

    vertex a
    edge e1 a b 3/2
    general a

Vertices named by edges need no ``vertex`` line. Exactly one ``general`` is required.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from fmsync.exception import GraphParseError
from fmsync.graph import EdgeId, Multigraph, VertexId, validate
from fmsync.utils.rational import parse_rational_loose


def parse_graph(text: str) -> tuple[Multigraph, VertexId]:
    vertices: list[VertexId] = []
    edges: dict[EdgeId, tuple[EdgeId, VertexId, VertexId, Fraction]] = {}
    general: VertexId | None = None
    lines = text.splitlines()

    for number, raw in enumerate(lines, start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        match words:
            case ["vertex", vertex]:
                vertices.append(vertex)
            case ["edge", edge_id, u, w, weight_text]:
                if edge_id in edges:
                    raise GraphParseError(number, f"duplicate edge {edge_id}")
                if u == w:
                    raise GraphParseError(number, f"edge {edge_id} is a self-loop")
                try:
                    weight = parse_rational_loose(weight_text)
                except ValueError as e:
                    raise GraphParseError(number, str(e)) from e
                if weight <= 0:
                    raise GraphParseError(number, f"edge {edge_id} has non-positive weight")
                edges[edge_id] = (edge_id, u, w, weight)
                vertices += [u, w]
            case ["general", vertex]:
                if general is not None:
                    raise GraphParseError(number, "general declared twice")
                general = vertex
            case [keyword, *_]:
                raise GraphParseError(number, f"cannot parse {keyword!r} declaration")

    if general is None:
        raise GraphParseError(len(lines), "missing general declaration")
    if general not in vertices:
        raise GraphParseError(len(lines), f"general {general} is not a vertex")
    g = Multigraph.create(vertices, edges.values())
    validate(g)
    return g, general


def read_graph(path: Path) -> tuple[Multigraph, VertexId]:
    return parse_graph(path.read_text(encoding="utf-8"))