"""JSON trace documents.

Rationals are written as ``num/den`` strings in lowest terms so that documents compare
exactly. Events are flattened to one record per event point; records of one batch share
their time and appear in point order.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Hashable, Iterable
from fractions import Fraction
from itertools import groupby
from pathlib import Path
from typing import Annotated, Literal, Self

from pydantic import AfterValidator, BaseModel, Field, JsonValue, ValidationError, model_validator

from fmsync.continuum import EVERY, AtVertex, Direction, OnEdge, Point, point_key
from fmsync.engine.signal import (
    Configuration,
    EventBatch,
    EventEntry,
    MachineDef,
    Outcome,
    Signal,
    SignalSet,
    Site,
    Trace,
)
from fmsync.exception import TraceFormatError
from fmsync.graph import Multigraph, VertexId
from fmsync.utils.logging import logger
from fmsync.utils.rational import format_rational, parse_rational


def _strict_rational(text: str) -> str:
    parse_rational(text)
    return text


RationalText = Annotated[str, AfterValidator(_strict_rational)]


class DirectionModel(BaseModel):
    edge: str
    orientation: Literal[1, -1]


class PointModel(BaseModel):
    vertex: str | None = None
    edge: str | None = None
    offset: RationalText | None = None

    @model_validator(mode="after")
    def validate_point(self) -> Self:
        if (self.vertex is None) == (self.edge is None):
            raise ValueError("A point names either a vertex or an edge")
        if (self.edge is None) != (self.offset is None):
            raise ValueError("An edge point needs an offset")
        return self


class SignalModel(BaseModel):
    kind: str
    dir: DirectionModel | None = Field(default=None, description="None for stationary signals")
    datum: JsonValue = None


class EventModel(BaseModel):
    time: RationalText
    point: PointModel
    site: Literal["vertex", "edge"]
    consumed: list[SignalModel]
    produced: list[SignalModel]


class PlacedSignals(BaseModel):
    point: PointModel
    signals: list[SignalModel]


class EdgeModel(BaseModel):
    id: str
    source: str
    target: str
    weight: RationalText


class TraceHeader(BaseModel):
    graph_digest: str
    general: str
    depth_cap: int
    machine: str
    edges: list[EdgeModel]
    speeds: dict[str, RationalText]
    outcome: Literal["quiescent", "horizon", "budget"]
    end_time: RationalText


class TraceDocument(BaseModel):
    header: TraceHeader
    initial: list[PlacedSignals]
    events: list[EventModel]
    final: list[PlacedSignals]

    @model_validator(mode="after")
    def validate_document(self) -> Self:
        times = [parse_rational(e.time) for e in self.events]
        if any(b < a for a, b in zip(times, times[1:], strict=False)):
            raise ValueError("Event times must not decrease")
        return self


def encode_datum(datum: Hashable) -> JsonValue:
    match datum:
        case None | bool():
            return datum
        case Direction(edge=e, orientation=o):
            return {"edge": e, "orientation": o}
        case tuple():
            return {"seq": [encode_datum(x) for x in datum]}
        case frozenset():
            items = [encode_datum(x) for x in datum]
            return {"set": sorted(items, key=lambda x: json.dumps(x, sort_keys=True))}
    raise TraceFormatError(f"Cannot encode datum {datum!r}")


def decode_datum(value: JsonValue) -> Hashable:
    match value:
        case None | bool():
            return value
        case {"edge": str() as e, "orientation": 1 | -1 as o}:
            return Direction(e, o)
        case {"seq": list() as items}:
            return tuple(decode_datum(x) for x in items)
        case {"set": list() as items}:
            return frozenset(decode_datum(x) for x in items)
    raise TraceFormatError(f"Cannot decode datum {value!r}")


def encode_point(p: Point) -> PointModel:
    match p:
        case AtVertex(vertex=v):
            return PointModel(vertex=v)
        case OnEdge(edge=e, offset=x):
            return PointModel(edge=e, offset=format_rational(x))


def decode_point(model: PointModel) -> Point:
    if model.vertex is not None:
        return AtVertex(model.vertex)
    assert model.edge is not None and model.offset is not None
    return OnEdge(model.edge, parse_rational(model.offset))


def _signal_sort_key(model: SignalModel) -> str:
    return model.model_dump_json()


def encode_signals(signals: Iterable[Signal]) -> list[SignalModel]:
    models = []
    for s in signals:
        direction = (
            DirectionModel(edge=s.dir.edge, orientation=s.dir.orientation)
            if isinstance(s.dir, Direction)
            else None
        )
        models.append(SignalModel(kind=s.kind, dir=direction, datum=encode_datum(s.datum)))
    return sorted(models, key=_signal_sort_key)


def decode_signals(models: Iterable[SignalModel]) -> SignalSet:
    signals = set()
    for m in models:
        direction = EVERY if m.dir is None else Direction(m.dir.edge, m.dir.orientation)
        signals.add(Signal(m.kind, direction, decode_datum(m.datum)))
    return frozenset(signals)


def encode_configuration(c: Configuration) -> list[PlacedSignals]:
    return [
        PlacedSignals(point=encode_point(p), signals=encode_signals(c[p]))
        for p in sorted(c, key=point_key)
    ]


def decode_configuration(placed: Iterable[PlacedSignals]) -> dict[Point, SignalSet]:
    return {decode_point(p.point): decode_signals(p.signals) for p in placed}


def graph_digest(g: Multigraph, general: VertexId) -> str:
    canonical = {
        "vertices": list(g.vertices),
        "edges": [[e.id, e.source, e.target, format_rational(e.weight)] for e in g.edges],
        "general": general,
    }
    return hashlib.sha256(json.dumps(canonical, sort_keys=True).encode()).hexdigest()


def write_trace(
    trace: Trace,
    *,
    graph: Multigraph,
    general: VertexId,
    depth_cap: int,
    machine: MachineDef,
    initial: Configuration,
) -> TraceDocument:
    events = [
        EventModel(
            time=format_rational(batch.time),
            point=encode_point(entry.point),
            site=entry.site.value,
            consumed=encode_signals(entry.consumed),
            produced=encode_signals(entry.produced),
        )
        for batch in trace.events
        for entry in sorted(batch.entries, key=lambda e: point_key(e.point))
    ]
    header = TraceHeader(
        graph_digest=graph_digest(graph, general),
        general=general,
        depth_cap=depth_cap,
        machine=machine.name,
        edges=[
            EdgeModel(
                id=e.id, source=e.source, target=e.target, weight=format_rational(e.weight)
            )
            for e in graph.edges
        ],
        speeds={kind: format_rational(v) for kind, v in sorted(machine.speeds.items())},
        outcome=trace.outcome.value,
        end_time=format_rational(trace.end_time),
    )
    return TraceDocument(
        header=header,
        initial=encode_configuration(initial),
        events=events,
        final=encode_configuration(trace.final),
    )


def read_trace(doc: TraceDocument) -> Trace:
    batches: list[EventBatch] = []
    for time, records in groupby(doc.events, key=lambda e: e.time):
        entries = tuple(
            EventEntry(
                point=decode_point(r.point),
                consumed=decode_signals(r.consumed),
                produced=decode_signals(r.produced),
                site=Site(r.site),
            )
            for r in records
        )
        batches.append(EventBatch(time=parse_rational(time), entries=entries))
    return Trace(
        events=tuple(batches),
        final=decode_configuration(doc.final),
        outcome=Outcome(doc.header.outcome),
        end_time=parse_rational(doc.header.end_time),
    )


def trace_graph(doc: TraceDocument) -> Multigraph:
    edges = [(e.id, e.source, e.target, parse_rational(e.weight)) for e in doc.header.edges]
    vertices = {v for _, a, b, _ in edges for v in (a, b)}
    return Multigraph.create(vertices, edges)


def trace_initial(doc: TraceDocument) -> dict[Point, SignalSet]:
    return decode_configuration(doc.initial)


def trace_speeds(doc: TraceDocument) -> dict[str, Fraction]:
    return {kind: parse_rational(v) for kind, v in doc.header.speeds.items()}


def dump_trace(doc: TraceDocument) -> str:
    return doc.model_dump_json(indent=2) + "\n"


def trace_digest(doc: TraceDocument) -> str:
    return hashlib.sha256(dump_trace(doc).encode()).hexdigest()


def save_trace(doc: TraceDocument, path: Path) -> None:
    logger.debug("Saving trace to file: {file}", file=path)
    path.write_text(dump_trace(doc), encoding="utf-8")


def parse_trace(text: str) -> TraceDocument:
    try:
        return TraceDocument.model_validate_json(text)
    except ValidationError as e:
        raise TraceFormatError(f"Invalid trace document: {e}") from e


def load_trace(path: Path) -> TraceDocument:
    logger.debug("Loading trace from file: {file}", file=path)
    return parse_trace(path.read_text(encoding="utf-8"))
