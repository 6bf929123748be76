from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from fmsync.continuum import Direction, Point, SemiDirection

type KindId = str
type KindTable = Mapping[KindId, Fraction]


@dataclass(frozen=True, slots=True)
class Signal:
    kind: KindId
    dir: SemiDirection
    datum: Hashable = None

    def __str__(self) -> str:
        if self.datum is None:
            return f"{self.kind}({self.dir})"
        return f"{self.kind}({self.dir}, {self.datum})"


type SignalSet = frozenset[Signal]
type Configuration = Mapping[Point, SignalSet]

type EdgeHandler = Callable[[SignalSet], SignalSet]
type VertexHandler = Callable[[frozenset[Direction], SignalSet], SignalSet]


def make_configuration(items: Iterable[tuple[Point, Iterable[Signal]]]) -> dict[Point, SignalSet]:
    """Merge signals per point, dropping points left without signals."""
    merged: dict[Point, set[Signal]] = {}
    for point, signals in items:
        merged.setdefault(point, set()).update(signals)
    return {p: frozenset(s) for p, s in merged.items() if s}


def signal_count(c: Configuration) -> int:
    return sum(len(s) for s in c.values())


@dataclass(frozen=True, slots=True, kw_only=True)
class MachineDef:
    """Speeds of all kinds plus the edge and vertex transition functions."""

    name: str
    speeds: KindTable
    delta_e: EdgeHandler
    delta_v: VertexHandler

    def speed(self, kind: KindId) -> Fraction:
        return self.speeds[kind]

    def is_moving(self, s: Signal) -> bool:
        return self.speeds[s.kind] > 0


class Site(Enum):
    VERTEX = "vertex"
    EDGE = "edge"


@dataclass(frozen=True, slots=True, kw_only=True)
class EventEntry:
    point: Point
    consumed: SignalSet
    produced: SignalSet
    site: Site


@dataclass(frozen=True, slots=True, kw_only=True)
class EventBatch:
    time: Fraction
    entries: tuple[EventEntry, ...]


class Outcome(Enum):
    QUIESCENT = "quiescent"
    HORIZON = "horizon"
    BUDGET = "budget"


@dataclass(frozen=True, slots=True, kw_only=True)
class Trace:
    events: tuple[EventBatch, ...]
    final: Configuration
    outcome: Outcome
    end_time: Fraction
