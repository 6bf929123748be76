from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from fmsync.continuum import EVERY, AtVertex, Direction, OnEdge, Point, dirs, point_key
from fmsync.engine import EventBudgetExhausted, HandlerDomainViolation, SingularityMinusOne
from fmsync.engine.kinetics import INFINITY, EventTime, drift_unchecked, next_event_time
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
from fmsync.graph import Multigraph
from fmsync.utils.logging import logger


class Quiescent(Enum):
    QUIESCENT = "quiescent"


QUIESCENT = Quiescent.QUIESCENT

type StepResult = tuple[Configuration, EventBatch] | Quiescent


@dataclass(frozen=True, slots=True, kw_only=True)
class RunLimits:
    max_events: int
    horizon: Fraction | None = None


def _check_produced(
    m: MachineDef, point: Point, legal: frozenset[Direction], out: SignalSet
) -> None:
    for s in out:
        if s.kind not in m.speeds:
            raise HandlerDomainViolation(f"Unknown kind {s.kind!r} produced at {point}")
        stationary = m.speed(s.kind) == 0
        if stationary != (s.dir is EVERY):
            raise HandlerDomainViolation(f"Signal {s} has a direction inconsistent with its speed")
        if not stationary and s.dir not in legal:
            raise HandlerDomainViolation(f"Signal {s} cannot leave {point}")


def _handle(
    g: Multigraph, m: MachineDef, c: Configuration, now: Fraction, t0: Fraction
) -> tuple[Configuration, EventBatch]:
    grouped: dict[Point, set[Signal]] = defaultdict(set)
    priors: dict[Point, set[Point]] = defaultdict(set)
    arrivals: set[Point] = set()
    for prior, point, s in drift_unchecked(g, m, c, t0):
        grouped[point].add(s)
        priors[point].add(prior)
        if isinstance(point, AtVertex) and m.is_moving(s):
            arrivals.add(point)

    after: dict[Point, SignalSet] = {}
    entries: list[EventEntry] = []
    for point in sorted(grouped, key=point_key):
        signals = frozenset(grouped[point])
        match point:
            case AtVertex() if point in arrivals:
                legal = dirs(g, point)
                produced = m.delta_v(legal, signals)
                site = Site.VERTEX
            case OnEdge() if len(priors[point]) >= 2:
                legal = dirs(g, point)
                produced = m.delta_e(signals)
                site = Site.EDGE
            case _:
                after[point] = signals
                continue
        _check_produced(m, point, legal, produced)
        entries.append(
            EventEntry(point=point, consumed=signals, produced=frozenset(produced), site=site)
        )
        if produced:
            after[point] = frozenset(produced)

    batch = EventBatch(time=now + t0, entries=tuple(entries))
    logger.trace(
        "Event batch at {time}: {points} points, {signals} signals after",
        time=batch.time,
        points=len(entries),
        signals=sum(len(s) for s in after.values()),
    )
    return after, batch


def _start_time(t0: EventTime, now: Fraction) -> Fraction:
    if t0 == 0:
        raise SingularityMinusOne(now)
    assert isinstance(t0, Fraction)
    return t0


def step(
    g: Multigraph, m: MachineDef, c: Configuration, now: Fraction = Fraction(0)
) -> StepResult:
    t0 = next_event_time(g, m, c)
    if t0 == INFINITY:
        return QUIESCENT
    return _handle(g, m, c, now, _start_time(t0, now))


def run(g: Multigraph, m: MachineDef, c: Configuration, limits: RunLimits) -> Trace:
    logger.debug(
        "Starting run of {machine}: horizon {horizon}, max events {max_events}",
        machine=m.name,
        horizon=limits.horizon,
        max_events=limits.max_events,
    )
    events: list[EventBatch] = []
    now = Fraction(0)
    while True:
        t0 = next_event_time(g, m, c)
        if t0 == INFINITY:
            outcome = Outcome.QUIESCENT
            break
        if limits.horizon is not None and now + t0 > limits.horizon:
            outcome = Outcome.HORIZON
            break
        if len(events) >= limits.max_events:
            logger.warning("Event budget of {max_events} exhausted", max_events=limits.max_events)
            partial = Trace(events=tuple(events), final=c, outcome=Outcome.BUDGET, end_time=now)
            raise EventBudgetExhausted(limits.max_events, partial)
        c, batch = _handle(g, m, c, now, _start_time(t0, now))
        events.append(batch)
        now = batch.time

    logger.debug(
        "Run finished ({outcome}) after {count} batches at time {time}",
        outcome=outcome.value,
        count=len(events),
        time=now,
    )
    return Trace(events=tuple(events), final=c, outcome=outcome, end_time=now)
