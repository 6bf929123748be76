"""Closed-form event detection and drift.

All motion happens along single edges: a moving signal's offset on its edge is
``x0 + velocity * t`` until it reaches an endpoint, which is always an event.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from fmsync.continuum import (
    AtVertex,
    Direction,
    HitVertex,
    Interior,
    OnEdge,
    Point,
    advance,
    dirs,
    offset_on,
)
from fmsync.engine import OvershootsEvent
from fmsync.engine.signal import Configuration, MachineDef, Signal, make_configuration
from fmsync.exception import BadDirection
from fmsync.graph import EdgeId, Multigraph

INFINITY = math.inf

type EventTime = Fraction | float


@dataclass(frozen=True, slots=True)
class Track:
    point: Point
    x0: Fraction
    velocity: Fraction


def _track(g: Multigraph, m: MachineDef, point: Point, s: Signal) -> tuple[EdgeId, Track] | None:
    speed = m.speed(s.kind)
    if speed == 0:
        if isinstance(point, OnEdge):
            return point.edge, Track(point, point.offset, Fraction(0))
        return None
    if not isinstance(s.dir, Direction):
        raise BadDirection(f"Moving signal {s} has no direction")
    if isinstance(point, AtVertex) and s.dir not in dirs(g, point):
        raise BadDirection(f"Signal {s} at vertex {point} does not point away from it")
    return s.dir.edge, Track(point, offset_on(g, point, s.dir.edge), s.dir.orientation * speed)


def _edge_tracks(g: Multigraph, m: MachineDef, c: Configuration) -> dict[EdgeId, set[Track]]:
    tracks: dict[EdgeId, set[Track]] = defaultdict(set)
    for point, signals in c.items():
        for s in signals:
            found = _track(g, m, point, s)
            if found is not None:
                tracks[found[0]].add(found[1])
    return tracks


def next_event_time(g: Multigraph, m: MachineDef, c: Configuration) -> EventTime:
    best: EventTime = INFINITY
    for edge_id, tracks in _edge_tracks(g, m, c).items():
        weight = g.edge(edge_id).weight
        ordered = sorted(tracks, key=lambda k: (k.x0, k.velocity))
        for k in ordered:
            if k.velocity > 0:
                best = min(best, (weight - k.x0) / k.velocity)
            elif k.velocity < 0:
                best = min(best, k.x0 / -k.velocity)
        for i, a in enumerate(ordered):
            for b in ordered[i + 1 :]:
                if a.point == b.point or a.velocity == b.velocity:
                    continue
                t = (b.x0 - a.x0) / (a.velocity - b.velocity)
                if t <= 0 or t >= best:
                    continue
                x = a.x0 + a.velocity * t
                if 0 < x < weight:
                    best = t
    return best


def drift_unchecked(
    g: Multigraph, m: MachineDef, c: Configuration, t: Fraction
) -> list[tuple[Point, Point, Signal]]:
    """Move every signal by time `t`, returning ``(prior point, new point, signal)`` triples."""
    moved: list[tuple[Point, Point, Signal]] = []
    for point, signals in c.items():
        for s in signals:
            speed = m.speed(s.kind)
            if speed == 0 or t == 0:
                moved.append((point, point, s))
                continue
            assert isinstance(s.dir, Direction)
            dist = speed * t
            match advance(g, point, s.dir, dist):
                case Interior(point=q):
                    moved.append((point, q, s))
                case HitVertex(vertex=v, consumed=used):
                    if used != dist:
                        raise OvershootsEvent(t, used / speed)
                    moved.append((point, AtVertex(v), s))
    return moved


def drift(g: Multigraph, m: MachineDef, c: Configuration, t: Fraction) -> Configuration:
    if t < 0:
        raise ValueError(f"Cannot drift backwards by {t}")
    limit = next_event_time(g, m, c)
    if t > limit:
        raise OvershootsEvent(t, limit)
    return make_configuration((q, [s]) for _, q, s in drift_unchecked(g, m, c, t))
