"""Compare a simulator trace against the analytic predictions."""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from fractions import Fraction

from fmsync.continuum import EVERY, OnEdge, Point, point_key
from fmsync.engine.signal import Signal, Trace
from fmsync.exception import FmsyncError, OracleError
from fmsync.fssp import kinds as k
from fmsync.graph import Multigraph, VertexId, vertex_distance
from fmsync.oracle.cascade import fire_positions, origin_end
from fmsync.oracle.paths import (
    PathKey,
    decode_midpoint,
    enumerate_paths,
    longest_midpoint,
    max_weight_paths,
    midpoint_time,
    path_key,
    path_midpoint,
    sync_time,
)
from fmsync.oracle.thaw import thaw_graph, thaw_path_weight_check
from fmsync.oracle.virtual import is_tree, leaf_cuts, virtual_tree
from fmsync.utils.rational import format_rational


@dataclass(frozen=True, slots=True, kw_only=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True, slots=True, kw_only=True)
class VerificationReport:
    sync_time: Fraction
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True, slots=True)
class Creation:
    time: Fraction
    point: Point
    signal: Signal


def creations(
    trace: Trace, wanted: Callable[[Signal], bool], *, fresh_kind: bool = False
) -> Iterator[Creation]:
    """Signals an event produced but did not consume.

    With `fresh_kind`, only events that consumed no signal of the same kind count.
    """
    for batch in trace.events:
        for entry in batch.entries:
            kinds = {s.kind for s in entry.consumed} if fresh_kind else set()
            for s in entry.produced:
                if wanted(s) and s not in entry.consumed and s.kind not in kinds:
                    yield Creation(batch.time, entry.point, s)


def _fire_created(s: Signal) -> bool:
    return s.kind == k.X


def _check(name: str, passed: bool, detail: str = "") -> Check:
    return Check(name=name, passed=passed, detail="" if passed else detail)


def expected_sync_time(g: Multigraph, general: VertexId, trace: Trace) -> Fraction:
    """r + d of the graph, or of the virtual tree when the trace cut the graph."""
    if g.is_tree():
        return sync_time(g, general)
    return sync_time(virtual_tree(g, trace), general)


def check_monotone(trace: Trace) -> Check:
    times = [batch.time for batch in trace.events]
    bad = [(a, b) for a, b in zip(times, times[1:], strict=False) if not a < b]
    return _check("monotone time", not bad, f"non-increasing times {bad[:3]}")


def check_fire_time(trace: Trace, expected: Fraction) -> Check:
    fires = list(creations(trace, _fire_created))
    if not fires:
        return _check("fire time", False, "no fire signal was created")
    wrong = sorted({c.time for c in fires if c.time != expected})
    detail = f"fires at {', '.join(map(format_rational, wrong))}, expected {expected}"
    return _check("fire time", not wrong, detail)


def check_fire_positions(g: Multigraph, general: VertexId, trace: Trace, depth_cap: int) -> Check:
    expected = set().union(*fire_positions(g, general, depth_cap).values())
    found = {c.point for c in creations(trace, _fire_created)}
    missing = sorted(expected - found, key=point_key)
    extra = sorted(found - expected, key=point_key)
    detail = f"missing {list(map(str, missing[:5]))}, unexpected {list(map(str, extra[:5]))}"
    return _check("fire positions", not missing and not extra, detail)


def check_midpoints(g: Multigraph, general: VertexId, trace: Trace) -> Check:
    paths = enumerate_paths(g)
    top, longest = max_weight_paths(g, paths)
    tops = {path_key(p) for p in longest}
    earliest: dict[PathKey, Creation] = {}
    problems: list[str] = []
    for c in creations(trace, lambda s: s.kind == k.M):
        assert isinstance(c.signal.datum, frozenset)
        try:
            p = decode_midpoint(g, c.point, c.signal.datum)
        except FmsyncError as exc:
            problems.append(f"undecodable {c.signal} at {c.point}: {exc}")
            continue
        key = path_key(p)
        if key not in earliest or c.time < earliest[key].time:
            earliest[key] = c

    half = sync_time(g, general) - top / 2
    for p in paths:
        key = path_key(p)
        found = earliest.get(key)
        if key in tops:
            if found is not None and found.time < half:
                problems.append(f"longest path {key} marked at {found.time}")
            continue
        if found is None:
            problems.append(f"no midpoint for {key}")
            continue
        when, where = midpoint_time(g, general, p), path_midpoint(g, p)
        if (found.time, found.point) != (when, where):
            problems.append(f"{key} at ({found.point}, {found.time}), expected ({where}, {when})")
    return _check("midpoint table", not problems, "; ".join(sorted(set(problems))[:5]))


def check_thaw_start(g: Multigraph, general: VertexId, trace: Trace) -> Check:
    thaws = creations(trace, lambda s: s.kind == k.T, fresh_kind=True)
    starts = {(c.time, c.point) for c in thaws}
    if len(g.edges) == 1:
        return _check("thaw start", not starts, f"thaw created on a single edge: {starts}")
    point, when = longest_midpoint(g, general)
    wrong = sorted(str(s) for s in starts if s != (when, point))
    ok = bool(starts) and not wrong
    return _check("thaw start", ok, f"expected only ({point}, {when}), also got {wrong[:5]}")


def check_thaw_graph(g: Multigraph) -> Check:
    try:
        summary = thaw_path_weight_check(thaw_graph(g))
    except OracleError as exc:
        return _check("thaw graph", False, str(exc))
    unreached = summary.classes - summary.reachable
    return _check("thaw graph", summary.reachable > 0, f"{unreached} classes unreached")


def check_freeze_schedule(g: Multigraph, general: VertexId, trace: Trace) -> Check:
    firsts: dict[str, Fraction] = {}
    for c in creations(trace, lambda s: s.kind == k.F):
        if isinstance(c.point, OnEdge):
            edge = c.point.edge
            firsts[edge] = min(firsts.get(edge, c.time), c.time)
    problems: list[str] = []
    for edge in g.edges:
        start = vertex_distance(g, general, origin_end(g, general, edge.id))
        expected = start + Fraction(3, 2) * edge.weight
        if firsts.get(edge.id) != expected:
            problems.append(f"{edge.id} frozen at {firsts.get(edge.id)}, expected {expected}")
    return _check("freeze schedule", not problems, "; ".join(problems[:5]))


def check_leaf_points(trace: Trace, depth_cap: int) -> Check:
    speeds = k.kind_table(depth_cap)
    bad: list[str] = []
    for batch in trace.events:
        for entry in batch.entries:
            if not isinstance(entry.point, OnEdge):
                continue
            if not any(s.kind == k.L for s in entry.produced):
                continue
            bad += [
                f"{s} at {entry.point}"
                for s in entry.produced
                if s.kind != k.L and s.dir is EVERY and speeds[s.kind] == 0
            ]
    return _check("virtual leaves", not bad, "; ".join(bad[:5]))


def check_no_cuts(trace: Trace) -> Check:
    cuts = leaf_cuts(trace)
    return _check("no cuts on trees", not cuts, f"{len(cuts)} leaf signals created")


def check_trace(
    g: Multigraph, general: VertexId, trace: Trace, depth_cap: int
) -> VerificationReport:
    """Run every check that applies to `g`; path-level checks need a tree."""
    expected = expected_sync_time(g, general, trace)
    checks = [check_monotone(trace), check_fire_time(trace, expected)]
    if g.is_tree():
        checks += [
            check_no_cuts(trace),
            check_fire_positions(g, general, trace, depth_cap),
            check_midpoints(g, general, trace),
            check_thaw_start(g, general, trace),
            check_thaw_graph(g),
        ]
        if len(g.edges) > 1:
            checks.append(check_freeze_schedule(g, general, trace))
    else:
        tree = virtual_tree(g, trace)
        checks += [
            _check("virtual tree", is_tree(tree), "cut graph is not a tree"),
            check_leaf_points(trace, depth_cap),
        ]
    return VerificationReport(sync_time=expected, checks=tuple(checks))
