from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import path_2_1, square, star, triangle, unit_edge
from fmsync.continuum import AtVertex, Direction, OnEdge
from fmsync.engine.signal import EventBatch, EventEntry, Outcome, Site, Trace
from fmsync.exception import NotDirectionPreserving, OracleError
from fmsync.fssp import kinds as k
from fmsync.graph import Multigraph, Path, metric_summary
from fmsync.oracle.cascade import (
    all_fire_points,
    cascade_positions,
    division_positions,
    fire_positions,
    origin_end,
)
from fmsync.oracle.paths import (
    decode_midpoint,
    enumerate_paths,
    longest_midpoint,
    midpoint_time,
    path_key,
    path_midpoint,
    sync_time,
)
from fmsync.oracle.thaw import thaw_graph, thaw_path_weight_check
from fmsync.oracle.virtual import is_tree, leaf_cuts, virtual_tree

R = Fraction(2, 3)


def test_midpoint_time_examples():
    g = Multigraph.create(["a", "b"], [("e", "a", "b", 4)])
    edge = Path(("a", "b"), ("e",))
    assert midpoint_time(g, "a", edge) == 6

    p = path_2_1()
    assert midpoint_time(p, "m", Path(("a", "m"), ("e0",))) == 3
    assert midpoint_time(p, "m", Path(("m", "b"), ("e1",))) == Fraction(3, 2)
    assert midpoint_time(p, "a", Path(("m", "b"), ("e1",))) == Fraction(7, 2)

    s = star(2, 1, 1)
    assert midpoint_time(s, "l1", Path(("l1", "c"), ("s1",))) == Fraction(3, 2)
    assert midpoint_time(s, "l1", Path(("l0", "c"), ("s0",))) == 4

    with pytest.raises(NotDirectionPreserving):
        midpoint_time(p, "m", Path(("a", "m", "a"), ("e0", "e0")))


def test_path_midpoints():
    g = path_2_1()
    assert path_midpoint(g, Path(("a", "m", "b"), ("e0", "e1"))) == OnEdge("e0", Fraction(3, 2))
    assert path_midpoint(g, Path(("b", "m", "a"), ("e1", "e0"))) == OnEdge("e0", Fraction(3, 2))
    assert path_midpoint(star(1, 1), Path(("l0", "c", "l1"), ("s0", "s1"))) == AtVertex("c")


def test_enumerate_paths_on_tree_and_cycle():
    paths = enumerate_paths(path_2_1())
    assert len(paths) == 6
    assert len({path_key(p) for p in paths}) == 3

    bounded = enumerate_paths(triangle(), hop_limit=2)
    assert all(len(p.edges) <= 2 for p in bounded)
    assert len(bounded) == 6 * 2


def test_longest_midpoint():
    assert longest_midpoint(unit_edge(), "a") == (OnEdge("e", Fraction(1, 2)), Fraction(3, 2))
    assert longest_midpoint(path_2_1(), "m") == (OnEdge("e0", Fraction(3, 2)), Fraction(7, 2))
    assert longest_midpoint(star(1, 1, 1), "c") == (AtVertex("c"), Fraction(2))


def test_longest_midpoint_needs_a_common_point():
    with pytest.raises(OracleError):
        longest_midpoint(triangle(), "a", hop_limit=3)


@pytest.mark.parametrize(
    ("graph", "general", "expected"),
    [
        (unit_edge(), "a", Fraction(2)),
        (path_2_1(), "m", Fraction(5)),
        (path_2_1(), "a", Fraction(6)),
        (path_2_1(), "b", Fraction(6)),
    ],
)
def test_sync_time(graph, general, expected):
    assert sync_time(graph, general) == expected


def test_decode_midpoint():
    g = path_2_1()
    words = frozenset({(Direction("e0", -1),), (Direction("e0", 1), Direction("e1", -1))})
    assert decode_midpoint(g, OnEdge("e0", Fraction(3, 2)), words) == Path(
        ("a", "m", "b"), ("e0", "e1")
    )
    at_vertex = frozenset({(Direction("e0", -1),), (Direction("e1", -1),)})
    assert decode_midpoint(g, AtVertex("m"), at_vertex) == Path(("a", "m", "b"), ("e0", "e1"))
    with pytest.raises(OracleError):
        decode_midpoint(g, AtVertex("a"), frozenset({(Direction("e1", -1),), ()}))


def test_decode_midpoint_rejects_paths_that_turn_back():
    g = star(1, Fraction(3, 2), Fraction(3, 2))
    back = Direction("s0", -1)
    words = frozenset({(back, Direction("s1", 1)), (back, Direction("s2", 1))})
    with pytest.raises(NotDirectionPreserving):
        decode_midpoint(g, AtVertex("l0"), words)


def test_division_positions():
    assert division_positions(Fraction(1), 1) == [R]
    assert division_positions(Fraction(3), 3) == [3 * R, 3 * R**2, 3 * R**3]
    with pytest.raises(ValueError):
        division_positions(Fraction(0), 2)


@pytest.mark.parametrize("depth", [1, 2, 3, 5])
def test_cascade_positions_double_with_depth(depth):
    positions = cascade_positions(Fraction(1), depth)
    assert len(positions) == 2**depth
    assert positions[0] == 0
    assert all(0 <= x < 1 for x in positions)
    assert set(division_positions(Fraction(1), depth)) <= set(positions)


def test_cascade_scales_linearly():
    assert cascade_positions(Fraction(3), 3) == [3 * x for x in cascade_positions(Fraction(1), 3)]


def test_fire_positions_measured_from_origin_end():
    g = path_2_1()
    assert origin_end(g, "a", "e1") == "m"
    positions = fire_positions(g, "m", 1)
    assert positions["e0"] == {AtVertex("m"), OnEdge("e0", Fraction(2, 3))}
    assert positions["e1"] == {AtVertex("m"), OnEdge("e1", Fraction(1, 3))}
    assert all_fire_points(g, "m", 1) == {
        AtVertex("m"),
        OnEdge("e0", Fraction(2, 3)),
        OnEdge("e1", Fraction(1, 3)),
    }


def test_thaw_graph_on_single_edge():
    tg = thaw_graph(unit_edge())
    assert len(tg.classes()) == 3
    summary = thaw_path_weight_check(tg)
    assert summary.max_weight == 1
    assert summary.reachable == 3
    assert all(w == Fraction(1, 2) for _, _, w in tg.graph.edges(data="weight"))


def test_thaw_graph_on_two_edge_path():
    g = path_2_1()
    tg = thaw_graph(g)
    longest = path_key(Path(("a", "m", "b"), ("e0", "e1")))
    heavy = path_key(Path(("a", "m"), ("e0",)))
    light = path_key(Path(("m", "b"), ("e1",)))
    assert tg.maximum_classes() == [longest]
    assert tg.graph.in_degree(longest) == 0
    assert tg.graph.edges[longest, heavy]["weight"] == Fraction(3, 2) - 1
    assert tg.graph.edges[longest, light]["weight"] == Fraction(3, 2) - Fraction(1, 2)
    summary = thaw_path_weight_check(tg)
    assert summary.classes == 6
    assert summary.reachable == 6


@pytest.mark.parametrize("graph", [star(1, 1, 1), star(2, 1, Fraction(3, 2)), star(1, 2)])
def test_thaw_weights_on_stars(graph):
    summary = thaw_path_weight_check(thaw_graph(graph))
    assert summary.reachable == summary.classes


def test_thaw_graph_rejects_cycles():
    with pytest.raises(OracleError):
        thaw_graph(triangle())


def _cut_trace(point, *directions) -> Trace:
    entry = EventEntry(
        point=point,
        consumed=frozenset(),
        produced=frozenset(k.leaf(d) for d in directions),
        site=Site.EDGE if isinstance(point, OnEdge) else Site.VERTEX,
    )
    batch = EventBatch(time=Fraction(3, 2), entries=(entry,))
    return Trace(events=(batch,), final={}, outcome=Outcome.HORIZON, end_time=Fraction(3, 2))


def test_virtual_tree_of_triangle():
    g = triangle()
    trace = _cut_trace(OnEdge("bc", Fraction(1, 2)), Direction("bc", 1), Direction("bc", -1))
    assert len(leaf_cuts(trace)) == 2
    tree = virtual_tree(g, trace)
    assert is_tree(tree)
    assert {e.id for e in tree.edges} == {"ab", "bc#0", "bc#1", "ca"}
    assert tree.edge("bc#0").weight == Fraction(1, 2)
    summary = metric_summary(tree, "a")
    assert summary.radius + summary.diameter == Fraction(9, 2)


def test_virtual_tree_of_square():
    g = square()
    trace = _cut_trace(AtVertex("c"), Direction("bc", -1), Direction("cd", 1))
    tree = virtual_tree(g, trace)
    assert is_tree(tree)
    assert "c" not in tree.vertices
    assert {"c|bc", "c|cd"} <= set(tree.vertices)
    summary = metric_summary(tree, "a")
    assert summary.radius + summary.diameter == 6


def test_virtual_tree_without_cuts_is_the_graph():
    g = path_2_1()
    trace = Trace(events=(), final={}, outcome=Outcome.QUIESCENT, end_time=Fraction(0))
    assert virtual_tree(g, trace) is g
