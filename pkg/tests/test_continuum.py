from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import path_2_1, star, unit_edge
from fmsync.continuum import (
    EVERY,
    Arrow,
    AtVertex,
    Direction,
    HitVertex,
    Interior,
    OnEdge,
    advance,
    dirs,
    make_point,
    outgoing,
    point_distance,
    point_key,
    reach,
    scalar_mul,
)
from fmsync.exception import BadDirection


@given(st.text(min_size=1, max_size=5), st.sampled_from([1, -1]))
def test_direction_reversal_is_an_involution(edge, orientation):
    d = Direction(edge, orientation)
    assert -(-d) == d
    assert -d != d


def test_direction_rejects_bad_orientation():
    with pytest.raises(BadDirection):
        Direction("e", 0)


def test_make_point_is_canonical():
    g = unit_edge()
    assert make_point(g, "e", Fraction(0)) == AtVertex("a")
    assert make_point(g, "e", Fraction(1)) == AtVertex("b")
    assert make_point(g, "e", Fraction(1, 3)) == OnEdge("e", Fraction(1, 3))
    with pytest.raises(ValueError):
        make_point(g, "e", Fraction(2))


def test_point_key_orders_vertices_first():
    points = [OnEdge("a", Fraction(1, 2)), AtVertex("z"), AtVertex("b")]
    expected = [AtVertex("b"), AtVertex("z"), OnEdge("a", Fraction(1, 2))]
    assert sorted(points, key=point_key) == expected


def test_dirs_and_outgoing():
    g = path_2_1()
    assert dirs(g, AtVertex("m")) == {Direction("e0", -1), Direction("e1", -1)}
    assert dirs(g, AtVertex("a")) == {Direction("e0", 1)}
    assert outgoing(g, "b", "e1") == Direction("e1", 1)
    assert dirs(g, OnEdge("e0", Fraction(1))) == {Direction("e0", 1), Direction("e0", -1)}


def test_advance():
    g = unit_edge()
    assert advance(g, AtVertex("a"), Direction("e", 1), Fraction(1, 4)) == Interior(
        OnEdge("e", Fraction(1, 4)), Direction("e", 1)
    )
    assert advance(g, OnEdge("e", Fraction(1, 4)), Direction("e", 1), Fraction(2)) == HitVertex(
        "b", Fraction(3, 4), Direction("e", 1)
    )
    with pytest.raises(BadDirection):
        advance(g, AtVertex("a"), Direction("e", -1), Fraction(1, 4))
    with pytest.raises(ValueError):
        advance(g, AtVertex("a"), Direction("e", 1), Fraction(-1))


def test_reach_branches_at_vertices():
    g = path_2_1()
    assert reach(g, AtVertex("a"), Arrow(Fraction(3), Direction("e0", 1))) == {
        (AtVertex("b"), Direction("e1", -1))
    }
    assert reach(g, AtVertex("a"), Arrow(Fraction(0), EVERY)) == {(AtVertex("a"), EVERY)}

    s = star(1, 1, 1)
    ends = reach(s, AtVertex("l0"), Arrow(Fraction(3, 2), outgoing(s, "l0", "s0")))
    assert ends == {
        (OnEdge("s1", Fraction(1, 2)), outgoing(s, "c", "s1")),
        (OnEdge("s2", Fraction(1, 2)), outgoing(s, "c", "s2")),
    }


def test_scalar_mul_and_arrow_consistency():
    a = Arrow(Fraction(2), Direction("e", 1))
    assert scalar_mul(a, Fraction(1, 2)) == Arrow(Fraction(1), Direction("e", 1))
    assert scalar_mul(a, Fraction(0)) == Arrow(Fraction(0), EVERY)
    with pytest.raises(ValueError):
        Arrow(Fraction(1), EVERY)
    with pytest.raises(ValueError):
        Arrow(Fraction(0), Direction("e", 1))


def test_point_distance_on_path():
    g = path_2_1()
    assert point_distance(g, AtVertex("a"), AtVertex("b")) == 3
    assert point_distance(g, OnEdge("e0", Fraction(1, 2)), OnEdge("e0", Fraction(3, 2))) == 1
    assert point_distance(g, OnEdge("e0", Fraction(1, 2)), OnEdge("e1", Fraction(1, 2))) == 2
