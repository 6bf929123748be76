from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from fmsync.engine.machine import RunLimits, run
from fmsync.engine.signal import Trace
from fmsync.fssp.machine import initial_configuration, make_machine
from fmsync.graph import Multigraph, VertexId, metric_summary


def unit_edge() -> Multigraph:
    return Multigraph.create(["a", "b"], [("e", "a", "b", 1)])


def path_2_1() -> Multigraph:
    """a --2-- m --1-- b"""
    return Multigraph.create(["a", "m", "b"], [("e0", "a", "m", 2), ("e1", "m", "b", 1)])


def star(*weights: Fraction | int) -> Multigraph:
    leaves = [f"l{i}" for i in range(len(weights))]
    pairs = enumerate(zip(leaves, weights, strict=True))
    edges = [(f"s{i}", "c", leaf, w) for i, (leaf, w) in pairs]
    return Multigraph.create(["c", *leaves], edges)


def triangle() -> Multigraph:
    return Multigraph.create(
        ["a", "b", "c"], [("ab", "a", "b", 1), ("bc", "b", "c", 1), ("ca", "c", "a", 1)]
    )


def square() -> Multigraph:
    return Multigraph.create(
        ["a", "b", "c", "d"],
        [("ab", "a", "b", 1), ("bc", "b", "c", 1), ("cd", "c", "d", 1), ("da", "d", "a", 1)],
    )


def run_machine(
    g: Multigraph, general: VertexId, depth_cap: int, horizon: Fraction | None = None
) -> Trace:
    if horizon is None:
        summary = metric_summary(g, general)
        horizon = summary.radius + summary.diameter
    machine = make_machine(depth_cap)
    return run(
        g,
        machine,
        initial_configuration(g, general, depth_cap),
        RunLimits(max_events=200_000, horizon=horizon),
    )


UNIT_EDGE_TEXT = """\
# a single edge of length one
edge e a b 1
general a
"""

PATH_2_1_TEXT = """\
vertex a
edge e0 a m 2
edge e1 m b 1
general m
"""


@pytest.fixture
def isolated_home(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    return home


@pytest.fixture
def unit_edge_file(tmp_path: Path) -> Path:
    path = tmp_path / "unit.graph"
    path.write_text(UNIT_EDGE_TEXT, encoding="utf-8")
    return path


@pytest.fixture
def path_file(tmp_path: Path) -> Path:
    path = tmp_path / "path21.graph"
    path.write_text(PATH_2_1_TEXT, encoding="utf-8")
    return path
