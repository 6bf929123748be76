from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from conftest import PATH_2_1_TEXT, UNIT_EDGE_TEXT, path_2_1, run_machine, unit_edge
from fmsync.continuum import Direction
from fmsync.exception import Disconnected, GraphParseError, SuiteError, TraceFormatError
from fmsync.fssp import kinds as k
from fmsync.fssp.machine import initial_configuration, make_machine
from fmsync.io.graphfile import parse_graph, read_graph
from fmsync.io.suite import load_suite
from fmsync.io.svg import DASHED, THICK, DiagramSpec, default_stroke, render_svg, replay_segments
from fmsync.io.trace import (
    TraceDocument,
    decode_datum,
    dump_trace,
    encode_datum,
    load_trace,
    parse_trace,
    read_trace,
    save_trace,
    trace_digest,
    trace_graph,
    write_trace,
)


def test_parse_graph():
    g, general = parse_graph(PATH_2_1_TEXT)
    assert general == "m"
    assert list(g.vertices) == ["a", "b", "m"]
    assert g.edge("e0").weight == 2

    g, general = parse_graph(UNIT_EDGE_TEXT)
    assert general == "a"
    assert [e.id for e in g.edges] == ["e"]


def test_parse_graph_accepts_loose_weights():
    g, _ = parse_graph("edge e a b 6/4\ngeneral b\n")
    assert g.edge("e").weight == Fraction(3, 2)


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("edge e a b 1\nedge e b c 1\ngeneral a\n", 2),
        ("edge e a a 1\ngeneral a\n", 1),
        ("edge e a b x\ngeneral a\n", 1),
        ("edge e a b 0\ngeneral a\n", 1),
        ("edge e a b -1\ngeneral a\n", 1),
        ("edge e a b 1\ngeneral a\ngeneral b\n", 3),
        ("edge e a b 1\nnode c\ngeneral a\n", 2),
        ("edge e a b 1\n", 1),
        ("edge e a b 1\ngeneral z\n", 2),
    ],
)
def test_parse_graph_reports_the_line(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_parse_graph_validates_the_graph():
    with pytest.raises(Disconnected):
        parse_graph("edge e a b 1\nedge f c d 1\ngeneral a\n")


def test_read_graph(path_file: Path):
    g, general = read_graph(path_file)
    assert general == "m"
    assert g == path_2_1()


def _document(depth: int = 2) -> TraceDocument:
    g = unit_edge()
    trace = run_machine(g, "a", depth)
    return write_trace(
        trace,
        graph=g,
        general="a",
        depth_cap=depth,
        machine=make_machine(depth),
        initial=initial_configuration(g, "a", depth),
    )


def test_trace_document_round_trip():
    g = unit_edge()
    trace = run_machine(g, "a", 2)
    doc = _document(2)
    restored = read_trace(parse_trace(dump_trace(doc)))
    assert restored.events == trace.events
    assert restored.final == dict(trace.final)
    assert restored.outcome is trace.outcome
    assert restored.end_time == trace.end_time
    assert trace_graph(doc) == g
    assert doc.header.speeds[k.divide(0)] == "1/1"
    assert doc.header.speeds[k.V] == "1/3"


def test_trace_dump_is_stable():
    first, second = _document(3), _document(3)
    assert dump_trace(first) == dump_trace(second)
    assert trace_digest(first) == trace_digest(second)


def test_save_and_load_trace(tmp_path: Path):
    doc = _document()
    path = tmp_path / "run.json"
    save_trace(doc, path)
    assert load_trace(path) == doc


@pytest.mark.parametrize("bad_time", ["2/4", "abc", "1/0"])
def test_malformed_rationals_are_rejected(bad_time):
    doc = _document()
    text = dump_trace(doc).replace(f'"time": "{doc.events[0].time}"', f'"time": "{bad_time}"', 1)
    with pytest.raises(TraceFormatError):
        parse_trace(text)


def test_decreasing_event_times_are_rejected():
    doc = _document()
    assert len(doc.events) >= 2
    events = list(reversed(doc.events))
    with pytest.raises(TraceFormatError):
        parse_trace(doc.model_copy(update={"events": events}).model_dump_json())


def test_datum_encoding():
    d = Direction("e", -1)
    datum = (((d,), (), True), frozenset({(d,), ()}))
    assert decode_datum(encode_datum(datum)) == datum
    with pytest.raises(TraceFormatError):
        encode_datum(3)
    with pytest.raises(TraceFormatError):
        decode_datum({"unknown": 1})


def test_replay_segments_cover_the_run():
    doc = _document()
    segments = replay_segments(doc)
    assert segments
    assert all(seg.t0 <= seg.t1 for seg in segments)
    assert max(seg.t1 for seg in segments) == 2


def test_svg_is_deterministic():
    doc = _document()
    spec = DiagramSpec(t_max=Fraction(2))
    svg = render_svg(doc, spec)
    assert svg == render_svg(doc, spec)
    assert svg.startswith('<?xml version="1.0"')
    assert svg.rstrip().endswith("</svg>")
    assert 'id="edge-e"' in svg
    assert "<line" in svg


def test_svg_rejects_unknown_edges():
    with pytest.raises(ValueError):
        render_svg(_document(), DiagramSpec(edges=("nope",)))


def test_svg_of_a_window_after_the_run():
    svg = render_svg(_document(), DiagramSpec(t_min=Fraction(5), t_max=Fraction(6)))
    assert "<line" not in svg


def test_default_strokes():
    assert default_stroke(k.FIRE) == THICK
    assert default_stroke(k.BOUNDARY) == THICK
    assert default_stroke(k.freeze(Direction("e", 1))) == DASHED
    assert DiagramSpec(styles={k.X: DASHED}).stroke(k.FIRE) == DASHED


SUITE_TEXT = """\
version: 1
cases:
  - name: unit
    graph: graphs/unit.graph
    depth: 3
  - name: path
    graph: graphs/path.graph
    general: a
"""


def test_load_suite(tmp_path: Path):
    suite = tmp_path / "suite.yaml"
    suite.write_text(SUITE_TEXT, encoding="utf-8")
    cases = load_suite(suite)
    assert [c.name for c in cases] == ["unit", "path"]
    assert cases[0].graph_file == (tmp_path / "graphs" / "unit.graph").absolute()
    assert cases[0].depth == 3 and cases[0].general is None
    assert cases[1].depth is None and cases[1].general == "a"


@pytest.mark.parametrize(
    "text",
    [
        "version: 2\ncases: []\n",
        "- a\n- b\n",
        "cases: [\n",
        "cases:\n  - name: x\n    graph: a.graph\n  - name: x\n    graph: b.graph\n",
        "cases:\n  - name: x\n    graph: a.graph\n    depth: 0\n",
        "cases:\n  - graph: a.graph\n",
    ],
)
def test_invalid_suites(tmp_path: Path, text):
    suite = tmp_path / "suite.yaml"
    suite.write_text(text, encoding="utf-8")
    with pytest.raises(SuiteError):
        load_suite(suite)


def test_missing_suite(tmp_path: Path):
    with pytest.raises(SuiteError):
        load_suite(tmp_path / "absent.yaml")
    with pytest.raises(SuiteError):
        load_suite(tmp_path)
