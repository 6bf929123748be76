"""Space-time diagrams: one strip per edge, space across, time running down."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from html import escape

from fmsync.continuum import AtVertex, Direction, OnEdge, Point, offset_on
from fmsync.engine.kinetics import drift_unchecked
from fmsync.engine.signal import Configuration, KindId, MachineDef, Signal
from fmsync.fssp import kinds as k
from fmsync.graph import EdgeId, Multigraph
from fmsync.io.trace import TraceDocument, read_trace, trace_graph, trace_initial, trace_speeds
from fmsync.utils.logging import logger

MARGIN = 40
GAP = 40


@dataclass(frozen=True, slots=True)
class Stroke:
    width: float
    dash: str | None = None

    def attributes(self) -> str:
        dash = f' stroke-dasharray="{self.dash}"' if self.dash else ""
        return f'stroke="black" stroke-width="{self.width:.1f}"{dash}'


THIN = Stroke(0.6)
THICK = Stroke(2.0)
DASHED = Stroke(1.0, "6 4")
LOOSELY_DOTTED = Stroke(2.0, "1 6")
DENSELY_DOTTED = Stroke(1.0, "1 2")


def default_stroke(s: Signal) -> Stroke:
    match s:
        case Signal(kind=k.B | k.M | k.L | k.X | k.FX):
            return THICK
        case Signal(kind=k.F):
            return DASHED
        case Signal(kind=k.T, datum=(_, False)):
            return LOOSELY_DOTTED
        case Signal(kind=k.T):
            return DASHED
        case Signal(kind=k.UR | k.DR):
            return DENSELY_DOTTED
    n = k.divide_type(s.kind)
    return DENSELY_DOTTED if n is not None and n >= 1 else THIN


@dataclass(frozen=True, slots=True, kw_only=True)
class DiagramSpec:
    edges: tuple[EdgeId, ...] | None = None
    t_min: Fraction = Fraction(0)
    t_max: Fraction | None = None
    scale: int = 240
    styles: Mapping[KindId, Stroke] = field(default_factory=dict)

    def stroke(self, s: Signal) -> Stroke:
        return self.styles.get(s.kind) or default_stroke(s)


@dataclass(frozen=True, slots=True)
class Segment:
    signal: Signal
    start: Point
    t0: Fraction
    end: Point
    t1: Fraction


class SvgBuilder:
    def __init__(self) -> None:
        self.svg = ""

    def header(self, width: float, height: float) -> None:
        self.svg += (
            '<?xml version="1.0" standalone="no"?>\n'
            f'<svg version="1.1" width="{width:.0f}" height="{height:.0f}" '
            f'viewBox="0 0 {width:.0f} {height:.0f}" xmlns="http://www.w3.org/2000/svg">\n'
        )

    def group_start(self, attr: Mapping[str, str]) -> None:
        g_attr = [f'{key}="{escape(v)}"' for key, v in attr.items() if key in ("id", "class")]
        self.svg += f"<g {' '.join(g_attr)}>\n"
        if "title" in attr:
            self.svg += f"<title>{escape(attr['title'])}</title>\n"

    def group_end(self) -> None:
        self.svg += "</g>\n"

    def frame(self, x1: float, y1: float, x2: float, y2: float) -> None:
        self.svg += (
            f'<rect x="{x1:.1f}" y="{y1:.1f}" width="{x2 - x1:.1f}" height="{y2 - y1:.1f}" '
            f'fill="none" stroke="gray" stroke-width="0.5"/>\n'
        )

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: Stroke) -> None:
        self.svg += (
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            f"{stroke.attributes()}/>\n"
        )

    def text(self, x: float, y: float, string: str, extra: str = "") -> None:
        self.svg += f'<text x="{x:.1f}" y="{y:.1f}" {extra}>{escape(string)}</text>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"


def _replay_machine(speeds: Mapping[KindId, Fraction]) -> MachineDef:
    return MachineDef(
        name="replay", speeds=speeds, delta_e=lambda s: s, delta_v=lambda d, s: s
    )


def replay_segments(doc: TraceDocument) -> list[Segment]:
    """Cut every signal's trajectory into maximal straight pieces."""
    g = trace_graph(doc)
    machine = _replay_machine(trace_speeds(doc))
    trace = read_trace(doc)
    c: Configuration = trace_initial(doc)
    now = Fraction(0)
    live: dict[tuple[Signal, Point], tuple[Point, Fraction]] = {
        (s, p): (p, now) for p, signals in c.items() for s in signals
    }
    segments: list[Segment] = []

    for batch in trace.events:
        moved: dict[Point, set[Signal]] = {}
        carried: dict[tuple[Signal, Point], tuple[Point, Fraction]] = {}
        for prior, point, s in drift_unchecked(g, machine, c, batch.time - now):
            moved.setdefault(point, set()).add(s)
            carried[(s, point)] = live.pop((s, prior), (prior, now))
        live = carried
        now = batch.time

        for entry in batch.entries:
            for s in entry.consumed - entry.produced:
                start, t0 = live.pop((s, entry.point), (entry.point, now))
                segments.append(Segment(s, start, t0, entry.point, now))
            for s in entry.produced - entry.consumed:
                live[(s, entry.point)] = (entry.point, now)
            moved[entry.point] = set(entry.produced)
        c = {p: frozenset(signals) for p, signals in moved.items() if signals}

    for (s, point), (start, t0) in live.items():
        segments.append(Segment(s, start, t0, point, now))
    return segments


def _strip_edges(g: Multigraph, seg: Segment) -> list[EdgeId]:
    if isinstance(seg.signal.dir, Direction):
        return [seg.signal.dir.edge]
    match seg.start:
        case OnEdge(edge=e):
            return [e]
        case AtVertex(vertex=v):
            return list(g.incident(v))


def _clip(
    seg: Segment, t_min: Fraction, t_max: Fraction, x0: Fraction, x1: Fraction
) -> tuple[Fraction, Fraction, Fraction, Fraction] | None:
    if seg.t1 < t_min or seg.t0 > t_max:
        return None
    if seg.t1 == seg.t0:
        return (x0, seg.t0, x1, seg.t1)

    def at(t: Fraction) -> Fraction:
        return x0 + (x1 - x0) * (t - seg.t0) / (seg.t1 - seg.t0)

    lo, hi = max(seg.t0, t_min), min(seg.t1, t_max)
    return (at(lo), lo, at(hi), hi)


def render_svg(doc: TraceDocument, spec: DiagramSpec) -> str:
    g = trace_graph(doc)
    selected = [e.id for e in g.edges] if spec.edges is None else list(spec.edges)
    for edge_id in selected:
        if not g.has_edge(edge_id):
            raise ValueError(f"Unknown edge in diagram selection: {edge_id}")
    segments = replay_segments(doc)
    end = max((seg.t1 for seg in segments), default=Fraction(0))
    t_min = spec.t_min
    t_max = spec.t_max if spec.t_max is not None else max(end, t_min)
    scale = spec.scale

    left: dict[EdgeId, float] = {}
    x = float(MARGIN)
    for edge_id in selected:
        left[edge_id] = x
        x += float(g.edge(edge_id).weight * scale) + GAP
    width = max(x - GAP + MARGIN, 2 * MARGIN)
    height = float((t_max - t_min) * scale) + 2 * MARGIN

    svg = SvgBuilder()
    svg.header(width, height)
    svg.text(4, MARGIN - 8, f"t={t_min}", 'font-size="10"')
    svg.text(4, height - MARGIN + 12, f"t={t_max}", 'font-size="10"')

    def y_of(t: Fraction) -> float:
        return MARGIN + float((t - t_min) * scale)

    for edge_id in selected:
        edge = g.edge(edge_id)
        x0 = left[edge_id]
        x1 = x0 + float(edge.weight * scale)
        svg.group_start({"id": f"edge-{edge_id}", "title": f"{edge.source} - {edge.target}"})
        svg.frame(x0, MARGIN, x1, height - MARGIN)
        svg.text(x0, MARGIN - 8, f"{edge.source}", 'font-size="10"')
        svg.text(x1, MARGIN - 8, f"{edge.target}", 'font-size="10" text-anchor="end"')
        svg.text((x0 + x1) / 2, MARGIN - 20, edge_id, 'font-size="11" text-anchor="middle"')

        drawn = sorted(
            (seg for seg in segments if edge_id in _strip_edges(g, seg)),
            key=lambda seg: (seg.t0, seg.t1, str(seg.start), str(seg.signal)),
        )
        for seg in drawn:
            clipped = _clip(
                seg,
                t_min,
                t_max,
                offset_on(g, seg.start, edge_id),
                offset_on(g, seg.end, edge_id),
            )
            if clipped is None:
                continue
            a, ta, b, tb = clipped
            svg.line(
                x0 + float(a * scale),
                y_of(ta),
                x0 + float(b * scale),
                y_of(tb),
                spec.stroke(seg.signal),
            )
        svg.group_end()

    logger.debug(
        "Rendered {count} segments on {edges} edges", count=len(segments), edges=len(selected)
    )
    return svg.get_svg()
