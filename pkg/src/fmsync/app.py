from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from pydantic import BaseModel, Field

from fmsync.config import Config, load_config
from fmsync.engine.machine import RunLimits, run
from fmsync.engine.signal import Configuration, MachineDef, Trace
from fmsync.exception import OracleError
from fmsync.fssp.machine import initial_configuration, make_machine
from fmsync.graph import Multigraph, VertexId, continuum_eccentricity, metric_summary, weight
from fmsync.io.svg import DiagramSpec, render_svg
from fmsync.io.trace import TraceDocument, write_trace
from fmsync.oracle.check import VerificationReport, check_trace, expected_sync_time
from fmsync.oracle.paths import (
    PathKey,
    enumerate_paths,
    longest_midpoint,
    midpoint_time,
    path_key,
    path_midpoint,
)
from fmsync.oracle.thaw import thaw_graph, thaw_path_weight_check
from fmsync.share import get_share_dir
from fmsync.utils.logging import logger
from fmsync.utils.rational import format_rational


def enable_logging(debug: bool = False) -> None:
    logger.add(
        get_share_dir() / "logs" / "fmsync.log",
        level="TRACE" if debug else "INFO",
        rotation="06:00",
        retention="10 days",
    )


class MidpointRow(BaseModel):
    path: str = Field(description="Vertices of the path joined by dashes")
    weight: str
    midpoint: str
    time: str


class OracleReport(BaseModel):
    general: str
    radius: str
    diameter: str
    sync_time: str
    longest_midpoint: str | None = Field(default=None, description="Point of the longest paths")
    longest_midpoint_time: str | None = None
    thaw_classes: int | None = Field(default=None, description="Thaw graph size on trees")
    midpoints: list[MidpointRow] = Field(default_factory=list)


@dataclass(frozen=True, slots=True, kw_only=True)
class Simulation:
    trace: Trace
    initial: Configuration
    machine: MachineDef
    depth_cap: int


class FmsyncApp:
    @staticmethod
    def create(
        *,
        config_file: Path | None = None,
        depth_cap: int | None = None,
        max_events: int | None = None,
        horizon: Fraction | None = None,
        strict_pairs: bool | None = None,
    ) -> FmsyncApp:
        config = load_config(config_file)
        logger.info("Loaded config: {config}", config=config)
        return FmsyncApp(
            config,
            depth_cap=depth_cap or config.machine.depth_cap,
            max_events=max_events or config.limits.max_events,
            horizon=horizon if horizon is not None else config.limits.horizon_value(),
            strict_pairs=config.machine.strict_pairs if strict_pairs is None else strict_pairs,
        )

    def __init__(
        self,
        config: Config,
        *,
        depth_cap: int,
        max_events: int,
        horizon: Fraction | None,
        strict_pairs: bool,
    ) -> None:
        if depth_cap < 1:
            raise ValueError(f"Depth cap must be at least 1, got {depth_cap}")
        self._config = config
        self._depth_cap = depth_cap
        self._max_events = max_events
        self._horizon = horizon
        self._strict_pairs = strict_pairs

    @property
    def config(self) -> Config:
        return self._config

    @property
    def depth_cap(self) -> int:
        return self._depth_cap

    def simulate(
        self, g: Multigraph, general: VertexId, *, horizon: Fraction | None = None
    ) -> Simulation:
        machine = make_machine(self._depth_cap, self._strict_pairs)
        initial = initial_configuration(g, general, self._depth_cap)
        limits = RunLimits(
            max_events=self._max_events,
            horizon=horizon if horizon is not None else self._horizon,
        )
        trace = run(g, machine, initial, limits)
        logger.info(
            "Simulated {machine} on {edges} edges: {batches} batches, {outcome} at {time}",
            machine=machine.name,
            edges=len(g.edges),
            batches=len(trace.events),
            outcome=trace.outcome.value,
            time=trace.end_time,
        )
        return Simulation(trace=trace, initial=initial, machine=machine, depth_cap=self._depth_cap)

    def document(self, g: Multigraph, general: VertexId, sim: Simulation) -> TraceDocument:
        return write_trace(
            sim.trace,
            graph=g,
            general=general,
            depth_cap=sim.depth_cap,
            machine=sim.machine,
            initial=sim.initial,
        )

    def verify(self, g: Multigraph, general: VertexId) -> tuple[VerificationReport, Simulation]:
        """Simulate up to the synchronisation time and check the trace.

        On cyclic graphs the cuts are found first by a run that ends once every initiate
        signal has collided.
        """
        if g.is_tree():
            summary = metric_summary(g, general)
            sim = self.simulate(g, general, horizon=summary.radius + summary.diameter)
        else:
            probe = self.simulate(g, general, horizon=continuum_eccentricity(g, general))
            sim = self.simulate(g, general, horizon=expected_sync_time(g, general, probe.trace))
        report = check_trace(g, general, sim.trace, self._depth_cap)
        logger.info(
            "Verification {result}: {failed} of {total} checks failed",
            result="passed" if report.passed else "failed",
            failed=len(report.failures()),
            total=len(report.checks),
        )
        return report, sim

    def oracle(self, g: Multigraph, general: VertexId) -> OracleReport:
        summary = metric_summary(g, general)
        report = OracleReport(
            general=general,
            radius=format_rational(summary.radius),
            diameter=format_rational(summary.diameter),
            sync_time=format_rational(summary.radius + summary.diameter),
        )
        hop_limit = self._config.oracle.hop_limit
        try:
            point, when = longest_midpoint(g, general, hop_limit)
            report.longest_midpoint = str(point)
            report.longest_midpoint_time = format_rational(when)
        except OracleError as e:
            logger.warning("No common longest midpoint: {error}", error=e)

        rows: dict[PathKey, MidpointRow] = {}
        for p in enumerate_paths(g, hop_limit):
            rows.setdefault(
                path_key(p),
                MidpointRow(
                    path="-".join(p.vertices),
                    weight=format_rational(weight(g, p)),
                    midpoint=str(path_midpoint(g, p)),
                    time=format_rational(midpoint_time(g, general, p)),
                ),
            )
        report.midpoints = sorted(rows.values(), key=lambda r: (Fraction(r.time), r.path))
        if g.is_tree():
            report.thaw_classes = thaw_path_weight_check(thaw_graph(g)).classes
        return report

    def diagram(self, doc: TraceDocument, spec: DiagramSpec) -> str:
        return render_svg(doc, spec)

    def diagram_spec(
        self,
        edges: list[str] | None = None,
        t_min: Fraction | None = None,
        t_max: Fraction | None = None,
    ) -> DiagramSpec:
        return DiagramSpec(
            edges=tuple(edges) if edges else None,
            t_min=t_min if t_min is not None else Fraction(0),
            t_max=t_max,
            scale=self._config.diagram.scale,
        )

