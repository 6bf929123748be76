from __future__ import annotations

import sys
from collections.abc import Callable
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Annotated

import typer

from fmsync.constant import VERSION

if TYPE_CHECKING:
    from fmsync.graph import Multigraph, VertexId

cli = typer.Typer(
    add_completion=False,
    context_settings={"help_option_names": ["-h", "--help"]},
    help="fmsync, exact signal machines that synchronise firing mobs on weighted graphs.",
)

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

GraphFile = Annotated[
    Path,
    typer.Argument(exists=True, file_okay=True, dir_okay=False, readable=True, help="Graph file."),
]
DepthOption = Annotated[
    int | None,
    typer.Option("--depth", "-n", min=1, help="Highest divide type. Default: config file."),
]
GeneralOption = Annotated[
    str | None,
    typer.Option("--general", "-g", help="Start vertex. Default: the graph file's general."),
]
ConfigOption = Annotated[
    Path | None,
    typer.Option(
        "--config-file",
        exists=True,
        file_okay=True,
        dir_okay=False,
        readable=True,
        help="Configuration file. Default: ~/.fmsync/config.json.",
    ),
]


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"fmsync, version {VERSION}")
        raise typer.Exit()


def _parse_time(value: str | None, hint: str) -> Fraction | None:
    from fmsync.utils.rational import parse_rational_loose

    if value is None:
        return None
    try:
        parsed = parse_rational_loose(value)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint=hint) from e
    if parsed < 0:
        raise typer.BadParameter("Time must not be negative", param_hint=hint)
    return parsed


def _guarded[T](action: Callable[[], T]) -> T:
    """Run `action`, turning domain failures into the documented exit codes."""
    from fmsync.engine import (
        EventBudgetExhausted,
        HandlerDomainViolation,
        OvershootsEvent,
        SingularityMinusOne,
    )
    from fmsync.exception import FmsyncError
    from fmsync.fssp import PairOverlap
    from fmsync.utils.logging import logger

    try:
        return action()
    except FmsyncError as e:
        logger.error("{error}", error=e)
        typer.echo(f"error: {e}", err=True)
        sys.exit(EXIT_USAGE)
    except (
        EventBudgetExhausted,
        SingularityMinusOne,
        OvershootsEvent,
        HandlerDomainViolation,
        PairOverlap,
    ) as e:
        logger.error("{error}", error=e)
        typer.echo(f"simulation stopped: {e}", err=True)
        sys.exit(EXIT_LIMIT)


def _load_graph(graph_file: Path, general: str | None) -> tuple[Multigraph, VertexId]:
    from fmsync.exception import UnknownVertex
    from fmsync.io.graphfile import read_graph

    g, declared = read_graph(graph_file)
    chosen = general or declared
    if not g.has_vertex(chosen):
        raise UnknownVertex(chosen)
    return g, chosen


@cli.callback()
def fmsync(
    version: Annotated[
        bool,
        typer.Option(
            "--version",
            "-V",
            help="Show version and exit.",
            callback=_version_callback,
            is_eager=True,
        ),
    ] = False,
    debug: Annotated[
        bool,
        typer.Option("--debug", help="Log debug information. Default: no."),
    ] = False,
):
    del version

    from fmsync.app import enable_logging

    enable_logging(debug)


@cli.command()
def simulate(
    graph_file: GraphFile,
    depth: DepthOption = None,
    general: GeneralOption = None,
    horizon: Annotated[
        str | None,
        typer.Option("--horizon", help="Stop after this time, e.g. 9/2. Default: config file."),
    ] = None,
    max_events: Annotated[
        int | None,
        typer.Option("--max-events", min=1, help="Event batch budget. Default: config file."),
    ] = None,
    trace_out: Annotated[
        Path | None,
        typer.Option("--trace", dir_okay=False, writable=True, help="Write the trace as JSON."),
    ] = None,
    svg_out: Annotated[
        Path | None,
        typer.Option("--svg", dir_okay=False, writable=True, help="Write a space-time diagram."),
    ] = None,
    config_file: ConfigOption = None,
):
    """Run the synchronisation machine on a graph."""
    from fmsync.app import FmsyncApp
    from fmsync.io.trace import save_trace
    from fmsync.ui.print import render_simulation

    stop = _parse_time(horizon, "--horizon")

    def _run() -> None:
        g, chosen = _load_graph(graph_file, general)
        app = FmsyncApp.create(
            config_file=config_file, depth_cap=depth, max_events=max_events, horizon=stop
        )
        sim = app.simulate(g, chosen)
        render_simulation(sim)
        if trace_out is not None or svg_out is not None:
            doc = app.document(g, chosen, sim)
            if trace_out is not None:
                save_trace(doc, trace_out)
            if svg_out is not None:
                svg_out.write_text(app.diagram(doc, app.diagram_spec()), encoding="utf-8")

    _guarded(_run)


@cli.command()
def oracle(
    graph_file: GraphFile,
    general: GeneralOption = None,
    report_out: Annotated[
        Path | None,
        typer.Option("--report", dir_okay=False, writable=True, help="Write the report as JSON."),
    ] = None,
    config_file: ConfigOption = None,
):
    """Print the analytic predictions for a graph."""
    from fmsync.app import FmsyncApp
    from fmsync.ui.print import render_oracle

    def _run() -> None:
        g, chosen = _load_graph(graph_file, general)
        report = FmsyncApp.create(config_file=config_file).oracle(g, chosen)
        render_oracle(report)
        if report_out is not None:
            report_out.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")

    _guarded(_run)


@cli.command()
def verify(
    graph_file: Annotated[
        Path | None,
        typer.Argument(exists=True, dir_okay=False, readable=True, help="Graph file."),
    ] = None,
    depth: DepthOption = None,
    general: GeneralOption = None,
    suite: Annotated[
        Path | None,
        typer.Option("--suite", exists=True, dir_okay=False, help="YAML suite of cases."),
    ] = None,
    config_file: ConfigOption = None,
):
    """Simulate up to the synchronisation time and check every prediction."""
    from fmsync.app import FmsyncApp
    from fmsync.io.suite import load_suite
    from fmsync.ui.print import render_verification

    if (graph_file is None) == (suite is None):
        raise typer.BadParameter("Give either a graph file or --suite", param_hint="--suite")

    def _run() -> bool:
        if graph_file is not None:
            cases = [(graph_file.stem, graph_file, depth, general)]
        else:
            assert suite is not None
            cases = [(c.name, c.graph_file, c.depth or depth, c.general) for c in load_suite(suite)]
        passed = True
        for name, path, case_depth, case_general in cases:
            g, chosen = _load_graph(path, case_general)
            app = FmsyncApp.create(config_file=config_file, depth_cap=case_depth)
            report, _ = app.verify(g, chosen)
            render_verification(name, report)
            passed = passed and report.passed
        return passed

    if not _guarded(_run):
        sys.exit(EXIT_VERIFY_FAILED)


@cli.command()
def diagram(
    trace_file: Annotated[
        Path,
        typer.Argument(exists=True, dir_okay=False, readable=True, help="Trace JSON file."),
    ],
    svg_out: Annotated[
        Path,
        typer.Option("--svg", dir_okay=False, writable=True, help="Output SVG file."),
    ],
    edges: Annotated[
        list[str] | None,
        typer.Option("--edge", "-e", help="Edge to draw, repeatable. Default: all edges."),
    ] = None,
    t_min: Annotated[str | None, typer.Option("--t-min", help="First time shown.")] = None,
    t_max: Annotated[str | None, typer.Option("--t-max", help="Last time shown.")] = None,
    config_file: ConfigOption = None,
):
    """Render a saved trace as a space-time diagram."""
    from fmsync.app import FmsyncApp
    from fmsync.io.trace import load_trace

    start, stop = _parse_time(t_min, "--t-min"), _parse_time(t_max, "--t-max")
    if start is not None and stop is not None and stop < start:
        raise typer.BadParameter("--t-max is before --t-min", param_hint="--t-max")

    def _run() -> None:
        doc = load_trace(trace_file)
        app = FmsyncApp.create(config_file=config_file)
        spec = app.diagram_spec(edges, start, stop)
        try:
            svg = app.diagram(doc, spec)
        except ValueError as e:
            raise typer.BadParameter(str(e), param_hint="--edge") from e
        svg_out.write_text(svg, encoding="utf-8")

    _guarded(_run)


if __name__ == "__main__":
    if "fmsync.cli" not in sys.modules:
        sys.modules["fmsync.cli"] = sys.modules[__name__]

    sys.exit(cli())
