from __future__ import annotations

from rich.console import Console
from rich.table import Table

from fmsync.app import OracleReport, Simulation
from fmsync.oracle.check import VerificationReport
from fmsync.utils.rational import format_rational

console = Console()


def render_verification(name: str, report: VerificationReport) -> None:
    status = "[green]passed[/green]" if report.passed else "[red]failed[/red]"
    table = Table(title=f"{name}: {status} (sync time {format_rational(report.sync_time)})")
    table.add_column("Check")
    table.add_column("Result")
    table.add_column("Detail", overflow="fold")
    for check in report.checks:
        result = "[green]ok[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(check.name, result, check.detail)
    console.print(table)


def render_oracle(report: OracleReport, limit: int = 20) -> None:
    console.print(f"general        {report.general}")
    console.print(f"radius         {report.radius}")
    console.print(f"diameter       {report.diameter}")
    console.print(f"sync time      {report.sync_time}")
    if report.longest_midpoint is not None:
        console.print(
            f"longest paths  midpoint {report.longest_midpoint} at {report.longest_midpoint_time}"
        )
    if report.thaw_classes is not None:
        console.print(f"thaw graph     {report.thaw_classes} classes, weights consistent")

    table = Table(title="Midpoints")
    for column in ("Path", "Weight", "Midpoint", "Time"):
        table.add_column(column)
    for row in report.midpoints[:limit]:
        table.add_row(row.path, row.weight, row.midpoint, row.time)
    console.print(table)
    if len(report.midpoints) > limit:
        console.print(f"... {len(report.midpoints) - limit} more paths")


def render_simulation(sim: Simulation) -> None:
    trace = sim.trace
    entries = sum(len(batch.entries) for batch in trace.events)
    console.print(f"machine        {sim.machine.name}")
    console.print(f"outcome        {trace.outcome.value} at {format_rational(trace.end_time)}")
    console.print(f"events         {len(trace.events)} batches, {entries} event points")
