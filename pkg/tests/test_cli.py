from __future__ import annotations

from pathlib import Path

import pytest
from typer.testing import CliRunner

from fmsync.cli import EXIT_LIMIT, EXIT_USAGE, cli
from fmsync.constant import VERSION

runner = CliRunner()


@pytest.fixture(autouse=True)
def _home(isolated_home: Path) -> Path:
    return isolated_home


def test_version():
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert VERSION in result.output


def test_verify_unit_edge(unit_edge_file: Path):
    result = runner.invoke(cli, ["verify", str(unit_edge_file), "--depth", "3"])
    assert result.exit_code == 0, result.output
    assert (Path.home() / ".fmsync" / "config.json").exists()


def test_verify_needs_exactly_one_source(unit_edge_file: Path, tmp_path: Path):
    result = runner.invoke(cli, ["verify"])
    assert result.exit_code == EXIT_USAGE

    suite = tmp_path / "suite.yaml"
    suite.write_text(f"cases:\n  - name: unit\n    graph: {unit_edge_file.name}\n")
    result = runner.invoke(cli, ["verify", str(unit_edge_file), "--suite", str(suite)])
    assert result.exit_code == EXIT_USAGE


def test_verify_suite(unit_edge_file: Path, path_file: Path, tmp_path: Path):
    suite = tmp_path / "suite.yaml"
    suite.write_text(
        "version: 1\n"
        "cases:\n"
        f"  - name: unit\n    graph: {unit_edge_file.name}\n    depth: 2\n"
        f"  - name: path\n    graph: {path_file.name}\n    depth: 2\n",
        encoding="utf-8",
    )
    result = runner.invoke(cli, ["verify", "--suite", str(suite)])
    assert result.exit_code == 0, result.output


def test_simulate_budget_exit_code(unit_edge_file: Path):
    result = runner.invoke(cli, ["simulate", str(unit_edge_file), "--max-events", "1"])
    assert result.exit_code == EXIT_LIMIT


def test_simulate_rejects_negative_horizon(unit_edge_file: Path):
    result = runner.invoke(cli, ["simulate", str(unit_edge_file), "--horizon=-1"])
    assert result.exit_code == EXIT_USAGE


def test_oracle_prints_sync_time(path_file: Path, tmp_path: Path):
    report = tmp_path / "oracle.json"
    result = runner.invoke(cli, ["oracle", str(path_file), "--report", str(report)])
    assert result.exit_code == 0, result.output
    assert "5/1" in result.output
    assert '"sync_time": "5/1"' in report.read_text(encoding="utf-8")

    result = runner.invoke(cli, ["oracle", str(path_file), "--general", "a"])
    assert result.exit_code == 0, result.output
    assert "6/1" in result.output


def test_bad_graph_file(tmp_path: Path):
    bad = tmp_path / "bad.graph"
    bad.write_text("edge e a a 1\ngeneral a\n", encoding="utf-8")
    result = runner.invoke(cli, ["oracle", str(bad)])
    assert result.exit_code == EXIT_USAGE


def test_unknown_general(unit_edge_file: Path):
    result = runner.invoke(cli, ["oracle", str(unit_edge_file), "--general", "z"])
    assert result.exit_code == EXIT_USAGE


def test_simulate_writes_trace_and_diagram(unit_edge_file: Path, tmp_path: Path):
    trace = tmp_path / "run.json"
    svg = tmp_path / "run.svg"
    result = runner.invoke(
        cli,
        [
            "simulate",
            str(unit_edge_file),
            "--depth",
            "2",
            "--horizon",
            "2",
            "--trace",
            str(trace),
            "--svg",
            str(svg),
        ],
    )
    assert result.exit_code == 0, result.output
    assert trace.exists()
    assert svg.read_text(encoding="utf-8").startswith("<?xml")

    window = tmp_path / "window.svg"
    result = runner.invoke(
        cli,
        ["diagram", str(trace), "--svg", str(window), "--edge", "e", "--t-max", "3/2"],
    )
    assert result.exit_code == 0, result.output
    assert 'id="edge-e"' in window.read_text(encoding="utf-8")

    result = runner.invoke(cli, ["diagram", str(trace), "--svg", str(window), "--edge", "nope"])
    assert result.exit_code == EXIT_USAGE

    result = runner.invoke(
        cli, ["diagram", str(trace), "--svg", str(window), "--t-min", "2", "--t-max", "1"]
    )
    assert result.exit_code == EXIT_USAGE


def test_diagram_rejects_malformed_trace(tmp_path: Path):
    trace = tmp_path / "broken.json"
    trace.write_text('{"header": {}}', encoding="utf-8")
    result = runner.invoke(cli, ["diagram", str(trace), "--svg", str(tmp_path / "x.svg")])
    assert result.exit_code == EXIT_USAGE
