from fmsync.io.graphfile import parse_graph, read_graph
from fmsync.io.svg import DiagramSpec, render_svg
from fmsync.io.suite import load_suite
from fmsync.io.trace import TraceDocument, load_trace, read_trace, save_trace, write_trace

__all__ = [
    "DiagramSpec",
    "TraceDocument",
    "load_suite",
    "load_trace",
    "parse_graph",
    "read_graph",
    "read_trace",
    "render_svg",
    "save_trace",
    "write_trace",
]
