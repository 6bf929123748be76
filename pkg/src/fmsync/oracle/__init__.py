from fmsync.oracle.cascade import cascade_positions, division_positions, fire_positions
from fmsync.oracle.check import VerificationReport, check_trace, expected_sync_time
from fmsync.oracle.paths import (
    enumerate_paths,
    longest_midpoint,
    midpoint_time,
    path_midpoint,
    sync_time,
)
from fmsync.oracle.thaw import thaw_graph, thaw_path_weight_check
from fmsync.oracle.virtual import is_tree, virtual_tree

__all__ = [
    "VerificationReport",
    "cascade_positions",
    "check_trace",
    "division_positions",
    "enumerate_paths",
    "expected_sync_time",
    "fire_positions",
    "is_tree",
    "longest_midpoint",
    "midpoint_time",
    "path_midpoint",
    "sync_time",
    "thaw_graph",
    "thaw_path_weight_check",
    "virtual_tree",
]
