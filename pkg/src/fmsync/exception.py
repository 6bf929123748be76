from __future__ import annotations


class FmsyncError(Exception):
    """Base exception for fmsync."""


class ConfigError(FmsyncError):
    """Raised when configuration file is invalid."""


class GraphError(FmsyncError):
    """Raised when a multigraph or a path over it is invalid."""


class SelfLoop(GraphError):
    def __init__(self, edge: str):
        super().__init__(f"Edge {edge} has identical endpoints")


class NonPositiveWeight(GraphError):
    def __init__(self, edge: str, weight: object):
        super().__init__(f"Edge {edge} has non-positive weight {weight}")


class Disconnected(GraphError):
    """Raised when the graph has more than one connected component."""


class Trivial(GraphError):
    """Raised when the graph has no edge."""


class UnknownVertex(GraphError):
    def __init__(self, vertex: str):
        super().__init__(f"Unknown vertex: {vertex}")


class NotAPath(GraphError):
    """Raised when a vertex/edge sequence does not walk along the graph."""


class SourceTargetMismatch(GraphError):
    """Raised when concatenating paths whose ends do not meet."""


class NotDirectionPreserving(GraphError):
    """Raised when a path immediately re-traverses the edge it just used."""


class BadDirection(FmsyncError):
    """Raised when a direction cannot be taken from a point."""


class GraphParseError(FmsyncError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class TraceFormatError(FmsyncError):
    """Raised when a trace document is malformed."""


class SuiteError(FmsyncError):
    """Raised when a verification suite file is invalid."""


class OracleError(FmsyncError):
    """Raised when an oracle construction is internally inconsistent."""


class ReachabilityFailure(OracleError):
    """Raised when a thaw-graph class is not reachable from a maximum-weight class."""


class WeightMismatch(OracleError):
    """Raised when a thaw-graph path weight disagrees with the midpoint distances."""
