from __future__ import annotations

from dataclasses import dataclass

from fmsync.constant import MACHINE_VERSION
from fmsync.continuum import AtVertex, Direction, Point, dirs
from fmsync.engine.signal import MachineDef, Signal, SignalSet
from fmsync.exception import UnknownVertex
from fmsync.fssp import cutting
from fmsync.fssp import kinds as k
from fmsync.fssp.rules import FsspRules
from fmsync.graph import Multigraph, VertexId


@dataclass(frozen=True, slots=True, kw_only=True)
class FsspMachine:
    """The synchronisation machine for a given divide-depth cap."""

    rules: FsspRules

    @staticmethod
    def create(depth_cap: int = 4, strict_pairs: bool = False) -> FsspMachine:
        if depth_cap < 1:
            raise ValueError(f"Depth cap must be at least 1, got {depth_cap}")
        return FsspMachine(rules=FsspRules(depth_cap=depth_cap, strict_pairs=strict_pairs))

    @property
    def depth_cap(self) -> int:
        return self.rules.depth_cap

    def delta_e(self, signals: SignalSet) -> SignalSet:
        return cutting.delta_e(self.rules, signals)

    def delta_v(self, directions: frozenset[Direction], signals: SignalSet) -> SignalSet:
        return cutting.delta_v(self.rules, directions, signals)

    def definition(self) -> MachineDef:
        return MachineDef(
            name=f"{MACHINE_VERSION} N={self.depth_cap}",
            speeds=k.kind_table(self.depth_cap),
            delta_e=self.delta_e,
            delta_v=self.delta_v,
        )


def make_machine(depth_cap: int = 4, strict_pairs: bool = False) -> MachineDef:
    return FsspMachine.create(depth_cap, strict_pairs).definition()


def initial_configuration(
    g: Multigraph, general: VertexId, depth_cap: int
) -> dict[Point, SignalSet]:
    """Everything starts at the general: the initiate signal, the divide family of
    types ``0 .. depth_cap`` and both find-midpoint signals on every incident edge."""
    if not g.has_vertex(general):
        raise UnknownVertex(general)
    point = AtVertex(general)
    directions = dirs(g, point)
    leafy = k.is_in_leaf(directions)
    signals: set[Signal] = set()
    for d in directions:
        signals.add(k.initiate(d))
        signals |= k.divide_family(d, depth_cap + 1)
        signals.add(k.find_midpoint(k.LAMBDA, d))
        signals.add(k.slowed_find_midpoint(d, k.LAMBDA, k.LAMBDA, leafy))
    return {point: frozenset(signals)}
