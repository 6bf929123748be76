"""Virtual cuts: colliding initiate signals turn any multigraph into a virtual tree.

Leaf signals mark the cuts. Signals that run into a leaf signal are handled as if they
reached a leaf vertex with the single outgoing direction stored in the leaf signal.
"""

from __future__ import annotations

from fmsync.continuum import EVERY, Direction
from fmsync.engine import HandlerDomainViolation
from fmsync.engine.signal import SignalSet
from fmsync.fssp import kinds as k
from fmsync.fssp.rules import FsspRules


def initiate_sources(signals: SignalSet) -> frozenset[Direction]:
    """Reversed directions of the initiate signals, pointing back where they came from."""
    return frozenset(-s.dir for s in signals if s.kind == k.I and isinstance(s.dir, Direction))


def leaf_cuts_on_edge(signals: SignalSet) -> SignalSet:
    sources = initiate_sources(signals)
    if len(sources) <= 1:
        return frozenset()
    return frozenset(k.leaf(d) for d in sources)


def leaf_cuts_at_vertex(directions: frozenset[Direction], signals: SignalSet) -> SignalSet:
    """Cut the edges initiate signals arrived on, keeping one of them when not all did."""
    sources = initiate_sources(signals)
    if len(sources) <= 1:
        return frozenset()
    if sources == directions and not k.is_in_leaf(directions):
        return frozenset(k.leaf(d) for d in directions)
    kept = min(sources)
    return frozenset(k.leaf(d) for d in sources if d != kept)


def _split(
    signals: SignalSet,
) -> tuple[SignalSet, dict[Direction, SignalSet], SignalSet]:
    leaves = frozenset(s for s in signals if s.kind == k.L)
    cuts = {s.datum for s in leaves if isinstance(s.datum, Direction)}
    toward = {d: frozenset(s for s in signals if s.dir == -d) for d in sorted(cuts)}
    rest = signals - leaves - frozenset().union(*toward.values())
    return leaves, toward, rest


def _edge_boundary(rules: FsspRules, signals: SignalSet) -> SignalSet:
    return frozenset() if len(signals) <= 1 else rules.delta_e_tree(signals)


def _vertex_boundary(
    rules: FsspRules, directions: frozenset[Direction], signals: SignalSet
) -> SignalSet:
    if not directions or not signals:
        return frozenset()
    return rules.delta_v_tree(directions, signals)


def delta_e_virtual(rules: FsspRules, signals: SignalSet) -> SignalSet:
    leaves, toward, rest = _split(signals)
    if toward and any(s.dir is EVERY for s in rest):
        stationary = sorted(str(s) for s in rest if s.dir is EVERY)
        raise HandlerDomainViolation(f"Stationary signals at a virtual leaf: {stationary}")
    out = set(leaves) | _edge_boundary(rules, rest)
    for d, part in toward.items():
        out |= _vertex_boundary(rules, frozenset({d}), part)
    return frozenset(out)


def delta_v_virtual(
    rules: FsspRules, directions: frozenset[Direction], signals: SignalSet
) -> SignalSet:
    leaves, toward, rest = _split(signals)
    out = set(leaves) | _vertex_boundary(rules, directions - frozenset(toward), rest)
    for d, part in toward.items():
        out |= _vertex_boundary(rules, frozenset({d}), part)
    return frozenset(out)


def delta_e(rules: FsspRules, signals: SignalSet) -> SignalSet:
    return delta_e_virtual(rules, signals | leaf_cuts_on_edge(signals))


def delta_v(rules: FsspRules, directions: frozenset[Direction], signals: SignalSet) -> SignalSet:
    return delta_v_virtual(rules, directions, signals | leaf_cuts_at_vertex(directions, signals))
