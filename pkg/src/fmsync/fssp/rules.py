"""Transition rules for trees.

Pair rules return None when no rule applies to the pair. Rules are tried in a fixed
order and the first match wins.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations

from fmsync.continuum import EVERY, Direction
from fmsync.engine import HandlerDomainViolation
from fmsync.engine.signal import Signal, SignalSet
from fmsync.fssp import PairOverlap
from fmsync.fssp import kinds as k
from fmsync.fssp.kinds import LAMBDA, Word
from fmsync.utils.logging import logger

type Pair = frozenset[Signal]


def frozen(s: Signal) -> Signal:
    """Freeze a divide, reflected divide or fire signal; other signals are unchanged."""
    if isinstance(s.dir, Direction):
        n = k.divide_type(s.kind)
        if n is not None:
            return Signal(k.frozen_divide(n), EVERY, s.dir)
        if s.kind == k.DR:
            return Signal(k.FDR, EVERY, s.dir)
    elif s.kind == k.X:
        return k.FROZEN_FIRE
    return s


def thawed(s: Signal) -> Signal:
    n = k.frozen_divide_type(s.kind)
    if n is not None:
        assert isinstance(s.datum, Direction)
        return k.divide_signal(n, s.datum)
    if s.kind == k.FDR:
        assert isinstance(s.datum, Direction)
        return k.reflected_divide(s.datum)
    if s.kind == k.FX:
        return k.FIRE
    return s


def _thaws_edge(s: Signal) -> bool:
    return s.kind == k.T and s.datum == (LAMBDA, True)


def nu(old: SignalSet, new: SignalSet) -> SignalSet:
    """Freeze or thaw the new signals of an event depending on the fronts involved.

    A moving signal that travels together with a freeze signal is carried along by the
    front instead of being frozen.
    """
    signals = old | new
    fronts = {s.dir for s in signals if s.kind == k.F}
    thawing = any(_thaws_edge(s) for s in signals)
    if fronts and not thawing:
        return frozenset(s if s.dir in fronts else frozen(s) for s in new)
    if thawing and not fronts:
        return frozenset(thawed(s) for s in new)
    return new


def kappa(signals: Iterable[Signal]) -> frozenset[Direction]:
    """Directions from which the slowest find-midpoint signals have returned."""
    found: set[Direction] = set()
    for s in signals:
        match s:
            case Signal(kind=k.C, datum=frozenset() as memory):
                found |= memory
            case Signal(kind=k.UR, dir=Direction() as d, datum=((), _, True)):
                found.add(d)
            case Signal(kind=k.V, dir=Direction() as d, datum=(_, _, True)):
                found.add(d)
    return frozenset(found)


def varkappa(signals: Iterable[Signal]) -> bool:
    return any(s.kind == k.I for s in signals)


def _other_word(words: frozenset[Word], w: Word) -> Word | None:
    if w not in words or len(words) != 2:
        return None
    (other,) = words - {w}
    return other


def _pass_through(directions: frozenset[Direction], s: Signal) -> set[Signal]:
    if s.dir is EVERY:
        return {s}
    assert isinstance(s.dir, Direction)
    back = -s.dir
    return {Signal(s.kind, e, s.datum) for e in directions if e != back}


@dataclass(frozen=True, slots=True, kw_only=True)
class FsspRules:
    depth_cap: int
    strict_pairs: bool = False

    def delta_e2_tree(self, pair: Pair, present: SignalSet = frozenset()) -> SignalSet | None:
        """Collision of two signals inside an edge.

        `present` is the whole set of signals at the collision point; an edge midpoint
        that is already designated is not frozen a second time.
        """
        if len(pair) != 2:
            raise ValueError(f"Expected two signals, got {len(pair)}")
        s, t = pair
        result = self._edge_rule(s, t, present)
        return result if result is not None else self._edge_rule(t, s, present)

    def _edge_rule(self, s: Signal, t: Signal, present: SignalSet) -> SignalSet | None:
        match s, t:
            case Signal(kind=k.D0, dir=Direction() as d), Signal(kind=k.B):
                return frozenset({k.reflected_divide(-d), k.BOUNDARY})
            case Signal(kind=k.DR, dir=Direction() as back), Signal(
                kind=kind, dir=Direction() as d
            ) if back == -d and k.divide_type(kind) is not None:
                n = k.divide_type(kind)
                assert n is not None
                return frozenset({k.BOUNDARY, s} | k.divide_family(d, n))
            case Signal(kind=k.UR, dir=Direction() as d, datum=((), (), b)), Signal(
                kind=k.V, dir=Direction() as d2, datum=((), (), b2)
            ) if d2 == -d:
                if b and b2:
                    return frozenset()
                mid = k.midpoint((-d,), (d,))
                out = {s, t, mid}
                if mid not in present:
                    out |= {k.freeze(-d), k.freeze(d)}
                return frozenset(out)
            case Signal(kind=k.UR, dir=Direction() as d, datum=(w_o, w_r, b)), Signal(
                kind=k.V, dir=Direction() as d2, datum=(w_o2, w_r2, b2)
            ) if d2 == -d and w_o == w_o2:
                if not (b and b2):
                    return frozenset({s, t, k.midpoint((-d, *w_r), (d, *w_o, *w_r2))})
                return frozenset({k.thaw(-d, w_r, False), k.thaw(d, (*w_o, *w_r2), False)})
            case Signal(kind=k.T, dir=Direction() as d, datum=(w, False)), Signal(
                kind=k.M, datum=frozenset() as words
            ):
                other = _other_word(words, (d, *w))
                if other is None:
                    return None
                d2, w2 = other[0], other[1:]
                empty = k.are_empty(w, w2)
                out = {k.thaw(d, w, empty), k.thaw(d2, w2, empty)}
                if empty:
                    # the edge midpoint stays designated
                    out.add(t)
                return frozenset(out)
            case Signal(kind=k.DR), Signal(kind=k.B):
                return frozenset({k.FIRE})
        return None

    def delta_v1_tree(
        self,
        directions: frozenset[Direction],
        returned: frozenset[Direction],
        first: bool,
        s: Signal,
    ) -> SignalSet:
        """A single signal reaching a vertex whose outgoing directions are `directions`.

        `returned` holds the directions the slowest marked signals came back from (see
        `kappa`) and `first` tells whether the signal travels with an initiate signal.
        A marked find-midpoint signal keeps its mark only on its way into the one
        direction nothing has returned from yet.
        """
        toward = k.open_direction(directions, returned)
        match s:
            case Signal(kind=k.D0, dir=Direction() as d):
                return frozenset({k.reflected_divide(-d)})
            case Signal(kind=k.DR):
                return frozenset({k.FIRE})
            case Signal(kind=k.I, dir=Direction() as d):
                out: set[Signal] = set()
                for e in directions:
                    if e != -d:
                        out.add(k.initiate(e))
                        out |= k.divide_family(e, self.depth_cap + 1)
                leafy = k.is_in_leaf(directions)
                for e in directions:
                    out.add(k.find_midpoint(LAMBDA, e))
                    out.add(k.slowed_find_midpoint(e, LAMBDA, LAMBDA, leafy))
                return frozenset(out)
            case Signal(kind=k.U, dir=Direction() as d, datum=w_o):
                marked = first and k.is_in_leaf(directions)
                out = {k.reflected_find_midpoint(w_o, -d, LAMBDA, marked)}
                out |= {k.find_midpoint((-d, *w_o), e) for e in directions if e != -d}
                return frozenset(out)
            case Signal(kind=k.UR, dir=Direction() as d, datum=((), w_r, marked)):
                return frozenset(
                    k.slowed_find_midpoint(e, LAMBDA, (-d, *w_r), marked and e == toward)
                    for e in directions
                    if e != -d
                )
            case Signal(kind=k.UR, dir=Direction() as d, datum=((e, *w_o), w_r, marked)):
                flag = marked and e == toward
                return frozenset({k.reflected_find_midpoint(tuple(w_o), e, (-d, *w_r), flag)})
            case Signal(kind=k.V, dir=Direction() as d, datum=(w_o, w_r, marked)):
                return frozenset(
                    k.slowed_find_midpoint(e, (-d, *w_o), w_r, marked and e == toward)
                    for e in directions
                    if e != -d
                )
            case Signal(kind=k.F):
                return frozenset()
            case Signal(kind=k.T, datum=((), True)):
                return frozenset()
            case Signal(kind=k.T, datum=((e, *w), False)):
                return frozenset({k.thaw(e, tuple(w), False)})
            case Signal(kind=k.T, datum=((), False)):
                raise HandlerDomainViolation(f"Thaw signal {s} reached a vertex with no path left")
        return frozenset(_pass_through(directions, s))

    def delta_v2_tree(
        self, directions: frozenset[Direction], returned: frozenset[Direction], pair: Pair
    ) -> SignalSet | None:
        """Collision of two signals in a vertex.

        A thaw starts only once marked signals have returned from every direction.
        """
        if len(pair) != 2:
            raise ValueError(f"Expected two signals, got {len(pair)}")
        s, t = pair
        result = self._vertex_rule(directions, returned, s, t)
        return result if result is not None else self._vertex_rule(directions, returned, t, s)

    def _vertex_rule(
        self,
        directions: frozenset[Direction],
        returned: frozenset[Direction],
        s: Signal,
        t: Signal,
    ) -> SignalSet | None:
        settled = len(returned) == len(directions)
        match s, t:
            case Signal(kind=k.DR), Signal(kind=k.B):
                return frozenset({k.FIRE})
            case Signal(kind=k.UR, dir=Direction() as d, datum=((head, *w_o), w_r, b)), Signal(
                kind=k.V, dir=Direction() as d2, datum=(w_o2, w_r2, b2)
            ) if head == -d2 and tuple(w_o) == w_o2:
                if not (b and b2 and settled):
                    return (
                        self.delta_v1_tree(directions, returned, False, s)
                        | self.delta_v1_tree(directions, returned, False, t)
                        | {k.midpoint((-d, *w_r), (-d2, *w_o2, *w_r2))}
                    )
                return frozenset({k.thaw(-d, w_r, False), k.thaw(-d2, (*w_o2, *w_r2), False)})
            case Signal(kind=k.UR, dir=Direction() as d, datum=((), w_r, b)), Signal(
                kind=k.UR, dir=Direction() as d2, datum=((), w_r2, b2)
            ) if d != d2:
                if not (b and b2 and settled):
                    return (
                        self.delta_v1_tree(directions, returned, False, s)
                        | self.delta_v1_tree(directions, returned, False, t)
                        | {k.midpoint((-d, *w_r), (-d2, *w_r2))}
                    )
                return frozenset({k.thaw(-d, w_r, False), k.thaw(-d2, w_r2, False)})
            case Signal(kind=k.T, datum=(w, False)), Signal(kind=k.M, datum=frozenset() as words):
                other = _other_word(words, w) if w else None
                if other is None:
                    return None
                return frozenset(
                    {k.thaw(w[0], w[1:], False), k.thaw(other[0], other[1:], False)}
                )
        return None

    def _check_overlap(self, rule_pairs: dict[Pair, SignalSet]) -> None:
        uses = Counter(s for pair in rule_pairs for s in pair)
        shared = sorted((str(s) for s, times in uses.items() if times > 1))
        if not shared:
            return
        if self.strict_pairs:
            raise PairOverlap(shared)
        logger.debug("Combining overlapping collision pairs around {signals}", signals=shared)

    def delta_e_tree(self, signals: SignalSet) -> SignalSet:
        rule_pairs: dict[Pair, SignalSet] = {}
        for a, b in combinations(signals, 2):
            pair = frozenset({a, b})
            result = self.delta_e2_tree(pair, signals)
            if result is not None:
                rule_pairs[pair] = result
        self._check_overlap(rule_pairs)

        paired = frozenset().union(*rule_pairs)
        out = set(signals - paired)
        for result in rule_pairs.values():
            out |= result
        return nu(signals, frozenset(out))

    def delta_v_tree(self, directions: frozenset[Direction], signals: SignalSet) -> SignalSet:
        rest = frozenset(s for s in signals if s.kind != k.C)
        memory = kappa(signals)

        rule_pairs: dict[Pair, SignalSet] = {}
        for a, b in combinations(rest, 2):
            pair = frozenset({a, b})
            result = self.delta_v2_tree(directions, memory, pair)
            if result is not None:
                rule_pairs[pair] = result
        self._check_overlap(rule_pairs)

        out: set[Signal] = set() if k.is_in_leaf(directions) else {k.count(memory)}
        first = varkappa(signals)
        paired = frozenset().union(*rule_pairs)
        for s in rest - paired:
            out |= self.delta_v1_tree(directions, memory, first, s)
        for result in rule_pairs.values():
            out |= result
        return nu(signals, frozenset(out))
