"""Kinds, speeds and signal constructors of the synchronisation machine.

Data carried per kind:

- ``M``: frozenset of two distinct words (directions from the midpoint to the path ends)
- ``U``: word back to the origin vertex
- ``UR`` and ``V``: ``(word to origin, word to reflection vertex, marked)``
- ``T``: ``(remaining word, thawing)``
- ``C``: frozenset of arrival directions
- ``L``, ``FD<n>`` and ``FDR``: a direction
- everything else: nothing
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from fractions import Fraction

from fmsync.continuum import EVERY, Direction
from fmsync.engine.signal import KindId, Signal

type Word = tuple[Direction, ...]

LAMBDA: Word = ()

RATIO = Fraction(2, 3)

I: KindId = "I"
D0: KindId = "D0"
L: KindId = "L"
C: KindId = "C"
M: KindId = "M"
U: KindId = "U"
UR: KindId = "UR"
V: KindId = "V"
F: KindId = "F"
T: KindId = "T"
DR: KindId = "DR"
FDR: KindId = "FDR"
B: KindId = "B"
X: KindId = "X"
FX: KindId = "FX"

_DIVIDE_RE = re.compile(r"^D(\d+)$")
_FROZEN_DIVIDE_RE = re.compile(r"^FD(\d+)$")


def divide(n: int) -> KindId:
    return f"D{n}"


def frozen_divide(n: int) -> KindId:
    return f"FD{n}"


def divide_type(kind: KindId) -> int | None:
    """The type ``n`` of a divide kind ``D<n>``, or None for any other kind."""
    match = _DIVIDE_RE.match(kind)
    return None if match is None else int(match.group(1))


def frozen_divide_type(kind: KindId) -> int | None:
    match = _FROZEN_DIVIDE_RE.match(kind)
    return None if match is None else int(match.group(1))


def divide_speed(n: int) -> Fraction:
    """Speed of divide signals of type `n`; type 0 travels at speed 1."""
    power = RATIO**n
    return power / (2 - power)


def kind_table(depth_cap: int) -> dict[KindId, Fraction]:
    if depth_cap < 1:
        raise ValueError(f"Depth cap must be at least 1, got {depth_cap}")
    one, zero = Fraction(1), Fraction(0)
    speeds: dict[KindId, Fraction] = {
        I: one,
        L: zero,
        C: zero,
        M: zero,
        U: one,
        UR: one,
        V: Fraction(1, 3),
        F: one,
        T: one,
        DR: one,
        FDR: zero,
        B: zero,
        X: zero,
        FX: zero,
    }
    for n in range(depth_cap + 1):
        speeds[divide(n)] = divide_speed(n)
        speeds[frozen_divide(n)] = zero
    return speeds


def initiate(d: Direction) -> Signal:
    return Signal(I, d)


def leaf(d: Direction) -> Signal:
    return Signal(L, EVERY, d)


def count(directions: Iterable[Direction]) -> Signal:
    return Signal(C, EVERY, frozenset(directions))


def midpoint(w: Word, w2: Word) -> Signal:
    if w == w2:
        raise ValueError(f"Midpoint words must differ: {w}")
    return Signal(M, EVERY, frozenset({w, w2}))


def find_midpoint(w_o: Word, d: Direction) -> Signal:
    return Signal(U, d, w_o)


def reflected_find_midpoint(w_o: Word, d: Direction, w_r: Word, marked: bool) -> Signal:
    return Signal(UR, d, (w_o, w_r, marked))


def slowed_find_midpoint(d: Direction, w_o: Word, w_r: Word, marked: bool) -> Signal:
    return Signal(V, d, (w_o, w_r, marked))


def freeze(d: Direction) -> Signal:
    return Signal(F, d)


def thaw(d: Direction, w: Word, thawing: bool) -> Signal:
    return Signal(T, d, (w, thawing))


def divide_signal(n: int, d: Direction) -> Signal:
    return Signal(divide(n), d)


def divide_family(d: Direction, upto: int) -> set[Signal]:
    """Divide signals of types ``0 .. upto - 1`` heading along `d`."""
    return {divide_signal(n, d) for n in range(upto)}


def reflected_divide(d: Direction) -> Signal:
    return Signal(DR, d)


BOUNDARY = Signal(B, EVERY)
FIRE = Signal(X, EVERY)
FROZEN_FIRE = Signal(FX, EVERY)


def are_empty(w: Word, w2: Word) -> bool:
    return len(w) == 0 and len(w2) == 0


def is_in_leaf(directions: frozenset[Direction]) -> bool:
    return len(directions) == 1


def is_penultimate(directions: frozenset[Direction], n: int) -> bool:
    return len(directions) - 1 == n


def open_direction(
    directions: frozenset[Direction], returned: frozenset[Direction]
) -> Direction | None:
    """The one outgoing direction nothing marked has returned from yet, if it is unique.

    `returned` holds arrival directions, so a return along `e` is recorded as ``-e``.
    """
    if not is_penultimate(directions, len(returned)):
        return None
    waiting = [e for e in directions if -e not in returned]
    return waiting[0] if len(waiting) == 1 else None


def is_fire(s: Signal) -> bool:
    return s.kind == X
