from __future__ import annotations

from collections.abc import Iterable


class PairOverlap(RuntimeError):
    """Raised in strict mode when one signal belongs to two rule-bearing pairs."""

    def __init__(self, signals: Iterable[object]):
        super().__init__(f"Signal in more than one colliding pair: {', '.join(map(str, signals))}")
