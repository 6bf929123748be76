from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from fmsync.engine.signal import Trace


class SingularityMinusOne(RuntimeError):
    """Raised when events would accumulate immediately after the current time."""

    def __init__(self, time: Fraction):
        super().__init__(f"Next event time is zero at time {time}")
        self.time = time


class EventBudgetExhausted(RuntimeError):
    """Raised when a run records its event budget without becoming quiescent."""

    def __init__(self, max_events: int, trace: Trace):
        super().__init__(f"Maximum events per run reached: {max_events}")
        self.trace = trace


class OvershootsEvent(RuntimeError):
    """Raised when a drift would carry signals past the next event."""

    def __init__(self, t: Fraction, limit: Fraction | float):
        super().__init__(f"Cannot drift by {t}, next event is after {limit}")


class HandlerDomainViolation(RuntimeError):
    """Raised when a transition emits a signal that cannot exist at the event site."""
