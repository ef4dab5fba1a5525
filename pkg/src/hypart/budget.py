"""Search budgets: a node-expansion cap plus a wall-clock cap."""

from __future__ import annotations

import time
from dataclasses import dataclass


@dataclass(frozen=True)
class Budget:
    max_nodes: int = 10**7
    max_seconds: float | None = 60.0

    def meter(self) -> "Meter":
        return Meter(self)


class Meter:
    """Mutable counter checked against a :class:`Budget` during one search."""

    # the clock is only consulted every this many ticks
    _CLOCK_STRIDE = 1024

    def __init__(self, budget: Budget):
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self._start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self._start

    def tick(self) -> bool:
        """Count one expansion; return False once the budget is spent."""
        if self.exhausted:
            return False
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            self.exhausted = True
        elif (
            self.budget.max_seconds is not None
            and self.nodes % self._CLOCK_STRIDE == 0
            and self.elapsed > self.budget.max_seconds
        ):
            self.exhausted = True
        return not self.exhausted
