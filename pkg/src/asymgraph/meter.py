"""Asymmetric-memory cost metering.

The simulated machine has a large asymmetric memory (reads cost 1, writes
cost omega) and a small symmetric local memory that is free to access but
budgeted in words.  Every algorithm in this package threads a CostMeter
through its accesses to the large memory; local scratch is tracked via
local_scope / local_alloc and is never charged as an asymmetric write.

A "word" of local accounting is one machine integer of graph data.
Control-flow constants are not charged.
"""
from __future__ import annotations

import json
from contextlib import contextmanager


class LocalBudgetExceeded(RuntimeError):
    """Raised when a local_scope allocates past its word budget."""

    def __init__(self, peak: int, budget: int):
        super().__init__(f"local memory budget exceeded: {peak} > {budget} words")
        self.peak = peak
        self.budget = budget


class CostMeter:
    """Counters for asymmetric reads/writes plus local-memory tracking.

    charged_cost = reads + omega * writes at any point in time.
    """

    __slots__ = ("reads", "writes", "omega", "local_words", "local_hwm",
                 "local_budget", "_scope_stack")

    def __init__(self, omega: int = 16, local_budget: int | None = None):
        if omega < 1:
            raise ValueError("omega must be >= 1")
        self.reads = 0
        self.writes = 0
        self.omega = omega
        self.local_words = 0
        self.local_hwm = 0
        self.local_budget = local_budget
        self._scope_stack: list[int] = []

    # -- asymmetric memory -------------------------------------------------

    def record_read(self, count: int = 1) -> None:
        if count < 0:
            raise ValueError("count must be >= 0")
        self.reads += count

    def record_write(self, count: int = 1) -> None:
        if count < 0:
            raise ValueError("count must be >= 0")
        self.writes += count

    @property
    def charged_cost(self) -> int:
        return self.reads + self.omega * self.writes

    # -- local memory --------------------------------------------------------

    def local_alloc(self, words: int) -> None:
        self.local_words += words
        if self.local_words > self.local_hwm:
            self.local_hwm = self.local_words
        if self.local_budget is not None and self.local_words > self.local_budget:
            raise LocalBudgetExceeded(self.local_words, self.local_budget)

    def local_free(self, words: int) -> None:
        self.local_words = max(0, self.local_words - words)

    @contextmanager
    def local_scope(self):
        """Track local allocations; usage resets when the scope exits."""
        self._scope_stack.append(self.local_words)
        try:
            yield self
        finally:
            self.local_words = self._scope_stack.pop()

    # -- aggregation ---------------------------------------------------------

    def merge(self, other: "CostMeter") -> None:
        """Fold another meter's counters into this one (post-join)."""
        self.reads += other.reads
        self.writes += other.writes
        if other.local_hwm > self.local_hwm:
            self.local_hwm = other.local_hwm

    def as_dict(self) -> dict:
        return {
            "reads": self.reads,
            "writes": self.writes,
            "omega": self.omega,
            "charged": self.charged_cost,
            "local_hwm": self.local_hwm,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return (f"CostMeter(reads={self.reads}, writes={self.writes}, "
                f"omega={self.omega}, local_hwm={self.local_hwm})")


def local_scope(meter: CostMeter, f):
    """Run f() inside a fresh local-memory scope of the meter."""
    with meter.local_scope():
        return f()
