"""Emission records: the unit of statistics and of master/slave messages."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class EmissionRecord:
    solution: str
    low: Fraction | None      # interval endpoints; None for index-based algos
    high: Fraction | None
    width: Fraction
    attempts: int = 1
    tick: int | Fraction = 0


class VirtualClock:
    """Injected tick counter; the enumeration kernels never read wall time."""

    def __init__(self, start: int = 0):
        self.now: int | Fraction = start

    def advance(self, ticks=1):
        self.now += ticks
