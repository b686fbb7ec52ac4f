"""Las Vegas random-order enumeration driven by a deterministic
approximate counter.

The interval access maps a seed r in [0,1) to a solution and its interval
by recursive quasi-pivot partitioning; the driver samples seeds from the
not-yet-banned part of [0,1) and applies an exact rejection test so every
emission is uniform over the remaining solutions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .interval_tree import BannedIntervalTree, generate_seed
from .problem import SelfReducibleProblem
from .record import EmissionRecord, VirtualClock

ZERO = Fraction(0)
ONE = Fraction(1)


class EmptyBranch(Exception):
    """Both child estimates were 0 at positive depth: the approximate
    counter violated its contract (a true eps < 1 counter never maps a
    nonempty solution set to 0)."""


class NonTerminating(Exception):
    """Attempt watchdog fired; signals a broken oracle."""


@dataclass
class IntervalHit:
    """Solution f(r) together with its interval [low, high)."""

    solution: str
    low: Fraction
    high: Fraction

    @property
    def width(self) -> Fraction:
        return self.high - self.low


def bernoulli_less(rng: random.Random, threshold: Fraction) -> bool:
    """Exact Bernoulli(threshold) draw: compare a lazily generated uniform
    p in [0,1) against threshold bit by bit. No precision parameter, zero
    bias; terminates after 2 bits in expectation."""
    if threshold <= 0:
        return False
    if threshold >= 1:
        return True
    t = threshold
    while True:
        t *= 2
        if t >= 1:
            t_bit = 1
            t -= 1
        else:
            t_bit = 0
        p_bit = rng.getrandbits(1)
        if p_bit != t_bit:
            return p_bit < t_bit
        if t == 0:
            # threshold's remaining expansion is all zeros: p >= threshold
            return False


def iaccess(problem: SelfReducibleProblem, fptas: Callable, x, r: Fraction,
            eps_mode: str = "proof",
            pivot_cache: dict[str, Fraction] | None = None) -> IntervalHit:
    """Compute f(r) and its interval by quasi-pivot recursion.

    Child counts are estimated at accuracy 1/(8*d0) with d0 the root depth
    ("proof" mode); "literal" mode shrinks the accuracy with the current
    depth instead. Because the counter is deterministic, the pivot at a
    prefix is a constant of the session; a caller-supplied pivot_cache
    avoids recomputing it on every attempt.
    """
    d0 = problem.zeta(x)
    word = ""
    low, high = ZERO, ONE
    eps_proof = Fraction(1, 8 * d0) if d0 > 0 else None
    for depth in range(d0, 0, -1):
        pivot = pivot_cache.get(word) if pivot_cache is not None else None
        if pivot is None:
            eps = eps_proof if eps_mode == "proof" else Fraction(1, 8 * depth)
            n0 = fptas(problem.reduce(x, word + "0"), eps)
            n1 = fptas(problem.reduce(x, word + "1"), eps)
            if n0 + n1 == 0:
                raise EmptyBranch(f"both estimates 0 at prefix {word!r}")
            pivot = low + Fraction(n0, n0 + n1) * (high - low)
            if pivot_cache is not None:
                pivot_cache[word] = pivot
        if r < pivot:
            word += "0"
            high = pivot
        else:
            word += "1"
            low = pivot
    return IntervalHit(word, low, high)


def aia_enumerate(problem: SelfReducibleProblem, fptas: Callable, x,
                  rng: random.Random, eps_mode: str = "proof",
                  attempt_cap: int | None = None,
                  clock: VirtualClock | None = None) -> Iterator[EmissionRecord]:
    """Emit every solution of x exactly once, uniformly over the solutions
    not yet emitted; expected attempts per emission < 4.

    The root estimate fixes the correction factor phi* = (4/9) / B(x, 1/3);
    each candidate is accepted with probability phi* / width, making the
    per-solution acceptance probability identical despite unequal widths.
    """
    d = problem.zeta(x)
    root_estimate = fptas(x, Fraction(1, 3))
    if root_estimate == 0:
        return  # Sol(x) is empty: a 1/3-accurate counter returns 0 only then
    phi_star = Fraction(4, 9) / root_estimate
    banned = BannedIntervalTree()
    available = ONE
    bits = max(d, 1) + 128
    cap = attempt_cap if attempt_cap is not None else 64 * max(d, 1)
    clock = clock or VirtualClock()
    pivots: dict[str, Fraction] = {}

    while available > 0:
        attempts = 0
        while True:
            attempts += 1
            if attempts > cap:
                raise NonTerminating(f"{cap} attempts without an emission")
            clock.advance(1)
            r = generate_seed(banned, available, rng, bits)
            hit = iaccess(problem, fptas, x, r, eps_mode, pivots)
            if bernoulli_less(rng, phi_star / hit.width):
                break
        banned.insert(hit.low, hit.high)
        available -= hit.width
        yield EmissionRecord(hit.solution, hit.low, hit.high, hit.width,
                             attempts, clock.now)
