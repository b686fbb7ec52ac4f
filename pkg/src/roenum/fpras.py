"""Atlantic City random-order enumeration on a randomized counter.

Same interval machinery as the FPTAS tier, with two additions: a prefix
dictionary memoizes every estimate so the induced partition of [0,1) is
consistent across all calls in a session, and the rejection guard skips
the test whenever the acceptance ratio falls outside (1/4, 1) -- evidence
of a failed counter call -- so completeness and the attempt bound hold
unconditionally.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterator

from .fptas import EmptyBranch, IntervalHit, NonTerminating, bernoulli_less
from .interval_tree import BannedIntervalTree, generate_seed
from .problem import SelfReducibleProblem
from .record import EmissionRecord, VirtualClock

ZERO = Fraction(0)
ONE = Fraction(1)
QUARTER = Fraction(1, 4)


class PrefixDictionary:
    """Write-once map from bit-string prefixes to count estimates.

    Entries are never overwritten, which is what makes the partition a
    fixed function of the dictionary contents. Preloaded entries (the
    boundary pieces a master hands to slaves) are tracked separately so
    tests can assert no slave recomputes them.
    """

    def __init__(self, preloaded: dict[str, int] | None = None):
        self.entries: dict[str, int] = dict(preloaded or {})
        self.preloaded = frozenset(self.entries)
        self.computed: set[str] = set()
        self.hits = 0
        self.misses = 0
        self.midpoint_fallbacks = 0  # diagnostic: adversarial all-zero estimates

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, prefix: str, compute: Callable[[], int]) -> int:
        value = self.entries.get(prefix)
        if value is not None:
            self.hits += 1
            return value
        self.misses += 1
        value = compute()
        self.entries[prefix] = value
        self.computed.add(prefix)
        return value

    def piece(self, prefixes) -> dict[str, int]:
        return {p: self.entries[p] for p in prefixes if p in self.entries}


def xaccess(problem: SelfReducibleProblem, fpras: Callable, x, r: Fraction,
            delta: Fraction, dictionary: PrefixDictionary,
            eps_mode: str = "proof",
            pivot_cache: dict[str, Fraction] | None = None) -> IntervalHit:
    """Interval access with memoized randomized estimates.

    On a dictionary miss the estimate is computed at accuracy 1/(8*d0) and
    per-call failure budget 2**-(d0+1) * delta, then frozen; repeated calls
    in a session therefore see byte-identical partitions. Since estimates
    are write-once, the pivot at a prefix is a session constant and may be
    cached by the caller.
    """
    d0 = problem.zeta(x)
    word = ""
    low, high = ZERO, ONE
    eps_proof = Fraction(1, 8 * d0) if d0 > 0 else None
    fail_budget = Fraction(delta, 1 << (d0 + 1))
    for depth in range(d0, 0, -1):
        w0, w1 = word + "0", word + "1"
        pivot = pivot_cache.get(word) if pivot_cache is not None else None
        if pivot is None:
            eps = eps_proof if eps_mode == "proof" else Fraction(1, 8 * depth)
            n0 = dictionary.lookup(
                w0, lambda: fpras(problem.reduce(x, w0), eps, fail_budget))
            n1 = dictionary.lookup(
                w1, lambda: fpras(problem.reduce(x, w1), eps, fail_budget))
            if n0 + n1 == 0:
                # adversarial oracle: split at the midpoint, keep tiling intact
                dictionary.midpoint_fallbacks += 1
                pivot = (low + high) / 2
            else:
                pivot = low + Fraction(n0, n0 + n1) * (high - low)
            if pivot_cache is not None:
                pivot_cache[word] = pivot
        if r < pivot:
            word, high = w0, pivot
        else:
            word, low = w1, pivot
    return IntervalHit(word, low, high)


def root_estimate(problem: SelfReducibleProblem, fpras: Callable, x,
                  delta: Fraction) -> int:
    """Root count estimate at the same per-call failure budget the
    recursion uses (the 2**(d+1) total-call budget includes the root)."""
    d = problem.zeta(x)
    return fpras(x, Fraction(1, 3), Fraction(delta, 1 << (d + 1)))


def axa_enumerate(problem: SelfReducibleProblem, fpras: Callable, x,
                  delta: Fraction, rng: random.Random,
                  dictionary: PrefixDictionary | None = None,
                  span: tuple[Fraction, Fraction] = (ZERO, ONE),
                  phi_star: Fraction | None = None,
                  eps_mode: str = "proof",
                  attempt_cap: int | None = None,
                  clock: VirtualClock | None = None) -> Iterator[EmissionRecord]:
    """Emit all solutions whose intervals lie in `span` exactly once.

    Completeness is unconditional; with probability >= 1 - delta every
    estimate is accurate and the run is a Las Vegas uniform random-order
    enumeration. A slave passes its assigned range as `span` and the
    master-computed `phi_star`; the rest of [0,1) is pre-banned.
    """
    delta = Fraction(delta)
    d = problem.zeta(x)
    dictionary = dictionary if dictionary is not None else PrefixDictionary()
    if phi_star is None:
        estimate = root_estimate(problem, fpras, x, delta)
        if estimate == 0:
            return
        phi_star = Fraction(4, 9) / estimate

    low, high = span
    banned = BannedIntervalTree()
    if low > ZERO:
        banned.insert(ZERO, low)
    if high < ONE:
        banned.insert(high, ONE)
    available = high - low
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
            hit = xaccess(problem, fpras, x, r, delta, dictionary, eps_mode,
                          pivots)
            ratio = phi_star / hit.width
            if not (QUARTER < ratio < ONE):
                break  # some counter call failed: emit without the test
            if bernoulli_less(rng, ratio):
                break
        banned.insert(hit.low, hit.high)
        available -= hit.width
        yield EmissionRecord(hit.solution, hit.low, hit.high, hit.width,
                             attempts, clock.now)
