"""Uniformity tests, delay profiles and CSV reporting."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from scipy.stats import chi2

from .record import EmissionRecord


class InsufficientRuns(Exception):
    """Not enough runs for the requested statistical test."""


@dataclass
class RunReport:
    algorithm: str
    instance: str
    seed: int
    emissions: list[EmissionRecord]
    extras: dict = field(default_factory=dict)

    @property
    def solutions(self) -> list[str]:
        return [e.solution for e in self.emissions]

    @property
    def mean_attempts(self) -> float:
        if not self.emissions:
            return 0.0
        return sum(e.attempts for e in self.emissions) / len(self.emissions)

    @property
    def max_attempts(self) -> int:
        return max((e.attempts for e in self.emissions), default=0)


def frac_str(f: Fraction | None) -> str:
    if f is None:
        return ""
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}"


def chi_square_counts(counts: dict, expected: float) -> tuple[float, float]:
    """Chi-square statistic and p-value against equal expected counts."""
    stat = sum((c - expected) ** 2 / expected for c in counts.values())
    return stat, float(chi2.sf(stat, len(counts) - 1))


def first_emission_test(first_words: list[str], support: set[str],
                        significance: float = 1e-3) -> dict:
    """Chi-square on the first emission across runs against uniform 1/M."""
    m = len(support)
    if len(first_words) < 50 * m:
        raise InsufficientRuns(f"need >= {50 * m} runs, got {len(first_words)}")
    counts = {w: 0 for w in support}
    for w in first_words:
        counts[w] += 1
    stat, pvalue = chi_square_counts(counts, len(first_words) / m)
    return {"test": "first-emission", "statistic": stat, "pvalue": pvalue,
            "passed": pvalue >= significance, "runs": len(first_words),
            "support": m}


def position_frequency_test(orders: list[tuple], support: set[str],
                            significance: float = 1e-3) -> dict:
    """Per-position chi-square of which solution lands at position k.

    Each position's marginal is uniform over Sol(x) when every emission is
    uniform over the remaining solutions; positions are tested separately
    with a Bonferroni-corrected threshold.
    """
    m = len(support)
    if len(orders) < 50 * m * m:
        raise InsufficientRuns(
            f"need >= {50 * m * m} runs, got {len(orders)}")
    threshold = significance / m
    worst = 1.0
    per_position = []
    for k in range(m):
        counts = {w: 0 for w in support}
        for order in orders:
            counts[order[k]] += 1
        stat, pvalue = chi_square_counts(counts, len(orders) / m)
        per_position.append(pvalue)
        worst = min(worst, pvalue)
    return {"test": "position-frequency", "pvalues": per_position,
            "min_pvalue": worst, "passed": worst >= threshold,
            "runs": len(orders), "support": m}


def uniformity_test(runs: list[RunReport], mode: str = "first",
                    significance: float = 1e-3) -> dict:
    if not runs:
        raise InsufficientRuns("no runs")
    support = set(runs[0].solutions)
    if mode == "first":
        return first_emission_test([r.solutions[0] for r in runs], support,
                                   significance)
    return position_frequency_test([tuple(r.solutions) for r in runs],
                                   support, significance)


def delay_profile(report: RunReport, window: int) -> list[dict]:
    """Per-window mean attempts and mean inter-emission ticks."""
    rows = []
    emissions = report.emissions
    prev_tick = 0
    for start in range(0, len(emissions), window):
        chunk = emissions[start:start + window]
        rows.append({
            "window": start // window,
            "count": len(chunk),
            "mean_attempts": sum(e.attempts for e in chunk) / len(chunk),
            "mean_ticks": float(chunk[-1].tick - prev_tick) / len(chunk),
        })
        prev_tick = chunk[-1].tick
    return rows


def emissions_csv(report: RunReport) -> str:
    """RFC-4180 CSV of one run; exact rationals as num/den strings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["index", "solution", "low", "high", "width",
                     "attempts", "tick"])
    for i, e in enumerate(report.emissions, 1):
        writer.writerow([i, e.solution, frac_str(e.low), frac_str(e.high),
                         frac_str(e.width), e.attempts, str(e.tick)])
    return buf.getvalue()


def profile_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["window", "count", "mean_attempts", "mean_ticks"])
    for row in rows:
        writer.writerow([row["window"], row["count"],
                         f"{row['mean_attempts']:.6f}",
                         f"{row['mean_ticks']:.6f}"])
    return buf.getvalue()
