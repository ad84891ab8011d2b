from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterable

from kurepa_search.pipeline.records import ResidueRecord

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NearMissReport:
    threshold: int
    rows: list[ResidueRecord]
    observed_count: int
    expected_count: float
    counterexamples: list[ResidueRecord] = field(default_factory=list)
    span: tuple[int, int] | None = None

    @property
    def has_counterexample(self) -> bool:
        return bool(self.counterexamples)


def expected_low_residues(m_exp: float, n_exp: float, ell: int) -> float:
    """Heuristic count of primes in (2^m_exp, 2^n_exp) with |r_p| < ell.

    r_p is modeled as uniform mod p, so each prime contributes (2 ell - 1)/p
    and the sum of 1/p over the interval is about ln(n_exp / m_exp).
    """
    if not n_exp > m_exp > 0:
        raise ValueError(f"need n_exp > m_exp > 0, got ({m_exp}, {n_exp})")
    if ell < 1:
        raise ValueError(f"threshold must be at least 1, got {ell}")
    return (2 * ell - 1) * math.log(n_exp / m_exp)


def counterexample_probability(m_exp: float, n_exp: float) -> float:
    """Heuristic chance that some odd p in (2^m_exp, 2^n_exp) divides !p."""
    if not n_exp >= m_exp > 0:
        raise ValueError(f"need n_exp >= m_exp > 0, got ({m_exp}, {n_exp})")
    return 1 - m_exp / n_exp


def _expected_over(lo: int, hi: int, ell: int) -> float:
    # Primes below 3 contribute nothing sensible to the log-log estimate.
    lo = max(lo, 2)
    if hi <= lo:
        return 0.0
    return expected_low_residues(math.log2(lo), math.log2(hi), ell)


def kurepa_scan(
    records: Iterable[ResidueRecord], ell: int, span: tuple[int, int] | None = None
) -> NearMissReport:
    """Near misses |r_p| < ell, with the heuristic count over the records' span.

    span defaults to (min p, max p) of the records.
    """
    if ell < 1:
        raise ValueError(f"threshold must be at least 1, got {ell}")
    records = sorted(records, key=lambda r: r.p)
    rows = [r for r in records if abs(r.residue.value) < ell]
    counterexamples = [r for r in records if r.is_counterexample]
    for r in counterexamples:
        logger.warning("[KUREPA] counterexample: p=%d divides !p", r.p)

    if span is None and records:
        span = (records[0].p, records[-1].p)
    expected = _expected_over(span[0], span[1], ell) if span else 0.0
    return NearMissReport(
        threshold=ell,
        rows=rows,
        observed_count=len(rows),
        expected_count=expected,
        counterexamples=counterexamples,
        span=span,
    )
