from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from kurepa_search.config import settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimeList:
    """Primes p with lo < p <= hi, ascending."""

    lo: int
    hi: int
    primes: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)


def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit (plain sieve, used for the segment base table)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _sieve_window(low: int, high: int, odd_base: np.ndarray) -> np.ndarray:
    """Odd primes in [low, high); low odd. One flag per odd number."""
    count = (high - low + 1) // 2
    mask = np.ones(count, dtype=bool)
    for p in odd_base.tolist():
        p2 = p * p
        if p2 >= high:
            break
        start = max(p2, ((low + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= high:
            continue
        mask[(start - low) // 2 :: p] = False
    return low + 2 * np.flatnonzero(mask).astype(np.int64)


def primes_in(lo: int, hi: int, window: int | None = None) -> PrimeList:
    """Primes in (lo, hi] by an odd-only segmented sieve of Eratosthenes."""
    if lo < 0:
        raise ValueError(f"lo must be nonnegative, got {lo}")
    if hi < lo:
        raise ValueError(f"empty interval ({lo}, {hi}]")
    window = window or settings.SIEVE_WINDOW
    if window < 2:
        raise ValueError("sieve window must hold at least two integers")

    out: list[int] = []
    if lo < 2 <= hi:
        out.append(2)

    odd_base = base_primes(math.isqrt(hi))
    odd_base = odd_base[odd_base > 2]

    low = lo + 1 if lo % 2 == 0 else lo + 2  # first odd number > lo
    low = max(low, 3)
    end = hi + 1
    while low < end:
        high = min(low + window, end)
        out.extend(_sieve_window(low, high, odd_base).tolist())
        low = high if high % 2 == 1 else high + 1

    logger.debug("[SIEVE] (%d, %d]: %d primes", lo, hi, len(out))
    return PrimeList(lo=lo, hi=hi, primes=out)


def is_prime(n: int) -> bool:
    """Trial division; for small n and tests."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True
