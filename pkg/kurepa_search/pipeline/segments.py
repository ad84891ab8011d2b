from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Segment:
    """S_{i,j} = (lo, hi] of the dyadic decomposition of (m, n]."""

    m: int
    n: int
    i: int
    j: int
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo

    def __contains__(self, k: int) -> bool:
        return self.lo < k <= self.hi

    def integers(self) -> range:
        return range(self.lo + 1, self.hi + 1)


def height(m: int, n: int) -> int:
    """h = ceil(log2(n - m))."""
    if n <= m:
        raise ValueError(f"empty interval ({m}, {n}]")
    return (n - m - 1).bit_length()


def bounds(m: int, n: int, i: int, j: int) -> tuple[int, int]:
    span = n - m
    return m + ((j * span) >> i), m + (((j + 1) * span) >> i)


def segment(m: int, n: int, i: int, j: int) -> Segment:
    h = height(m, n)
    if not 0 <= i <= h:
        raise ValueError(f"level {i} outside 0..{h}")
    if not 0 <= j < 1 << i:
        raise ValueError(f"index {j} outside 0..2^{i}-1")
    lo, hi = bounds(m, n, i, j)
    return Segment(m=m, n=n, i=i, j=j, lo=lo, hi=hi)


def leaf_index(m: int, n: int, k: int) -> int:
    """Index j of the level-h segment containing k, for m < k <= n."""
    if not m < k <= n:
        raise ValueError(f"{k} is outside ({m}, {n}]")
    span = n - m
    leaves = 1 << height(m, n)
    return ((k - m) * leaves + span - 1) // span - 1
