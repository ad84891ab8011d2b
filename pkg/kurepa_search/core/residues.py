from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BalancedResidue:
    """Signed representative of a residue in (-p/2, p/2]."""

    value: int
    modulus: int

    @property
    def canonical(self) -> int:
        return self.value % self.modulus

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def left_factorial_oracle(p: int) -> int:
    """(0! + 1! + ... + (p-1)!) mod p by direct O(p) summation.

    p need not be prime.
    """
    if p < 2:
        raise ValueError(f"modulus must be at least 2, got {p}")
    total = 0
    fact = 1
    for k in range(p):
        if k:
            fact = fact * k % p
        total += fact
    return total % p


def balance(r: int, p: int) -> BalancedResidue:
    if p < 2:
        raise ValueError(f"modulus must be at least 2, got {p}")
    if not 0 <= r < p:
        raise ValueError(f"residue {r} is not reduced modulo {p}")
    return BalancedResidue(r if 2 * r <= p else r - p, p)
