"""Dense polynomials over F_p.

The module-level helpers work on raw uint64 coefficient arrays (ascending
degree, not necessarily trimmed); PolyModP is the trimmed public value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from kurepa_search.verify.fieldops import (
    U64,
    addmod,
    check_modulus,
    empty,
    mulmod,
    pack,
    slot_bytes,
    submod,
    unpack,
)

# Shorter operands are multiplied term by term.
_SCHOOLBOOK = 8


class ModulusMismatchError(ValueError):
    pass


def trim(f: np.ndarray) -> np.ndarray:
    nonzero = np.flatnonzero(f)
    return f[: nonzero[-1] + 1] if len(nonzero) else f[:0]


def fit(f: np.ndarray, length: int) -> np.ndarray:
    """Truncate or zero-pad to exactly `length` coefficients."""
    if len(f) >= length:
        return f[:length]
    out = np.zeros(length, dtype=U64)
    out[: len(f)] = f
    return out


def mul(f: np.ndarray, g: np.ndarray, p: int) -> np.ndarray:
    if len(f) == 0 or len(g) == 0:
        return empty()
    if len(f) < len(g):
        f, g = g, f
    if len(g) <= _SCHOOLBOOK:
        out = np.zeros(len(f) + len(g) - 1, dtype=U64)
        for i, c in enumerate(g.tolist()):
            if c:
                out[i : i + len(f)] = addmod(out[i : i + len(f)], mulmod(f, c, p), p)
        return out
    slot = slot_bytes(len(g), p)
    return unpack(pack(f, slot) * pack(g, slot), len(f) + len(g) - 1, slot, p)


def add(f: np.ndarray, g: np.ndarray, p: int) -> np.ndarray:
    if len(f) < len(g):
        f, g = g, f
    out = f.astype(U64, copy=True)
    out[: len(g)] = addmod(out[: len(g)], g, p)
    return out


def inverse_series(f: np.ndarray, n: int, p: int) -> np.ndarray:
    """g with f g = 1 mod x^n, by Newton iteration g <- g (2 - f g)."""
    if len(f) == 0 or f[0] == 0:
        raise ZeroDivisionError("series with zero constant term has no inverse")
    g = np.array([pow(int(f[0]), -1, p)], dtype=U64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        err = submod(np.zeros(k, dtype=U64), fit(mul(f[:k], g, p), k), p)
        err[0] = (int(err[0]) + 2) % p
        g = fit(mul(g, err, p), k)
    return g[:n]


def rem_with_inverse(f: np.ndarray, g: np.ndarray, inv_rev_g: np.ndarray, p: int) -> np.ndarray:
    """f mod g given the inverse series of reversed g to enough terms."""
    f = trim(f)
    d = len(g) - 1
    if len(f) <= d:
        return f
    qlen = len(f) - d
    q = fit(mul(f[::-1][:qlen], inv_rev_g[:qlen], p), qlen)[::-1]
    return trim(submod(f[:d], mul(q, g, p)[:d], p))


def horner(f: np.ndarray, x: int, p: int) -> int:
    acc = 0
    for c in reversed(f.tolist()):
        acc = (acc * x + c) % p
    return acc


@dataclass(frozen=True, eq=False)
class PolyModP:
    """Polynomial over F_p; the zero polynomial has no coefficients."""

    coeffs: np.ndarray
    p: int

    @classmethod
    def from_coefficients(cls, values: Iterable[int], p: int) -> "PolyModP":
        check_modulus(p)
        arr = np.array([int(v) % p for v in values], dtype=U64)
        return cls(trim(arr), p)

    @classmethod
    def from_array(cls, arr: np.ndarray, p: int) -> "PolyModP":
        check_modulus(p)
        return cls(trim(np.ascontiguousarray(arr, dtype=U64)), p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def coefficients(self) -> list[int]:
        return self.coeffs.tolist()

    def __call__(self, x: int) -> int:
        return horner(self.coeffs, x % self.p, self.p)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyModP):
            return NotImplemented
        return self.p == other.p and self.coefficients == other.coefficients

    def __repr__(self) -> str:
        return f"PolyModP({self.coefficients}, p={self.p})"


def _same_modulus(f: PolyModP, g: PolyModP, p: int | None) -> int:
    if f.p != g.p or (p is not None and p != f.p):
        raise ModulusMismatchError(f"moduli differ: {f.p}, {g.p}" + (f", {p}" if p is not None else ""))
    return f.p


def polymul(f: PolyModP, g: PolyModP, p: int | None = None) -> PolyModP:
    p = _same_modulus(f, g, p)
    return PolyModP.from_array(mul(f.coeffs, g.coeffs, p), p)
