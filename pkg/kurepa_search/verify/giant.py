from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from kurepa_search.bigprod.trees import balanced_product
from kurepa_search.config import settings
from kurepa_search.core.matrix import MatPair
from kurepa_search.verify.fieldops import U64, addmod, check_modulus, mulmod
from kurepa_search.verify.poly import PolyModP, add, mul


@dataclass(frozen=True)
class PolyMatPair:
    """[[a(x), b(x)], [0, 1]] over F_p."""

    a: PolyModP
    b: PolyModP

    @property
    def p(self) -> int:
        return self.a.p

    def at(self, x: int) -> MatPair:
        return MatPair(self.a(x), self.b(x))


def _chain(ks: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise C(x + k_1) ... C(x + k_c) for each row of ks."""
    rows, count = ks.shape
    a = np.zeros((rows, count + 1), dtype=U64)
    a[:, 0] = 1
    b = np.zeros((rows, count + 1), dtype=U64)
    for i in range(count):
        # (a, b)·C(x + k) = (a (x + k), a + b)
        b = addmod(a, b, p)
        shifted = np.zeros_like(a)
        shifted[:, 1:] = a[:, :-1]
        a = addmod(shifted, mulmod(a, ks[:, i : i + 1], p), p)
    return a, b


def build_giant_poly(s: int, p: int, chunk: int | None = None) -> PolyMatPair:
    """G(x) = C(x + 1) C(x + 2) ... C(x + s), so G(js) = C_{js+1} ... C_{js+s} mod p."""
    check_modulus(p)
    if s < 1:
        raise ValueError(f"block size must be positive, got {s}")
    if s * s >= p:
        raise ValueError(f"block size {s} needs s^2 < p = {p}")
    chunk = max(1, min(chunk or settings.EVAL_CHUNK, s))

    ks = np.arange(1, s + 1, dtype=U64)
    full = s // chunk * chunk
    leaves = []
    if full:
        a, b = _chain(ks[:full].reshape(-1, chunk), p)
        leaves.extend(zip(a, b))
    if s > full:
        a, b = _chain(ks[full:].reshape(1, -1), p)
        leaves.append((a[0], b[0]))

    def combine_poly(x, y):
        return mul(x[0], y[0], p), add(mul(x[0], y[1], p), x[1], p)

    a, b = balanced_product(leaves, combine_poly)
    return PolyMatPair(PolyModP.from_array(a, p), PolyModP.from_array(b, p))
