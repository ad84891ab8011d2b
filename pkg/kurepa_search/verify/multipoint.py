from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from kurepa_search.bigprod.trees import build_tree, remainder_walk
from kurepa_search.config import settings
from kurepa_search.verify.fieldops import U64, addmod, check_modulus, mulmod
from kurepa_search.verify.poly import PolyModP, ModulusMismatchError, inverse_series, mul, rem_with_inverse, trim

logger = logging.getLogger(__name__)


def linear_products(roots: np.ndarray, p: int) -> np.ndarray:
    """Row-wise prod (x - r) over each row of roots; ascending coefficients."""
    rows, count = roots.shape
    m = U64(p)
    out = np.zeros((rows, count + 1), dtype=U64)
    out[:, 0] = 1
    neg = (m - roots.astype(U64)) % m
    for i in range(count):
        shifted = np.zeros_like(out)
        shifted[:, 1:] = out[:, :-1]
        out = addmod(shifted, mulmod(out, neg[:, i : i + 1], p), p)
    return out


def horner_grid(coeffs: np.ndarray, xs: np.ndarray, p: int) -> np.ndarray:
    """Evaluate row k of coeffs at every point of row k of xs."""
    acc = np.zeros(xs.shape, dtype=U64)
    for c in range(coeffs.shape[1] - 1, -1, -1):
        acc = addmod(mulmod(acc, xs, p), coeffs[:, c : c + 1], p)
    return acc


class SubproductTree:
    """Subproduct tree over chunks of points.

    Leaves are prod (x - x_i) over `chunk` consecutive points; the last
    chunk is padded with zeros, which only adds roots and leaves the values
    at the real points unchanged.
    """

    def __init__(self, points: Sequence[int], p: int, chunk: int | None = None):
        check_modulus(p)
        self.p = p
        self.count = len(points)
        if self.count == 0:
            self.grid = np.zeros((0, 1), dtype=U64)
            self.tree = None
            return
        chunk = max(1, min(chunk or settings.EVAL_CHUNK, self.count))
        xs = np.array([int(x) % p for x in points], dtype=U64)
        padded = np.zeros(-(-self.count // chunk) * chunk, dtype=U64)
        padded[: self.count] = xs
        self.grid = padded.reshape(-1, chunk)
        leaves = linear_products(self.grid, p)
        self.tree = build_tree(list(leaves), lambda f, g: mul(f, g, p))

    def _reduce(self, values: tuple[np.ndarray, ...], modulus: np.ndarray) -> tuple[np.ndarray, ...]:
        d = len(modulus) - 1
        need = max(len(v) for v in values) - d
        if need <= 0:
            return values
        inv = inverse_series(modulus[::-1], need, self.p)
        return tuple(rem_with_inverse(v, modulus, inv, self.p) for v in values)

    def evaluate_many(self, polys: Sequence[np.ndarray]) -> list[np.ndarray]:
        """Values of each polynomial at every point, in point order."""
        if self.tree is None:
            return [np.zeros(0, dtype=U64) for _ in polys]
        start = tuple(trim(np.asarray(f, dtype=U64)) for f in polys)
        leaf_rems = remainder_walk(start, self.tree, reduce_fn=self._reduce)

        rows, width = self.grid.shape
        out = []
        for idx in range(len(polys)):
            coeffs = np.zeros((rows, width), dtype=U64)
            for k, rems in enumerate(leaf_rems):
                r = rems[idx]
                coeffs[k, : len(r)] = r
            values = horner_grid(coeffs, self.grid, self.p)
            out.append(values.reshape(-1)[: self.count])
        return out


def multipoint_eval(f: PolyModP, points: Sequence[int], p: int | None = None) -> list[int]:
    if p is not None and p != f.p:
        raise ModulusMismatchError(f"polynomial is over F_{f.p}, not F_{p}")
    tree = SubproductTree(points, f.p)
    return tree.evaluate_many([f.coeffs])[0].tolist()
