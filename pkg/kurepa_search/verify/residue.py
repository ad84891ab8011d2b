from __future__ import annotations

import logging
import math
import time

from kurepa_search.core.residues import BalancedResidue, balance
from kurepa_search.verify.fieldops import check_modulus
from kurepa_search.verify.giant import build_giant_poly
from kurepa_search.verify.multipoint import SubproductTree

logger = logging.getLogger(__name__)


class WilsonCheckError(RuntimeError):
    pass


def verify_residue(p: int, chunk: int | None = None) -> BalancedResidue:
    """r_p by baby-step/giant-step over the matrix factorial, O(p^(1/2+e)).

    M_{p-1} mod p is the ordered product of G(0), G(s), ..., G((s-1)s)
    followed by the tail C_{s^2+1} ... C_{p-1}.
    """
    if p <= 3 or p % 2 == 0:
        raise ValueError(f"verifier needs an odd prime p > 3, got {p}")
    check_modulus(p)
    started = time.perf_counter()

    s = math.isqrt(p - 1)
    giant = build_giant_poly(s, p, chunk)
    tree = SubproductTree([j * s for j in range(s)], p, chunk)
    values_a, values_b = tree.evaluate_many([giant.a.coeffs, giant.b.coeffs])

    a, b = 1, 0
    for x, y in zip(values_a.tolist(), values_b.tolist()):
        a, b = a * x % p, (a * y + b) % p
    for k in range(s * s + 1, p):
        a, b = a * k % p, (a + b) % p

    if a != p - 1:
        raise WilsonCheckError(f"(p-1)! = {a} mod {p}; arithmetic fault or composite modulus")
    residue = balance((a + b) % p, p)
    logger.debug("[VERIFY] p=%d s=%d r_p=%d in %.2fs", p, s, residue.value, time.perf_counter() - started)
    return residue
