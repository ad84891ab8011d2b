from __future__ import annotations

import numpy as np


def socialist_filter(p: int, r: int) -> bool:
    """Necessary condition (r_p - 2)^2 = 1 mod p, i.e. r_p in {1, 3} mod p."""
    if p <= 5:
        raise ValueError(f"the congruence test applies to p > 5, got {p}")
    return (r - 2) ** 2 % p == 1


def socialist_bruteforce(p: int) -> bool:
    """True iff 2!, 3!, ..., (p-1)! are pairwise distinct modulo p."""
    if p < 3:
        raise ValueError(f"need p >= 3, got {p}")
    seen = np.zeros(p, dtype=bool)
    fact = 1
    for k in range(2, p):
        fact = fact * k % p
        if seen[fact]:
            return False
        seen[fact] = True
    return True
