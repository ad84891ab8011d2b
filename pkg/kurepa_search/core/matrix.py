from __future__ import annotations

from typing import NamedTuple

import gmpy2


class MatPair(NamedTuple):
    """Upper-triangular matrix [[a, b], [0, 1]] stored as its top row.

    M_n = C_1 C_2 ... C_n has top row (n!, !n).
    """

    a: int
    b: int


IDENTITY = MatPair(1, 0)


def c_of(k: int) -> MatPair:
    """C_k = [[k, 1], [0, 1]]."""
    if k < 1:
        raise ValueError(f"C_k is defined for k >= 1, got {k}")
    return MatPair(gmpy2.mpz(k), gmpy2.mpz(1))


def combine(x: MatPair, y: MatPair) -> MatPair:
    """Matrix product x·y in reduced form."""
    return MatPair(x.a * y.a, x.a * y.b + x.b)


def reduce(x: MatPair, modulus: int) -> MatPair:
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    if modulus == 1:
        return MatPair(0, 0)
    return MatPair(x.a % modulus, x.b % modulus)


def combine_mod(x: MatPair, y: MatPair, modulus: int) -> MatPair:
    return reduce(combine(reduce(x, modulus), reduce(y, modulus)), modulus)


def as_ints(x: MatPair) -> MatPair:
    return MatPair(int(x.a), int(x.b))
