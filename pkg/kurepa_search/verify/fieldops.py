"""Vectorized arithmetic in F_p for p < 2^46 on uint64 arrays.

Products are formed limb by limb (16 bits of the second factor at a time)
so that no intermediate exceeds 2^63.
"""
from __future__ import annotations

import gmpy2
import numpy as np

U64 = np.uint64
MAX_MODULUS_BITS = 46

_LIMB = U64(16)
_LIMB_MASK = U64(0xFFFF)
_BYTE = U64(8)


def check_modulus(p: int) -> None:
    if p < 2:
        raise ValueError(f"modulus must be at least 2, got {p}")
    if p.bit_length() > MAX_MODULUS_BITS:
        raise ValueError(f"modulus {p} exceeds {MAX_MODULUS_BITS} bits")


def empty() -> np.ndarray:
    return np.zeros(0, dtype=U64)


def mulmod(a, b, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=U64)
    b = np.asarray(b, dtype=U64)
    m = U64(p)
    acc = np.zeros(np.broadcast(a, b).shape, dtype=U64)
    for shift in (32, 16, 0):
        limb = (b >> U64(shift)) & _LIMB_MASK
        acc = ((acc << _LIMB) + a * limb) % m
    return acc


def addmod(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=U64) + np.asarray(b, dtype=U64)) % U64(p)


def submod(a, b, p: int) -> np.ndarray:
    m = U64(p)
    return (np.asarray(a, dtype=U64) + (m - np.asarray(b, dtype=U64))) % m


def slot_bytes(terms: int, p: int) -> int:
    """Even byte width holding any coefficient of a product with `terms`
    overlapping terms, so packed products never carry between slots."""
    bits = 2 * (p - 1).bit_length() + terms.bit_length()
    width = (bits + 7) // 8
    return width + (width & 1)


def pack(coeffs: np.ndarray, slot: int) -> gmpy2.mpz:
    """Kronecker substitution: coefficient k occupies bytes [k*slot, (k+1)*slot)."""
    width = min(8, slot)
    grid = np.zeros((len(coeffs), slot), dtype=np.uint8)
    grid[:, :width] = coeffs.astype("<u8").view(np.uint8).reshape(-1, 8)[:, :width]
    return gmpy2.mpz(int.from_bytes(grid.tobytes(), "little"))


def unpack(value: gmpy2.mpz, count: int, slot: int, p: int) -> np.ndarray:
    raw = int(value).to_bytes(count * slot, "little")
    grid = np.frombuffer(raw, dtype=np.uint8).reshape(count, slot).astype(U64)
    m = U64(p)
    acc = np.zeros(count, dtype=U64)
    for k in range(slot // 2 - 1, -1, -1):
        limb = grid[:, 2 * k] | (grid[:, 2 * k + 1] << _BYTE)
        acc = ((acc << _LIMB) | limb) % m
    return acc
