"""Product trees and remainder trees over big integers and MatPairs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Generic, Iterable, Iterator, TypeVar

import gmpy2

from kurepa_search.core.matrix import IDENTITY, MatPair, combine, reduce

T = TypeVar("T")

# Below this many factors a range product is folded sequentially.
_RANGE_CUTOFF = 16


@dataclass
class ProductTree(Generic[T]):
    """levels[0] is [root]; levels[-1] holds the leaves in input order.

    Node j of level i has children 2j and 2j + 1 of level i + 1; an
    unpaired last node is promoted unchanged.
    """

    levels: list[list[T]]

    @property
    def root(self) -> T:
        return self.levels[0][0]

    @property
    def leaves(self) -> list[T]:
        return self.levels[-1]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def node(self, i: int, j: int) -> T:
        return self.levels[i][j]


MatProductTree = ProductTree[MatPair]


def product_levels(leaves: Iterable[T], mul: Callable[[T, T], T]) -> Iterator[list[T]]:
    """Yield tree levels bottom-up, leaves first. Only the level being built
    is held here; callers decide what to keep."""
    level = list(leaves)
    if not level:
        raise ValueError("product tree needs at least one leaf")
    yield level
    while len(level) > 1:
        nxt = [mul(level[k], level[k + 1]) for k in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
        yield level


def build_tree(leaves: Iterable[T], mul: Callable[[T, T], T]) -> ProductTree[T]:
    levels = list(product_levels(leaves, mul))
    levels.reverse()
    return ProductTree(levels)


def balanced_product(leaves: Iterable[T], mul: Callable[[T, T], T]) -> T:
    """Root of the product tree without keeping the tree."""
    level: list[T] = []
    for level in product_levels(leaves, mul):
        pass
    return level[0]


def product_tree(leaves: Iterable[int]) -> ProductTree[Any]:
    values = [gmpy2.mpz(x) for x in leaves]
    if any(v < 1 for v in values):
        raise ValueError("product tree leaves must be positive integers")
    return build_tree(values, lambda x, y: x * y)


def mat_product_levels(leaves: Iterable[MatPair]) -> Iterator[list[MatPair]]:
    return product_levels(leaves, combine)


def mat_product_tree(leaves: Iterable[MatPair]) -> MatProductTree:
    return build_tree(leaves, combine)


def _fold_range(lo: int, hi: int) -> MatPair:
    a = gmpy2.mpz(lo)
    b = gmpy2.mpz(1)
    for k in range(lo + 1, hi + 1):
        # (a, b)·C_k = (a k, a + b)
        a, b = a * k, a + b
    return MatPair(a, b)


def _split_range(lo: int, hi: int) -> MatPair:
    if hi - lo < _RANGE_CUTOFF:
        return _fold_range(lo, hi)
    mid = (lo + hi) // 2
    return combine(_split_range(lo, mid), _split_range(mid + 1, hi))


def mat_product_range(k_lo: int, k_hi: int) -> MatPair:
    """C_{k_lo} ... C_{k_hi} by balanced splitting; identity when empty."""
    if k_lo < 1:
        raise ValueError(f"range must start at k >= 1, got {k_lo}")
    if k_lo > k_hi:
        return IDENTITY
    return _split_range(k_lo, k_hi)


def reduce_value(value: Any, modulus: int) -> Any:
    """value mod modulus for an integer or entry-wise for a MatPair."""
    if isinstance(value, MatPair):
        return reduce(value, modulus)
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    return 0 if modulus == 1 else value % modulus


def remainder_walk(
    root_value: Any,
    moduli: ProductTree[Any],
    *,
    reduce_fn: Callable[[Any, Any], Any] = reduce_value,
    shift: Callable[[int, int, Any, Any], Any] | None = None,
) -> list[Any]:
    """Reduce root_value down the moduli tree; one result per leaf.

    shift(i, j, value, modulus), when given, transforms the parent value
    before it is reduced into a right child (odd j) of level i. Only the
    parent level and the level being filled are held in memory.
    """
    levels = moduli.levels
    current = [reduce_fn(root_value, levels[0][0])]
    for i in range(1, len(levels)):
        nxt = []
        for j, modulus in enumerate(levels[i]):
            value = current[j // 2]
            if shift is not None and j % 2:
                value = shift(i, j, value, modulus)
            nxt.append(reduce_fn(value, modulus))
        current = nxt
    return current
