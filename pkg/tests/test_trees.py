import math

import pytest

from kurepa_search.bigprod.trees import (
    balanced_product,
    build_tree,
    mat_product_range,
    mat_product_tree,
    product_tree,
    remainder_walk,
)
from kurepa_search.core.matrix import IDENTITY, as_ints, c_of, combine, reduce


def test_product_tree_root_and_shape():
    tree = product_tree([2, 3, 5, 7, 11])
    assert tree.root == 2310
    assert tree.leaves == [2, 3, 5, 7, 11]
    assert tree.levels[1] == [210, 11]
    assert tree.depth == 3


def test_product_tree_rejects_bad_leaves():
    with pytest.raises(ValueError):
        product_tree([])
    with pytest.raises(ValueError):
        product_tree([3, 0])


def test_product_tree_matches_sequential(rng):
    for _ in range(1000):
        leaves = [rng.randrange(1, 10**9) for _ in range(rng.randrange(1, 20))]
        assert product_tree(leaves).root == math.prod(leaves)


def test_balanced_product_keeps_order():
    words = ["a", "b", "c", "d", "e"]
    assert balanced_product(words, lambda x, y: x + y) == "abcde"


def test_mat_product_range_is_matrix_factorial_slice():
    m = mat_product_range(1, 10)
    assert as_ints(m) == (math.factorial(10), sum(math.factorial(k) for k in range(10)))
    assert mat_product_range(5, 4) == IDENTITY


def test_mat_product_tree_root(rng):
    for _ in range(50):
        lo = rng.randrange(1, 500)
        hi = lo + rng.randrange(0, 100)
        tree = mat_product_tree([c_of(k) for k in range(lo, hi + 1)])
        assert tree.root == mat_product_range(lo, hi)


def test_remainder_walk_matches_direct_reduction(rng):
    for _ in range(1000):
        moduli = [rng.randrange(1, 10**6) for _ in range(rng.randrange(1, 12))]
        value = rng.randrange(10**40)
        leaves = remainder_walk(value, product_tree(moduli))
        assert leaves == [value % q for q in moduli]


def test_remainder_walk_with_matrices(rng):
    primes = [3, 5, 7, 11, 13]
    value = mat_product_range(1, 40)
    leaves = remainder_walk(value, product_tree(primes))
    assert leaves == [reduce(value, p) for p in primes]


def test_shift_applies_to_right_children():
    tree = build_tree([1, 1, 1, 1], lambda x, y: x * y)
    seen = []

    def shift(i, j, value, modulus):
        seen.append((i, j))
        return value

    remainder_walk(0, tree, reduce_fn=lambda v, q: v, shift=shift)
    assert seen == [(1, 1), (2, 1), (2, 3)]


def test_combine_chain_equals_range():
    acc = IDENTITY
    for k in range(17, 60):
        acc = combine(acc, c_of(k))
    assert acc == mat_product_range(17, 59)


def test_mat_product_range_prefixes_to_five_hundred():
    acc = IDENTITY
    for n in range(1, 501):
        acc = combine(acc, c_of(n))
        if n % 50 == 0 or n < 20:
            assert mat_product_range(1, n) == acc


def test_mat_product_range_split_invariance(rng):
    for _ in range(300):
        lo = rng.randrange(1, 2000)
        hi = lo + rng.randrange(0, 300)
        k = rng.randrange(lo - 1, hi + 1)
        assert combine(mat_product_range(lo, k), mat_product_range(k + 1, hi)) == mat_product_range(lo, hi)


def test_remainder_walk_on_wide_tree(rng):
    moduli = [rng.randrange(2, 1 << 30) for _ in range(1 << 14)]
    value = rng.getrandbits(600_000)
    leaves = remainder_walk(value, product_tree(moduli))
    assert leaves == [value % q for q in moduli]
