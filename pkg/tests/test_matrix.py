import math

import pytest

from kurepa_search.core.matrix import IDENTITY, MatPair, as_ints, c_of, combine, combine_mod, reduce
from kurepa_search.core.residues import BalancedResidue, balance, left_factorial_oracle
from kurepa_search.primes.sieve import primes_in


def left_factorial(n: int) -> int:
    return sum(math.factorial(k) for k in range(n))


def test_matrix_factorial_top_row():
    acc = IDENTITY
    for k in range(1, 7):
        acc = combine(acc, c_of(k))
    assert as_ints(acc) == (720, 154)


def test_c_of_rejects_zero():
    with pytest.raises(ValueError):
        c_of(0)


def test_combine_associative_with_identity(rng):
    for _ in range(1000):
        x, y, z = (MatPair(rng.randrange(1, 10**12), rng.randrange(10**12)) for _ in range(3))
        assert combine(combine(x, y), z) == combine(x, combine(y, z))
        assert combine(IDENTITY, x) == x == combine(x, IDENTITY)


def test_combine_mod_matches_reduced_product(rng):
    for _ in range(1000):
        x = MatPair(rng.randrange(1, 10**15), rng.randrange(10**15))
        y = MatPair(rng.randrange(1, 10**15), rng.randrange(10**15))
        n = rng.randrange(1, 10**6)
        assert combine_mod(x, y, n) == reduce(combine(x, y), n)


def test_reduce_by_one_is_zero():
    assert reduce(MatPair(5, 7), 1) == (0, 0)
    with pytest.raises(ValueError):
        reduce(MatPair(5, 7), 0)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 97, 101])
def test_oracle_matches_definition(p):
    assert left_factorial_oracle(p) == left_factorial(p) % p


def test_oracle_small_values():
    assert left_factorial_oracle(2) == 0
    assert left_factorial_oracle(3) == 1
    assert left_factorial_oracle(5) == 4
    assert left_factorial_oracle(7) == 6
    assert left_factorial_oracle(11) == 1


def test_oracle_rejects_tiny_modulus():
    with pytest.raises(ValueError):
        left_factorial_oracle(1)


def test_balance():
    assert balance(4, 5) == BalancedResidue(-1, 5)
    assert balance(2, 5).value == 2
    assert balance(0, 2).value == 0
    assert balance(1, 2).value == 1
    assert balance(4, 5).canonical == 4
    assert int(balance(6, 7)) == -1
    with pytest.raises(ValueError):
        balance(5, 5)


@pytest.mark.parametrize("p", [2, 3, 4, 5, 7, 10, 11])
def test_balance_lands_in_half_open_range(p):
    for r in range(p):
        v = balance(r, p).value
        assert -p < 2 * v <= p
        assert v % p == r


def test_matrix_factorial_identity_to_two_hundred():
    acc = IDENTITY
    fact, left = 1, 0
    for n in range(1, 201):
        acc = combine(acc, c_of(n))
        left += fact
        fact *= n
        assert as_ints(acc) == (fact, left)


def test_oracle_matches_exact_sums_below_ten_thousand():
    wanted = set(primes_in(1, 10_000).primes)
    fact, left = 1, 0
    for k in range(10_000):
        if k:
            fact *= k
        left += fact
        if k + 1 in wanted:
            assert left_factorial_oracle(k + 1) == left % (k + 1)
