import pytest

from kurepa_search.primes.sieve import base_primes, is_prime, primes_in


def test_small_interval():
    assert primes_in(0, 30).primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_in(2, 3).primes == [3]
    assert primes_in(7, 7).primes == []


def test_bounds_are_exclusive_then_inclusive():
    found = primes_in(11, 29).primes
    assert found[0] == 13 and found[-1] == 29


def test_count_to_hundred_thousand():
    assert len(primes_in(2, 100_000)) == 9591


@pytest.mark.parametrize("window", [2, 7, 64, 1000])
def test_windows_agree_with_trial_division(window, rng):
    for _ in range(20):
        lo = rng.randrange(0, 50_000)
        hi = lo + rng.randrange(0, 3000)
        assert primes_in(lo, hi, window).primes == [k for k in range(lo + 1, hi + 1) if is_prime(k)]


def test_base_primes():
    assert base_primes(1).tolist() == []
    assert base_primes(20).tolist() == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rejects_bad_interval():
    with pytest.raises(ValueError):
        primes_in(10, 5)
    with pytest.raises(ValueError):
        primes_in(-1, 5)


def test_count_to_one_million():
    assert len(primes_in(0, 1_000_000)) == 78498


def test_adjacent_intervals_concatenate(rng):
    for _ in range(200):
        a = rng.randrange(0, 1_000_000)
        b = a + rng.randrange(0, 5000)
        c = b + rng.randrange(0, 5000)
        assert primes_in(a, b).primes + primes_in(b, c).primes == primes_in(a, c).primes


@pytest.mark.slow
def test_large_offsets_agree_with_trial_division(rng):
    for _ in range(10):
        a = rng.randrange(0, 10**9)
        assert primes_in(a, a + 10_000).primes == [k for k in range(a + 1, a + 10_001) if is_prime(k)]
