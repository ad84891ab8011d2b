from __future__ import annotations

import random
from functools import lru_cache

import pytest

from kurepa_search.core.residues import balance, left_factorial_oracle
from kurepa_search.pipeline.checkpoint import CheckpointStore
from kurepa_search.pipeline.records import ResidueRecord
from kurepa_search.primes.sieve import primes_in


@lru_cache(maxsize=None)
def oracle_balanced(p: int) -> int:
    return balance(left_factorial_oracle(p), p).value


def oracle_records(lo: int, hi: int) -> list[ResidueRecord]:
    return [ResidueRecord(p, balance(left_factorial_oracle(p), p)) for p in primes_in(lo, hi)]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240101)


@pytest.fixture
def store(tmp_path) -> CheckpointStore:
    return CheckpointStore(tmp_path / "ckpt", lock_timeout_s=1)
