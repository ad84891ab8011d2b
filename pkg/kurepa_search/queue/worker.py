from __future__ import annotations

import argparse
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Iterable, Sequence

from kurepa_search.analysis.reference import TABLE1
from kurepa_search.config import settings
from kurepa_search.core.residues import balance, left_factorial_oracle
from kurepa_search.pipeline.records import ResidueRecord, read_residue_csv
from kurepa_search.verify.fieldops import MAX_MODULUS_BITS
from kurepa_search.verify.residue import verify_residue

logger = logging.getLogger(__name__)

# Primes up to this bound are cross-checked against direct summation.
ORACLE_LIMIT = 1 << 20


@dataclass(frozen=True)
class SpotCheck:
    p: int
    expected: int | None
    verified: int | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and (self.expected is None or self.expected == self.verified)


def verifiable(p: int) -> bool:
    return p > 3 and p % 2 == 1 and p.bit_length() <= MAX_MODULUS_BITS


def reference_residue(p: int) -> int | None:
    known = dict(TABLE1)
    if p in known:
        return known[p]
    if p <= ORACLE_LIMIT:
        return balance(left_factorial_oracle(p), p).value
    return None


def sample_records(records: Sequence[ResidueRecord], k: int, seed: int | None = None) -> list[ResidueRecord]:
    eligible = [r for r in records if verifiable(r.p)]
    if k >= len(eligible):
        return eligible
    picked = random.Random(seed).sample(eligible, k)
    return sorted(picked, key=lambda r: r.p)


def _verify(p: int, chunk: int | None) -> int:
    return verify_residue(p, chunk).value


def spot_check(
    jobs: Iterable[tuple[int, int | None]], threads: int | None = None, chunk: int | None = None
) -> list[SpotCheck]:
    """Re-derive each residue with the square-root verifier on a process pool.

    jobs are (p, expected balanced residue or None).
    """
    jobs = list(jobs)
    results: list[SpotCheck] = []
    if not jobs:
        return results
    workers = max(1, min(threads or settings.THREADS, len(jobs)))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(_verify, p, chunk): (p, expected) for p, expected in jobs}
        for fut in as_completed(futures):
            p, expected = futures[fut]
            try:
                got = fut.result()
            except Exception as e:
                results.append(SpotCheck(p, expected, error=str(e)[:500]))
                logger.error("[FAILED] p=%d: %s", p, e)
                continue
            check = SpotCheck(p, expected, got)
            results.append(check)
            if check.ok:
                logger.info("[VERIFIED] p=%d r_p=%d", p, got)
            else:
                logger.error("[MISMATCH] p=%d expected %d, verifier gave %d", p, expected, got)
    return sorted(results, key=lambda c: c.p)


def run_worker(
    records: Sequence[ResidueRecord] = (),
    primes: Sequence[int] = (),
    sample: int | None = None,
    seed: int | None = None,
    threads: int | None = None,
    chunk: int | None = None,
) -> list[SpotCheck]:
    picked = sample_records(records, sample, seed) if sample is not None else [r for r in records if verifiable(r.p)]
    jobs = [(r.p, r.residue.value) for r in picked]
    for p in primes:
        if not verifiable(p):
            raise ValueError(f"{p} is outside the verifier's range (odd p > 3, below 2^{MAX_MODULUS_BITS})")
        jobs.append((p, reference_residue(p)))
    return spot_check(jobs, threads, chunk)


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description="Spot-check residues with the square-root verifier.")
    parser.add_argument("--csv", help="Residue CSV written by a scan.")
    parser.add_argument("--prime", type=int, action="append", default=[], help="Extra prime to verify (repeatable).")
    parser.add_argument("--sample", type=int, help="Verify this many random rows of the CSV.")
    parser.add_argument("--seed", type=int, help="Seed for the row sample.")
    parser.add_argument("--threads", type=int, default=settings.THREADS)
    args = parser.parse_args(argv)

    logging.basicConfig(level=settings.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    try:
        records = read_residue_csv(args.csv) if args.csv else []
        checks = run_worker(records, args.prime, args.sample, args.seed, args.threads)
    except (ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    for c in checks:
        print(f"{c.p},{c.verified if c.error is None else 'error'}")
    return 0 if all(c.ok for c in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
