import pytest

from kurepa_search.core.residues import BalancedResidue
from kurepa_search.pipeline.records import ResidueRecord, write_residue_csv
from kurepa_search.pipeline.scan import scan_interval
from kurepa_search.queue.worker import main, reference_residue, run_worker, sample_records, verifiable

from conftest import oracle_balanced


def test_verifiable():
    assert verifiable(5) and verifiable(22_370_028_691)
    assert not verifiable(2) and not verifiable(3) and not verifiable(1 << 47)


def test_reference_residue():
    assert reference_residue(39_541_338_091) == -1
    assert reference_residue(7) == -1
    assert reference_residue((1 << 40) + 15) is None


def test_sample_is_seeded():
    records, _ = scan_interval(2, 2000)
    a = sample_records(records, 10, seed=3)
    assert a == sample_records(records, 10, seed=3)
    assert len(a) == 10 and [r.p for r in a] == sorted(r.p for r in a)
    assert all(verifiable(r.p) for r in sample_records(records, 10_000))


def test_spot_check_scan_records():
    records, _ = scan_interval(2, 500)
    checks = run_worker(records, sample=8, seed=1, threads=2)
    assert len(checks) == 8
    assert all(c.ok for c in checks)


def test_mismatch_is_reported():
    bogus = oracle_balanced(101) + 1
    (check,) = run_worker([ResidueRecord(101, BalancedResidue(bogus, 101))], threads=1)
    assert not check.ok and check.expected == bogus and check.verified == bogus - 1


def test_failure_is_captured():
    (check,) = run_worker(primes=[1_000_001], threads=1)
    assert check.error and not check.ok


def test_rejects_out_of_range_prime():
    with pytest.raises(ValueError):
        run_worker(primes=[3])


def test_main(tmp_path, capsys):
    records, _ = scan_interval(2, 300)
    csv = tmp_path / "r.csv"
    write_residue_csv(records, csv)
    assert main(["--csv", str(csv), "--sample", "3", "--seed", "2", "--threads", "1", "--prime", "1009"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 4
