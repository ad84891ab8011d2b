"""Command-line entry point: python -m kurepa_search <command> [flags]."""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, fields
from typing import Sequence

from kurepa_search.analysis.kurepa import counterexample_probability, expected_low_residues, kurepa_scan
from kurepa_search.analysis.reference import TABLE1
from kurepa_search.analysis.report import render_json, render_text
from kurepa_search.analysis.socialist import socialist_bruteforce, socialist_filter
from kurepa_search.config import Settings, load_settings
from kurepa_search.core.residues import balance, left_factorial_oracle
from kurepa_search.pipeline.checkpoint import CheckpointStore
from kurepa_search.pipeline.records import read_residue_csv, write_residue_csv
from kurepa_search.pipeline.scan import scan_interval
from kurepa_search.primes.sieve import primes_in
from kurepa_search.queue.worker import run_worker
from kurepa_search.verify.residue import verify_residue

logger = logging.getLogger(__name__)

COMMANDS = ("scan", "verify", "oracle", "socialist", "predict", "report")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2


@dataclass
class RunConfig:
    command: str
    from_: int | None = None
    to: int | None = None
    prime: int | None = None
    threshold: int | None = None
    checkpoint_dir: str | None = None
    out: str | None = None
    block_budget: int | None = None
    threads: int | None = None
    config: str | None = None
    input: str | None = None
    json: bool = False
    verify_sample: int = 0
    seed: int | None = None
    table: bool = False
    from_exp: float | None = None
    to_exp: float | None = None
    ell: int | None = None
    brute_limit: int = 10_000
    log_level: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.command in ("scan", "socialist"):
            if self.from_ is None or self.to is None:
                raise ValueError(f"{self.command} needs --from and --to")
            if not 0 <= self.from_ < self.to:
                raise ValueError(f"need 0 <= from < to, got ({self.from_}, {self.to})")
        if self.command == "scan" and not self.out:
            raise ValueError("scan needs --out")
        if self.command in ("verify", "oracle") and self.prime is None and not (self.command == "verify" and self.table):
            raise ValueError(f"{self.command} needs --prime")
        if self.command == "predict" and (self.from_exp is None or self.to_exp is None):
            raise ValueError("predict needs --from-exp and --to-exp")
        if self.command == "report" and not self.input:
            raise ValueError("report needs --input")
        for name in ("threshold", "block_budget", "threads", "ell"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.verify_sample < 0:
            raise ValueError("--verify-sample must be nonnegative")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kurepa_search", description="Left-factorial residues !p mod p.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--from", dest="from_", type=int, help="Interval start (exclusive).")
    parser.add_argument("--to", type=int, help="Interval end (inclusive).")
    parser.add_argument("--prime", type=int)
    parser.add_argument("--threshold", type=int, help="Near-miss bound: |r_p| < threshold (default 100).")
    parser.add_argument("--checkpoint-dir")
    parser.add_argument("--out", help="Residue CSV to write.")
    parser.add_argument("--block-budget", type=int, help="Integers per scan sub-interval.")
    parser.add_argument(
        "--threads", type=int, help="Processes for --verify-sample and verify --table; scans run in one process."
    )
    parser.add_argument("--config", help="dotenv-format settings file.")
    parser.add_argument("--input", help="Residue CSV to re-analyze (report).")
    parser.add_argument("--json", action="store_true", help="Print the near-miss report as JSON.")
    parser.add_argument("--verify-sample", type=int, default=0, help="Re-verify this many scanned residues.")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--table", action="store_true", help="verify: check every published near miss.")
    parser.add_argument("--from-exp", type=float)
    parser.add_argument("--to-exp", type=float)
    parser.add_argument("--ell", type=int)
    parser.add_argument("--brute-limit", type=int, default=10_000)
    parser.add_argument("--log-level")
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    names = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in names})


def _scan(config: RunConfig, cfg: Settings) -> int:
    checkpoint_dir = config.checkpoint_dir or cfg.CHECKPOINT_DIR
    store = CheckpointStore(checkpoint_dir, cfg.LOCK_TIMEOUT_S) if checkpoint_dir else None
    records, _ = scan_interval(
        config.from_,
        config.to,
        store,
        config.block_budget or cfg.BLOCK_BUDGET,
        window=cfg.SIEVE_WINDOW,
    )
    write_residue_csv(records, config.out)
    logger.info("[SCAN] wrote %d residues to %s", len(records), config.out)

    report = kurepa_scan(records, config.threshold or cfg.THRESHOLD, span=(config.from_, config.to))
    sys.stdout.write(render_json(report) if config.json else render_text(report))

    if config.verify_sample:
        checks = run_worker(
            records, sample=config.verify_sample, seed=config.seed, threads=config.threads or cfg.THREADS,
            chunk=cfg.EVAL_CHUNK,
        )
        if not all(c.ok for c in checks):
            raise RuntimeError("spot check disagreed with the scan")
    return EXIT_COUNTEREXAMPLE if report.has_counterexample else EXIT_OK


def _verify(config: RunConfig, cfg: Settings) -> int:
    if not config.table:
        print(verify_residue(config.prime, cfg.EVAL_CHUNK).value)
        return EXIT_OK
    checks = run_worker(primes=[p for p, _ in TABLE1], threads=config.threads or cfg.THREADS, chunk=cfg.EVAL_CHUNK)
    for c in checks:
        print(f"{c.p} {c.verified} {'ok' if c.ok else 'MISMATCH'}")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_ERROR


def _oracle(config: RunConfig, cfg: Settings) -> int:
    print(balance(left_factorial_oracle(config.prime), config.prime).value)
    return EXIT_OK


def _socialist(config: RunConfig, cfg: Settings) -> int:
    lo = max(config.from_, 5)
    candidates: list[int] = []
    if config.to > lo:
        records, _ = scan_interval(lo, config.to, block_budget=config.block_budget or cfg.BLOCK_BUDGET, window=cfg.SIEVE_WINDOW)
        candidates = [r.p for r in records if socialist_filter(r.p, r.canonical)]
    survivors = [p for p in candidates if socialist_bruteforce(p)]

    brute_hi = min(config.to, config.brute_limit)
    brute = [p for p in primes_in(config.from_, brute_hi, cfg.SIEVE_WINDOW) if p >= 3] if brute_hi > config.from_ else []
    distinct = [p for p in brute if socialist_bruteforce(p)]

    print(f"congruence candidates: {len(candidates)}")
    print(f"candidates with distinct factorials: {', '.join(map(str, survivors)) or 'none'}")
    print(f"brute force up to {brute_hi}: {', '.join(map(str, distinct)) or 'none'}")
    return EXIT_OK


def _predict(config: RunConfig, cfg: Settings) -> int:
    ell = config.ell or config.threshold or cfg.THRESHOLD
    print(f"expected |r_p| < {ell}: {expected_low_residues(config.from_exp, config.to_exp, ell):.1f}")
    print(f"counterexample probability: {counterexample_probability(config.from_exp, config.to_exp):.4f}")
    return EXIT_OK


def _report(config: RunConfig, cfg: Settings) -> int:
    records = read_residue_csv(config.input)
    span = (config.from_, config.to) if config.from_ is not None and config.to is not None else None
    report = kurepa_scan(records, config.threshold or cfg.THRESHOLD, span=span)
    sys.stdout.write(render_json(report) if config.json else render_text(report))
    return EXIT_COUNTEREXAMPLE if report.has_counterexample else EXIT_OK


_HANDLERS = {
    "scan": _scan,
    "verify": _verify,
    "oracle": _oracle,
    "socialist": _socialist,
    "predict": _predict,
    "report": _report,
}


def run(config: RunConfig) -> int:
    """Execute one command; 0 ok, 2 Kurepa counterexample found, 1 error."""
    try:
        cfg = load_settings(config.config) if config.config else Settings()
        config.validate()
        return _HANDLERS[config.command](config, cfg)
    except (ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    level = config.log_level
    if level is None:
        try:
            level = (load_settings(config.config) if config.config else Settings()).LOG_LEVEL
        except (ValueError, RuntimeError):
            level = "INFO"
    try:
        logging.basicConfig(level=level.upper(), format="%(levelname)s %(name)s: %(message)s")
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    return run(config)
