from __future__ import annotations

import logging
import time
from contextlib import nullcontext

from kurepa_search.config import settings
from kurepa_search.pipeline.checkpoint import EMPTY, Checkpoint, CheckpointStore, extend_checkpoint
from kurepa_search.pipeline.phases import phase1_moduli, phase2_prefix, phase3_blocks, phase4_descend
from kurepa_search.pipeline.records import ResidueRecord

logger = logging.getLogger(__name__)


def sub_intervals(m: int, n: int, block_budget: int) -> list[tuple[int, int]]:
    if block_budget < 1:
        raise ValueError("block budget must be positive")
    return [(a, min(a + block_budget, n)) for a in range(m, n, block_budget)]


def scan_interval(
    m: int,
    n: int,
    checkpoint_store: CheckpointStore | None = None,
    block_budget: int | None = None,
    *,
    checkpoint: Checkpoint | None = None,
    window: int | None = None,
) -> tuple[list[ResidueRecord], Checkpoint]:
    """r_p for every prime p in (m, n], ascending, plus the frontier at n.

    The starting frontier is the explicit checkpoint if given, else the
    newest stored one not beyond m. Records of a sub-interval are kept only
    once all four phases of that sub-interval have finished.
    """
    if m < 0 or n <= m:
        raise ValueError(f"invalid interval ({m}, {n}]")
    budget = block_budget or settings.BLOCK_BUDGET

    guard = checkpoint_store.locked() if checkpoint_store else nullcontext()
    with guard:
        if checkpoint is None and checkpoint_store is not None:
            checkpoint = checkpoint_store.latest(at_most=m)
        frontier = checkpoint or EMPTY

        records: list[ResidueRecord] = []
        for a, b in sub_intervals(m, n, budget):
            started = time.perf_counter()
            tree = phase1_moduli(a, b, window)
            if tree.p00 == 1:
                logger.info("[SCAN] (%d, %d]: no primes", a, b)
                continue
            r00, frontier = phase2_prefix(a, tree.p00, frontier)
            phase3_blocks(tree)
            found = phase4_descend(r00, tree)

            for rec in found:
                if rec.is_counterexample:
                    logger.warning("[KUREPA] counterexample: %d divides !%d", rec.p, rec.p)
            records.extend(found)
            if checkpoint_store is not None:
                checkpoint_store.save(frontier)
            logger.info(
                "[SCAN] (%d, %d]: %d residues in %.2fs", a, b, len(found), time.perf_counter() - started
            )

        frontier = extend_checkpoint(frontier, n)
        if checkpoint_store is not None:
            checkpoint_store.save(frontier)
    return records, frontier
