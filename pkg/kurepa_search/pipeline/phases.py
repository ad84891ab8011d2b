"""The four phases of an interval scan over (m, n].

Phase 1 builds the moduli P_{i,j}, Phase 2 reduces M_m, Phase 3 forms the
block products A_{i,j} and Phase 4 descends to R_{h,j} = M_{p-1} mod p.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from kurepa_search.bigprod.trees import ProductTree, mat_product_levels, product_tree, remainder_walk
from kurepa_search.core.matrix import IDENTITY, MatPair, c_of, combine, reduce
from kurepa_search.core.residues import balance
from kurepa_search.pipeline.checkpoint import EMPTY, Checkpoint, extend_checkpoint
from kurepa_search.pipeline.records import ResidueRecord
from kurepa_search.pipeline.segments import Segment, bounds, height, leaf_index, segment
from kurepa_search.primes.sieve import primes_in

logger = logging.getLogger(__name__)


class PipelineError(RuntimeError):
    pass


@dataclass
class SegmentTree:
    """Dyadic decomposition of (m, n] with moduli and stored block products.

    blocks[(i, j)] holds A_{i,j} reduced modulo the parent modulus
    P_{i-1, j//2} (P_{0,0} at the root); nodes whose parent modulus is 1
    are absent.
    """

    m: int
    n: int
    height: int
    moduli: ProductTree[Any]
    blocks: dict[tuple[int, int], MatPair] = field(default_factory=dict)

    @property
    def p00(self) -> Any:
        return self.moduli.root

    def segment(self, i: int, j: int) -> Segment:
        return segment(self.m, self.n, i, j)

    def modulus(self, i: int, j: int) -> Any:
        return self.moduli.levels[i][j]

    def parent_modulus(self, i: int, j: int) -> Any:
        return self.p00 if i == 0 else self.moduli.levels[i - 1][j // 2]

    def block(self, i: int, j: int) -> MatPair:
        """A_{i,j} mod P_{i,j}."""
        return reduce(self.blocks[(i, j)], self.modulus(i, j))


def phase1_moduli(m: int, n: int, window: int | None = None) -> SegmentTree:
    if m < 0 or n <= m:
        raise ValueError(f"invalid interval ({m}, {n}]")
    h = height(m, n)
    leaves: list[int] = [1] * (1 << h)
    primes = primes_in(m, n, window)
    for p in primes:
        leaves[leaf_index(m, n, p)] = p
    tree = SegmentTree(m=m, n=n, height=h, moduli=product_tree(leaves))
    logger.debug("[PHASE1] (%d, %d]: %d primes, h=%d", m, n, len(primes), h)
    return tree


def phase2_prefix(m: int, p00: int, checkpoint: Checkpoint | None = None) -> tuple[MatPair, Checkpoint]:
    """M_m mod p00 and the frontier extended to m."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    checkpoint = checkpoint or EMPTY
    if checkpoint.m > m:
        raise ValueError(f"checkpoint covers m={checkpoint.m}, beyond the requested m={m}")
    extended = extend_checkpoint(checkpoint, m)
    prefix = extended.reduced_product(p00)
    logger.debug("[PHASE2] M_%d reduced over %d blocks (%d new)", m, len(extended.blocks), m - checkpoint.m)
    return prefix, extended


def _leaf_matrix(m: int, n: int, h: int, j: int) -> MatPair:
    lo, hi = bounds(m, n, h, j)
    return c_of(hi) if hi > lo else IDENTITY


def phase3_blocks(tree: SegmentTree) -> dict[tuple[int, int], MatPair]:
    """Fill tree.blocks bottom-up, one unreduced level alive at a time."""
    tree.blocks = {}
    if tree.p00 == 1:
        return tree.blocks
    h = tree.height
    leaves = (_leaf_matrix(tree.m, tree.n, h, j) for j in range(1 << h))
    for i, level in zip(range(h, -1, -1), mat_product_levels(leaves)):
        for j, value in enumerate(level):
            parent = tree.parent_modulus(i, j)
            if parent != 1:
                tree.blocks[(i, j)] = reduce(value, parent)
    logger.debug("[PHASE3] (%d, %d]: %d blocks stored", tree.m, tree.n, len(tree.blocks))
    return tree.blocks


def phase4_descend(r00: MatPair, tree: SegmentTree) -> list[ResidueRecord]:
    """R_{i+1,2j} = R_{i,j}, R_{i+1,2j+1} = R_{i,j} A_{i+1,2j}, each reduced
    modulo its own P; at a prime leaf (p-1, p], r_p = a + b of M_{p-1}."""
    if tree.p00 == 1:
        return []

    def shift(i: int, j: int, value: MatPair, modulus: Any) -> MatPair:
        if modulus == 1:
            return value
        left = tree.blocks[(i, j - 1)]
        return combine(reduce(value, modulus), reduce(left, modulus))

    leaves = remainder_walk(r00, tree.moduli, shift=shift)

    records = []
    h = tree.height
    for j, (modulus, value) in enumerate(zip(tree.moduli.leaves, leaves)):
        if modulus == 1:
            continue
        lo, hi = bounds(tree.m, tree.n, h, j)
        if hi - lo != 1 or modulus != hi:
            raise PipelineError(f"leaf ({lo}, {hi}] carries modulus {modulus}")
        p = int(modulus)
        a, b = int(value.a), int(value.b)
        if a != p - 1:
            raise PipelineError(f"Wilson check failed at p={p}: (p-1)! = {a} mod p")
        records.append(ResidueRecord(p, balance((a + b) % p, p)))
    logger.debug("[PHASE4] (%d, %d]: %d residues", tree.m, tree.n, len(records))
    return records
