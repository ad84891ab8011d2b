"""Binary-counter frontier of M_m = C_1 ... C_m and its on-disk store.

File layout (integers little-endian, magnitudes big-endian):
    b"LFCK" | version u32 | m u64 | block count u32 |
    per block: k_start u64, k_end u64, then a and b each as
    byte-length u64 followed by the magnitude bytes.
"""
from __future__ import annotations

import fcntl
import logging
import os
import re
import struct
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import gmpy2
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_delay, wait_fixed

from kurepa_search.bigprod.trees import mat_product_range
from kurepa_search.config import settings
from kurepa_search.core.matrix import IDENTITY, MatPair, combine, combine_mod, reduce

logger = logging.getLogger(__name__)

MAGIC = b"LFCK"
VERSION = 1

_HEAD = struct.Struct("<4sIQI")
_RANGE = struct.Struct("<QQ")
_LEN = struct.Struct("<Q")


class CheckpointError(RuntimeError):
    pass


@dataclass(frozen=True)
class CheckpointBlock:
    k_start: int
    k_end: int
    value: MatPair

    @property
    def size(self) -> int:
        return self.k_end - self.k_start + 1


@dataclass(frozen=True)
class Checkpoint:
    """Unreduced block products whose ordered fold is M_m."""

    m: int
    blocks: tuple[CheckpointBlock, ...] = ()

    def validate(self) -> None:
        expected = 1
        for blk in self.blocks:
            if blk.k_start != expected or blk.k_end < blk.k_start:
                raise CheckpointError(
                    f"frontier for m={self.m} is not contiguous at block [{blk.k_start}, {blk.k_end}]"
                )
            if blk.size & (blk.size - 1):
                raise CheckpointError(f"block [{blk.k_start}, {blk.k_end}] is not a power of two")
            expected = blk.k_end + 1
        if expected - 1 != self.m:
            raise CheckpointError(f"frontier covers [1, {expected - 1}] but claims m={self.m}")

    def product(self) -> MatPair:
        acc = IDENTITY
        for blk in self.blocks:
            acc = combine(acc, blk.value)
        return acc

    def reduced_product(self, modulus: int) -> MatPair:
        acc = reduce(IDENTITY, modulus)
        for blk in self.blocks:
            acc = combine_mod(acc, blk.value, modulus)
        return acc


EMPTY = Checkpoint(m=0)


def binary_blocks(m: int) -> list[tuple[int, int]]:
    """Ranges of the frontier for m: one block of size 2^t per set bit, largest first."""
    out = []
    start = 1
    for bit in reversed(range(m.bit_length())):
        if (m >> bit) & 1:
            size = 1 << bit
            out.append((start, start + size - 1))
            start += size
    return out


def extend_checkpoint(checkpoint: Checkpoint, m: int) -> Checkpoint:
    """Frontier for m reusing every block of checkpoint that survives."""
    if m < checkpoint.m:
        raise ValueError(f"cannot extend a checkpoint at m={checkpoint.m} back to {m}")
    checkpoint.validate()
    if m == checkpoint.m:
        return checkpoint

    target = binary_blocks(m)
    kept: list[CheckpointBlock] = []
    for blk, (start, end) in zip(checkpoint.blocks, target):
        if (blk.k_start, blk.k_end) != (start, end):
            break
        kept.append(blk)
    leftover = list(checkpoint.blocks[len(kept):])

    blocks = list(kept)
    for start, end in target[len(kept):]:
        value = IDENTITY
        covered = start - 1
        while leftover and leftover[0].k_end <= end:
            blk = leftover.pop(0)
            value = combine(value, blk.value)
            covered = blk.k_end
        value = combine(value, mat_product_range(covered + 1, end))
        blocks.append(CheckpointBlock(start, end, value))

    logger.debug("[CHECKPOINT] extended m=%d -> %d, reused %d blocks", checkpoint.m, m, len(kept))
    return Checkpoint(m=m, blocks=tuple(blocks))


def build_checkpoint(m: int) -> Checkpoint:
    return extend_checkpoint(EMPTY, m)


def _magnitude(x: int) -> bytes:
    x = int(x)
    return x.to_bytes((x.bit_length() + 7) // 8, "big")


def dump_checkpoint(checkpoint: Checkpoint) -> bytes:
    out = bytearray(_HEAD.pack(MAGIC, VERSION, checkpoint.m, len(checkpoint.blocks)))
    for blk in checkpoint.blocks:
        out += _RANGE.pack(blk.k_start, blk.k_end)
        for entry in (blk.value.a, blk.value.b):
            raw = _magnitude(entry)
            out += _LEN.pack(len(raw))
            out += raw
    return bytes(out)


def parse_checkpoint(data: bytes) -> Checkpoint:
    view = memoryview(data)
    try:
        magic, version, m, count = _HEAD.unpack_from(view, 0)
    except struct.error as e:
        raise CheckpointError("checkpoint header is truncated") from e
    if magic != MAGIC:
        raise CheckpointError(f"bad magic {bytes(magic)!r}")
    if version != VERSION:
        raise CheckpointError(f"unsupported checkpoint version {version}")

    pos = _HEAD.size
    blocks = []
    try:
        for _ in range(count):
            k_start, k_end = _RANGE.unpack_from(view, pos)
            pos += _RANGE.size
            entries = []
            for _ in range(2):
                (length,) = _LEN.unpack_from(view, pos)
                pos += _LEN.size
                if pos + length > len(view):
                    raise CheckpointError("checkpoint magnitude is truncated")
                entries.append(gmpy2.mpz(int.from_bytes(view[pos : pos + length], "big")))
                pos += length
            blocks.append(CheckpointBlock(k_start, k_end, MatPair(*entries)))
    except struct.error as e:
        raise CheckpointError("checkpoint block table is truncated") from e
    if pos != len(view):
        raise CheckpointError(f"{len(view) - pos} trailing bytes after checkpoint")

    checkpoint = Checkpoint(m=m, blocks=tuple(blocks))
    checkpoint.validate()
    return checkpoint


def save_checkpoint(path: str | Path, checkpoint: Checkpoint) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    path = Path(path)
    data = dump_checkpoint(checkpoint)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".lfck-")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def load_checkpoint(path: str | Path) -> Checkpoint:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise CheckpointError(f"cannot read checkpoint {path}: {e}") from e
    return parse_checkpoint(data)


class CheckpointStore:
    """Directory of frontier files, one per m; newest wins."""

    _NAME = re.compile(r"^M_(\d+)\.lfck$")

    def __init__(self, directory: str | Path, lock_timeout_s: int | None = None):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.lock_timeout_s = settings.LOCK_TIMEOUT_S if lock_timeout_s is None else lock_timeout_s

    def path_for(self, m: int) -> Path:
        return self.directory / f"M_{m:016d}.lfck"

    def available(self) -> list[int]:
        found = []
        for entry in self.directory.iterdir():
            match = self._NAME.match(entry.name)
            if match:
                found.append(int(match.group(1)))
        return sorted(found)

    def latest(self, at_most: int | None = None) -> Checkpoint | None:
        usable = [m for m in self.available() if at_most is None or m <= at_most]
        if not usable:
            return None
        checkpoint = load_checkpoint(self.path_for(usable[-1]))
        logger.info("[CHECKPOINT] loaded frontier m=%d (%d blocks)", checkpoint.m, len(checkpoint.blocks))
        return checkpoint

    def save(self, checkpoint: Checkpoint) -> bool:
        """Write checkpoint unless a newer frontier is already stored."""
        existing = self.available()
        if existing and existing[-1] >= checkpoint.m:
            logger.debug("[CHECKPOINT] kept m=%d, not replaced by m=%d", existing[-1], checkpoint.m)
            return False
        save_checkpoint(self.path_for(checkpoint.m), checkpoint)
        for old in existing:
            self.path_for(old).unlink(missing_ok=True)
        logger.info("[CHECKPOINT] saved frontier m=%d", checkpoint.m)
        return True

    @contextmanager
    def locked(self) -> Iterator["CheckpointStore"]:
        """Advisory lock: one scan per store at a time."""
        lock_path = self.directory / ".lock"
        with open(lock_path, "w") as fh:
            retrying = Retrying(
                stop=stop_after_delay(self.lock_timeout_s),
                wait=wait_fixed(0.2),
                retry=retry_if_exception_type(BlockingIOError),
            )
            try:
                for attempt in retrying:
                    with attempt:
                        fcntl.flock(fh.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
            except RetryError as e:
                raise CheckpointError(
                    f"checkpoint store {self.directory} is locked by another scan"
                ) from e
            try:
                yield self
            finally:
                fcntl.flock(fh.fileno(), fcntl.LOCK_UN)
