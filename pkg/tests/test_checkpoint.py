import math

import pytest

from kurepa_search.core.matrix import as_ints
from kurepa_search.pipeline.checkpoint import (
    EMPTY,
    Checkpoint,
    CheckpointBlock,
    CheckpointError,
    CheckpointStore,
    binary_blocks,
    build_checkpoint,
    dump_checkpoint,
    extend_checkpoint,
    load_checkpoint,
    parse_checkpoint,
    save_checkpoint,
)


def test_binary_blocks():
    assert binary_blocks(0) == []
    assert binary_blocks(13) == [(1, 8), (9, 12), (13, 13)]
    assert binary_blocks(16) == [(1, 16)]
    assert binary_blocks(6) == [(1, 4), (5, 6)]


def test_build_checkpoint_product():
    for m in (1, 2, 7, 13, 64, 100):
        ck = build_checkpoint(m)
        assert as_ints(ck.product()) == (math.factorial(m), sum(math.factorial(k) for k in range(m)))


def test_extend_keeps_common_prefix():
    base = build_checkpoint(12)
    grown = extend_checkpoint(base, 13)
    assert grown.blocks[:2] == base.blocks
    assert grown.product() == build_checkpoint(13).product()


def test_extend_folds_old_blocks_into_larger_one():
    grown = extend_checkpoint(build_checkpoint(7), 9)
    assert [(b.k_start, b.k_end) for b in grown.blocks] == [(1, 8), (9, 9)]
    assert grown.product() == build_checkpoint(9).product()


def test_extend_rejects_going_back():
    with pytest.raises(ValueError):
        extend_checkpoint(build_checkpoint(9), 8)


def test_dump_and_parse(tmp_path):
    ck = build_checkpoint(21)
    data = dump_checkpoint(ck)
    assert data[:4] == b"LFCK"
    assert parse_checkpoint(data) == ck
    path = tmp_path / "M.lfck"
    save_checkpoint(path, ck)
    assert load_checkpoint(path) == ck
    assert parse_checkpoint(dump_checkpoint(EMPTY)) == EMPTY


def test_parse_rejects_corruption():
    data = dump_checkpoint(build_checkpoint(21))
    with pytest.raises(CheckpointError):
        parse_checkpoint(data[:-1])
    with pytest.raises(CheckpointError):
        parse_checkpoint(data + b"\0")
    with pytest.raises(CheckpointError):
        parse_checkpoint(b"XXXX" + data[4:])
    with pytest.raises(CheckpointError):
        parse_checkpoint(data[:10])


def test_validate_rejects_gaps():
    blk = build_checkpoint(8).blocks[0]
    with pytest.raises(CheckpointError):
        Checkpoint(m=9, blocks=(blk, CheckpointBlock(10, 10, blk.value))).validate()
    with pytest.raises(CheckpointError):
        Checkpoint(m=3, blocks=(CheckpointBlock(1, 3, blk.value),)).validate()


def test_load_missing_file(tmp_path):
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path / "nope.lfck")


def test_store_newest_wins(store):
    assert store.latest() is None
    assert store.save(build_checkpoint(10))
    assert store.save(build_checkpoint(20))
    assert not store.save(build_checkpoint(15))
    assert store.available() == [20]
    assert store.latest().m == 20
    assert store.latest(at_most=19) is None


def test_store_lock_times_out(tmp_path):
    first = CheckpointStore(tmp_path, lock_timeout_s=0)
    second = CheckpointStore(tmp_path, lock_timeout_s=0)
    with first.locked():
        with pytest.raises(CheckpointError):
            with second.locked():
                pass
    with second.locked():
        pass
