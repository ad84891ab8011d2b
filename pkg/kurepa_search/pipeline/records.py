from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import pandas as pd

from kurepa_search.core.residues import BalancedResidue

CSV_COLUMNS = ["p", "residue"]


@dataclass(frozen=True)
class ResidueRecord:
    p: int
    residue: BalancedResidue

    @property
    def canonical(self) -> int:
        return self.residue.canonical

    @property
    def is_counterexample(self) -> bool:
        """Odd p dividing !p would refute Kurepa's conjecture."""
        return self.p % 2 == 1 and self.canonical == 0


def records_frame(records: Iterable[ResidueRecord]) -> pd.DataFrame:
    rows = sorted(records, key=lambda r: r.p)
    return pd.DataFrame(
        {"p": [r.p for r in rows], "residue": [r.residue.value for r in rows]},
        columns=CSV_COLUMNS,
    ).astype("int64")


def write_residue_csv(records: Iterable[ResidueRecord], path: str | Path) -> None:
    records_frame(records).to_csv(path, index=False, lineterminator="\n")


def read_residue_csv(path: str | Path) -> list[ResidueRecord]:
    df = pd.read_csv(path, dtype="int64")
    if list(df.columns) != CSV_COLUMNS:
        raise ValueError(f"{path}: expected columns {CSV_COLUMNS}, got {list(df.columns)}")
    records = []
    for p, value in zip(df["p"].tolist(), df["residue"].tolist()):
        if p < 2 or not -p < 2 * value <= p:
            raise ValueError(f"{path}: residue {value} is not balanced modulo {p}")
        records.append(ResidueRecord(p, BalancedResidue(value, p)))
    return sorted(records, key=lambda r: r.p)
