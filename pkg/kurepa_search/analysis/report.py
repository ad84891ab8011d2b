from __future__ import annotations

import json

import pandas as pd

from kurepa_search.analysis.kurepa import NearMissReport


def report_frame(report: NearMissReport) -> pd.DataFrame:
    return pd.DataFrame(
        {"p": [r.p for r in report.rows], "r_p": [r.residue.value for r in report.rows]},
        columns=["p", "r_p"],
    ).astype("int64")


def render_text(report: NearMissReport) -> str:
    lines = []
    if report.span:
        lines.append(f"interval: ({report.span[0]}, {report.span[1]}]")
    lines.append(f"|r_p| < {report.threshold}: observed {report.observed_count}, expected {report.expected_count:.1f}")
    if report.counterexamples:
        lines.append("counterexamples: " + ", ".join(str(r.p) for r in report.counterexamples))
    if report.rows:
        lines.append(report_frame(report).to_string(index=False))
    return "\n".join(lines) + "\n"


def render_json(report: NearMissReport) -> str:
    payload = {
        "threshold": report.threshold,
        "span": list(report.span) if report.span else None,
        "observed_count": report.observed_count,
        "expected_count": round(report.expected_count, 3),
        "counterexamples": [r.p for r in report.counterexamples],
        "rows": [{"p": r.p, "r_p": r.residue.value} for r in report.rows],
    }
    return json.dumps(payload, indent=2) + "\n"
