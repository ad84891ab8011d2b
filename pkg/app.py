from __future__ import annotations

import io
import time

import pandas as pd
import streamlit as st

from kurepa_search.analysis.kurepa import counterexample_probability, expected_low_residues, kurepa_scan
from kurepa_search.analysis.reference import TABLE1, TABLE1_FROM_EXP, TABLE1_THRESHOLD, TABLE1_TO_EXP
from kurepa_search.analysis.report import render_json, report_frame
from kurepa_search.config import settings
from kurepa_search.core.residues import balance, left_factorial_oracle
from kurepa_search.pipeline.records import read_residue_csv, records_frame
from kurepa_search.pipeline.scan import scan_interval
from kurepa_search.verify.fieldops import MAX_MODULUS_BITS
from kurepa_search.verify.residue import verify_residue


# -------------------------
# Helpers
# -------------------------

# Interactive scans stay small; larger intervals belong to the CLI.
MAX_UI_SCAN = 1 << 22


def show_report(report) -> None:
    c1, c2, c3 = st.columns(3)
    c1.metric("Near misses", report.observed_count)
    c2.metric("Expected", f"{report.expected_count:.1f}")
    c3.metric("Counterexamples", len(report.counterexamples))
    if report.counterexamples:
        st.error("Odd prime dividing !p found: " + ", ".join(str(r.p) for r in report.counterexamples))
    if report.rows:
        st.dataframe(report_frame(report), hide_index=True)
    else:
        st.info(f"No prime with |r_p| < {report.threshold}.")


# -------------------------
# App
# -------------------------

st.set_page_config(page_title="Kurepa Search", layout="wide")
st.title("Kurepa Search")
st.caption("Left-factorial residues r_p = !p mod p, balanced into (-p/2, p/2].")

tabs = st.tabs(["1) Scan", "2) Report", "3) Verify", "4) Heuristics"])


# -------------------------
# Tab 1: Scan an interval
# -------------------------
with tabs[0]:
    st.subheader("Scan primes in (from, to]")
    c1, c2, c3 = st.columns(3)
    lo = c1.number_input("From (exclusive)", min_value=0, value=2, step=1, key="scan_from")
    hi = c2.number_input("To (inclusive)", min_value=1, value=10_000, step=1, key="scan_to")
    ell = c3.number_input("Threshold", min_value=1, value=settings.THRESHOLD, step=1, key="scan_ell")

    if hi <= lo:
        st.error("'To' must exceed 'From'.")
    elif hi - lo > MAX_UI_SCAN:
        st.warning(f"Intervals longer than {MAX_UI_SCAN} integers: use `python -m kurepa_search scan`.")
    elif st.button("Run scan", type="primary"):
        started = time.perf_counter()
        with st.spinner("Running the four phases…"):
            records, _ = scan_interval(int(lo), int(hi))
        st.session_state["scan_records"] = records
        st.session_state["scan_span"] = (int(lo), int(hi))
        st.success(f"{len(records)} residues in {time.perf_counter() - started:.2f}s.")

    records = st.session_state.get("scan_records")
    if records:
        report = kurepa_scan(records, int(ell), span=st.session_state["scan_span"])
        show_report(report)
        buf = io.StringIO()
        records_frame(records).to_csv(buf, index=False, lineterminator="\n")
        st.download_button("Download residues CSV", buf.getvalue(), file_name="residues.csv", mime="text/csv")


# -------------------------
# Tab 2: Near-miss report from a CSV
# -------------------------
with tabs[1]:
    st.subheader("Re-analyze a residue CSV")
    up = st.file_uploader("Residue CSV (columns p,residue)", type=["csv"])
    ell2 = st.number_input("Threshold", min_value=1, value=settings.THRESHOLD, step=1, key="report_ell")
    if up is not None:
        try:
            loaded = read_residue_csv(io.BytesIO(up.getvalue()))
        except ValueError as e:
            st.error(str(e))
        else:
            report = kurepa_scan(loaded, int(ell2))
            show_report(report)
            st.download_button("Download JSON report", render_json(report), file_name="report.json")


# -------------------------
# Tab 3: Verify one prime
# -------------------------
with tabs[2]:
    st.subheader("Verify a single residue")
    st.caption(f"Square-root verifier for odd primes 3 < p < 2^{MAX_MODULUS_BITS}; direct summation for small p.")
    p = st.number_input("Prime p", min_value=2, value=22_370_028_691, step=1, key="verify_p")
    published = dict(TABLE1)
    c1, c2 = st.columns(2)
    if c1.button("Verify (square-root)"):
        try:
            started = time.perf_counter()
            with st.spinner("Evaluating the giant-step polynomial…"):
                r = verify_residue(int(p))
            st.success(f"r_{int(p)} = {r.value}  ({time.perf_counter() - started:.1f}s)")
            if int(p) in published and published[int(p)] != r.value:
                st.error(f"Published value is {published[int(p)]}.")
        except (ValueError, RuntimeError) as e:
            st.error(str(e))
    if c2.button("Oracle (direct sum)", disabled=int(p) > 10**7):
        st.success(f"r_{int(p)} = {balance(left_factorial_oracle(int(p)), int(p)).value}")

    with st.expander(
        f"Published near misses |r_p| < {TABLE1_THRESHOLD} in (2^{TABLE1_FROM_EXP}, 2^{TABLE1_TO_EXP})"
    ):
        st.dataframe(pd.DataFrame(TABLE1, columns=["p", "r_p"]), hide_index=True)


# -------------------------
# Tab 4: Heuristics
# -------------------------
with tabs[3]:
    st.subheader("Expected near misses over (2^m, 2^n)")
    c1, c2, c3 = st.columns(3)
    m_exp = c1.number_input("m", min_value=1.0, value=34.0, key="pred_m")
    n_exp = c2.number_input("n", min_value=1.0, value=40.0, key="pred_n")
    ell4 = c3.number_input("Threshold", min_value=1, value=10_000, step=1, key="pred_ell")
    if n_exp > m_exp:
        st.metric("Expected primes with |r_p| < threshold", f"{expected_low_residues(m_exp, n_exp, int(ell4)):.1f}")
        st.metric("Probability of a counterexample", f"{counterexample_probability(m_exp, n_exp):.1%}")
    else:
        st.error("n must exceed m.")
