from streamlit.testing.v1 import AppTest


def load() -> AppTest:
    at = AppTest.from_file("../app.py", default_timeout=60)
    at.run()
    return at


def test_app_renders():
    at = load()
    assert not at.exception
    assert at.title[0].value == "Kurepa Search"
    labels = {m.label: m.value for m in at.metric}
    assert labels["Expected primes with |r_p| < threshold"] == "3250.2"
    assert labels["Probability of a counterexample"] == "15.0%"


def test_app_scan_tab():
    at = load()
    at.number_input(key="scan_to").set_value(1000).run()
    at.button[0].click().run()
    assert not at.exception
    records = at.session_state["scan_records"]
    assert len(records) == 167
    assert records[0].p == 3
