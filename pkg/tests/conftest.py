import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("quick", max_examples=30, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def letter_codes(rank: int = 3):
    return st.integers(1, rank).flatmap(lambda i: st.sampled_from((i, -i)))


def codes(rank: int = 3, max_size: int = 64):
    return st.lists(letter_codes(rank), max_size=max_size).map(tuple)


# one line per acceptance criterion, collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
