import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from geninv.syntax import parse_element, parse_ring  # noqa: E402


@pytest.fixture
def el():
    """``el("Z:6", "5")`` -> Element."""

    def make(spec, literal):
        return parse_element(parse_ring(spec), str(literal))

    return make

from hypothesis import settings  # noqa: E402

# Table construction and JIT warm-up make first calls slow; timing is not under test.
settings.register_profile("geninv", deadline=None)
settings.load_profile("geninv")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
