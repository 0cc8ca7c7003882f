import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from gradedbv import Chart  # noqa: E402
from gradedbv.calculus import as_multivector  # noqa: E402
from gradedbv.cli.parser import parse  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

C22 = Chart(2, 2)
C20 = Chart(2, 0)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_of(seed):
    return random.Random(seed)


def P(text, chart=C22):
    return parse(text, chart)


def MV(text, chart=C22):
    return as_multivector(parse(text, chart))


@pytest.fixture
def chart():
    return C22


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
