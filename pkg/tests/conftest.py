import itertools
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from ghlab.metric import validate  # noqa: E402


@st.composite
def metric_spaces(draw, min_n=1, max_n=4, max_weight=12, denominator=2):
    """Shortest-path closure of random positive weights: always a valid metric."""
    n = draw(st.integers(min_n, max_n))
    d = [[Fraction(0)] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        w = Fraction(draw(st.integers(1, max_weight)), denominator)
        d[i][j] = d[j][i] = w
    for k, i, j in itertools.product(range(n), repeat=3):
        if d[i][k] + d[k][j] < d[i][j]:
            d[i][j] = d[i][k] + d[k][j]
    return validate(d)


@pytest.fixture
def pythagorean():
    return validate([[0, 3, 4], [3, 0, 5], [4, 5, 0]])


@pytest.fixture
def far_triangle():
    return validate([[0, 10, 11], [10, 0, 12], [11, 12, 0]])


@pytest.fixture
def blow_up():
    """Point 0 of the 3-4-5 triangle split in two."""
    return validate([
        [0, "1/10", 3, 4],
        ["1/10", 0, "61/20", "199/50"],
        [3, "61/20", 0, 5],
        [4, "199/50", 5, 0],
    ])


_ACCEPTANCE: list = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(label, passed, detail=""):
        _ACCEPTANCE.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
