import re

import numpy as np
import pytest

from qubit_tomo import MeasurementDataSet


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def random_physical(rng, count=1):
    """Uniform random Bloch vectors inside the unit ball, shape (count, 3)."""
    v = rng.normal(size=(count, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    v *= rng.random(size=(count, 1)) ** (1.0 / 3.0)
    return v


def random_pure(rng, count=1):
    """Uniform random Bloch vectors on the unit sphere, shape (count, 3)."""
    v = rng.normal(size=(count, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def dataset_from_counts(n, counts):
    """Data set with given +1 counts (outcome order does not matter to estimators)."""
    rows = [
        np.concatenate([np.ones(c, dtype=np.int8), -np.ones(n - c, dtype=np.int8)])
        for c in counts
    ]
    return MeasurementDataSet.from_outcomes(np.stack(rows))


_acceptance_outcomes = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    match = re.search(r"test_acceptance\.py::test_(a\d+)_", report.nodeid)
    if match:
        _acceptance_outcomes[match.group(1).upper()] = report.passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # One visible PASS/FAIL line per acceptance criterion.
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance_outcomes, key=lambda s: int(s[1:])):
        status = "PASS" if _acceptance_outcomes[label] else "FAIL"
        terminalreporter.write_line(f"{label}: {status}")
