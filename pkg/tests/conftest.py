import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from classdiff import LabelMatrix  # noqa: E402

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_labels(rng, n, k, p=0.3):
    """Random binary matrix where every class has at least one positive."""
    Y = (rng.random((n, k)) < p).astype(int)
    for j in np.flatnonzero(Y.sum(axis=0) == 0):
        Y[rng.integers(n), j] = 1
    return LabelMatrix.from_array(Y)


@pytest.fixture
def rng():
    return np.random.default_rng(20200101)
