from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("repo", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

DEMO_CORPUS = Path(__file__).resolve().parents[1] / "src" / "groupaccretion" / "data" / "demo_corpus.tsv"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def demo_corpus_path():
    return DEMO_CORPUS


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def hypergraphs(draw, max_n=10, max_groups=6, max_size=4):
    """(groups, n): unique canonical groups over n actors."""
    n = draw(st.integers(2, max_n))
    groups = draw(st.lists(
        st.frozensets(st.integers(0, n - 1), min_size=1, max_size=min(max_size, n)),
        min_size=1, max_size=max_groups, unique=True))
    return [tuple(sorted(g)) for g in groups], n


def random_groups(rng: np.random.Generator, n: int, m: int, max_size: int = 4):
    out = set()
    while len(out) < m:
        size = int(rng.integers(1, max_size + 1))
        out.add(tuple(sorted(set(rng.choice(n, size=min(size, n), replace=False).tolist()))))
    return sorted(out)
