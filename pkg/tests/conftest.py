import os
from pathlib import Path

import pytest

from kshell_influence.graph import disjoint_union, from_edges

DATA_DIR = Path(os.environ.get("KSHELL_DATA_DIR", Path(__file__).resolve().parents[1] / "data"))

# results recorded by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE = {}


def dataset_path(*names):
    for n in names:
        p = DATA_DIR / n
        if p.exists():
            return p
    return None


def triangle():
    return from_edges(3, [0, 1, 0], [1, 2, 2])


def star(leaves=4):
    return from_edges(leaves + 1, [0] * leaves, list(range(1, leaves + 1)))


def path(n):
    return from_edges(n, list(range(n - 1)), list(range(1, n)))


def cycle(n):
    return from_edges(n, list(range(n)), [(i + 1) % n for i in range(n)])


@pytest.fixture
def tri():
    return triangle()


@pytest.fixture
def star4():
    return star(4)


@pytest.fixture
def k3_star():
    """Triangle on ids 0-2 plus K1,4 with center 3."""
    return disjoint_union(triangle(), star(4))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.split(".")[0]), k)):
        status, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {status} {detail}")
