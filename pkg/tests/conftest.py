import pytest

from ellarr import arrangement as arr_mod
from ellarr import braid, cohomology
from ellarr.arrangement import Arrangement
from ellarr.model import BigradedDGA

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


EXAMPLE_COLUMNS = ((1, 0), (1, 5), (2, 5))        # P1=O, P1+5P2=O, 2P1+5P2=O
EXAMPLE_PRIME_COLUMNS = ((2, 5), (1, 0), (-3, -5))  # same poset, other matrix
EXAMPLE_DOUBLE_PRIME = ((1, 0), (2, 5), (3, 5))     # sign/permutation twist


@pytest.fixture(scope="session")
def example_arrangement():
    return Arrangement(2, EXAMPLE_COLUMNS)


@pytest.fixture(scope="session")
def example_prime_arrangement():
    return Arrangement(2, EXAMPLE_PRIME_COLUMNS)


@pytest.fixture(scope="session")
def example_poset(example_arrangement):
    return arr_mod.build_poset(example_arrangement)


@pytest.fixture(scope="session")
def example_model(example_arrangement, example_poset):
    return BigradedDGA(example_arrangement, example_poset)


@pytest.fixture(scope="session")
def braid_models():
    """Reduced braid models by n, built once per session."""
    return {n: braid.braid_model(n) for n in range(2, 7)}


@pytest.fixture(scope="session")
def braid_page3(braid_models):
    return {n: cohomology.page3_table(m) for n, m in braid_models.items()}
