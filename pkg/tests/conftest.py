import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from peakspr.poset import build_poset  # noqa: E402
from peakspr.quiver import QuiverA  # noqa: E402

DATA = Path(__file__).parent / "data"

E1_COVERS = [(3, 1), (1, 2), (3, 4), (4, 5), (6, 4), (6, 7)]
E1_WORD = "RLRRLR"
E1_ALIENS = ((3, 1), (6, 4))


@pytest.fixture
def e1():
    return build_poset(range(1, 8), E1_COVERS)


@pytest.fixture
def e1_quiver():
    return QuiverA.from_string(E1_WORD)


@pytest.fixture
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.lines():
            terminalreporter.write_line(line)
