import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from ordmatch.corpus import compact_graph, fixtures  # noqa: E402

# enumeration oracles make run times uneven across examples
settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def corpus():
    return fixtures()


@pytest.fixture
def three_right():
    return compact_graph("x1 x2", "y1 y2 y3", "x1y2 x1y3 x2y2")
