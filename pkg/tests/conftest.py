import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from contextuality import bell_scenario, new_scenario
from contextuality.catalog import bell_boxes, pr_box, tsirelson_box

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def triangle():
    return new_scenario(
        "triangle", ["v1", "v2", "v3"], [["v1", "v2"], ["v2", "v3"], ["v1", "v3"]]
    )


@pytest.fixture(scope="session")
def b122():
    return bell_scenario(1, 2, 2)


@pytest.fixture(scope="session")
def b222():
    return bell_scenario(2, 2, 2)


@pytest.fixture(scope="session")
def pr(b222):
    return pr_box(b222)


@pytest.fixture(scope="session")
def tsirelson(b222):
    return tsirelson_box(b222)


@pytest.fixture(scope="session")
def boxes():
    return bell_boxes()
