import json
import sys
from pathlib import Path

import pytest

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))  # makes ``oracles`` importable

FIXTURES = HERE / "fixtures"


@pytest.fixture(scope="session")
def frozen():
    return json.loads((HERE / "data" / "frozen.json").read_text())


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def key(p) -> str:
    return ",".join(map(str, p))
