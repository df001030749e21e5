import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from markermt.network import load_network

FIXTURES = Path(__file__).parent.parent / "src" / "markermt" / "fixtures"
TRAVEL_NET = FIXTURES / "travel.net"
TRAVEL_CORPUS = FIXTURES / "travel.corpus"


@pytest.fixture(scope="session")
def travel_text() -> str:
    return TRAVEL_NET.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def net(travel_text):
    return load_network(travel_text)
