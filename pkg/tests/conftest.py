import json
from pathlib import Path

import pytest

from stvtrace.canonical import parse_canonical

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"
REPO_ROOT = Path(__file__).parent.parent


@pytest.fixture(scope="session")
def oracle_path() -> Path:
    return FIXTURES / "oracle.json"


@pytest.fixture(scope="session")
def oracle_data(oracle_path):
    return parse_canonical(oracle_path.read_bytes())


@pytest.fixture(scope="session")
def grouped_path() -> Path:
    return FIXTURES / "grouped_senate.json"


@pytest.fixture(scope="session")
def grouped_data(grouped_path):
    return parse_canonical(grouped_path.read_bytes())


@pytest.fixture(scope="session")
def negative_fixture() -> dict:
    return json.loads((FIXTURES / "negative_contribution.json").read_text())


@pytest.fixture(scope="session")
def divergent_fixture() -> dict:
    return json.loads((FIXTURES / "divergent_journey.json").read_text())
