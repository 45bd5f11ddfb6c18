import json
from pathlib import Path

import pytest

from kh_finite.complex import HomologyTable
from kh_finite.diagram import load_table

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def table():
    return load_table()


def golden_table(name):
    return HomologyTable.from_json(json.loads((GOLDEN / f"{name}.json").read_text()))


def golden(name):
    return json.loads((GOLDEN / f"{name}.json").read_text())
