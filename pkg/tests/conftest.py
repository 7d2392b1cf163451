from pathlib import Path

import pytest

from pmpcruise.scenarios import reference_scenario

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def scenario():
    return reference_scenario()


@pytest.fixture
def data_dir():
    return DATA_DIR
