import os

import pytest

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


@pytest.fixture
def na_doublet():
    return os.path.join(DATA_DIR, "na_doublet.txt")
