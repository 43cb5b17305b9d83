import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import corpus  # noqa: E402


@pytest.fixture(scope="session")
def full_corpus():
    return corpus(200)


@pytest.fixture(scope="session")
def small_corpus():
    return corpus(60)
