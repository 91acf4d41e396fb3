import pytest

from nonissue.morphology import default_analyzer
from nonissue.patterns import default_catalog


@pytest.fixture(scope="session")
def analyzer():
    return default_analyzer()


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()
