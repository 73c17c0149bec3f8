import pytest

from permpos.enumeration import count_tables


@pytest.fixture(scope="session")
def tables8():
    return count_tables(8)


@pytest.fixture(scope="session")
def tables11():
    return count_tables(11, workers=2)
