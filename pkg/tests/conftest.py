import pytest

from flagged_groth import polyring


@pytest.fixture(autouse=True, scope="session")
def _check_division():
    # every divided difference is re-multiplied and compared in the tests
    prev = polyring.CHECK_DIVISION
    polyring.CHECK_DIVISION = True
    yield
    polyring.CHECK_DIVISION = prev
