import pytest

from dkverify.primes import sieve


@pytest.fixture(scope="session")
def small_table():
    """Primes up to 50021, enough for every suite but constants."""
    return sieve(50021)


@pytest.fixture(scope="class")
def table(request, small_table):
    request.cls.table = small_table


@pytest.fixture(scope="session")
def big_table():
    return sieve(1999993)
