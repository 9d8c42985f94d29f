import unittest
from fractions import Fraction

import pytest

from dkverify.errors import DomainError, ResourceError
from dkverify.oracle import census, oracle_d_k, oracle_equals_formula
from dkverify.settings import settings


@pytest.mark.usefixtures("table")
class TestCensus(unittest.TestCase):
    def test_small_censuses(self):
        assert census(0, self.table).counts == (1,)
        assert census(1, self.table).counts == (1, 1)
        assert census(2, self.table).counts == (2, 3, 1)
        assert census(3, self.table).counts[0] == 8
        assert census(3, self.table).density(0) == Fraction(4, 15)

    def test_strategies_agree(self):
        for i in range(7):
            assert census(i, self.table, "subsets") == census(i, self.table)

    def test_counts_cover_the_period(self):
        result = census(5, self.table)
        assert result.modulus == 2310
        assert sum(result.counts) == 2310
        assert result.density(9) == 0

    def test_arguments(self):
        with pytest.raises(DomainError):
            census(-1, self.table)
        with pytest.raises(ResourceError):
            census(settings.oracleMax + 1, self.table)
        with pytest.raises(ResourceError):
            census(7, self.table, "subsets")
        with pytest.raises(DomainError):
            census(2, self.table, "guess")


@pytest.mark.usefixtures("table")
class TestOracle(unittest.TestCase):
    def test_formula_matches(self):
        for i in range(8):
            verdict = oracle_equals_formula(i, self.table)
            assert verdict.passed
            assert verdict.checked == i + 1

    def test_d_k(self):
        for i in range(1, 8):
            for k in range(1, i + 1):
                assert oracle_d_k(k, i, self.table)
        with pytest.raises(DomainError):
            oracle_d_k(1, 0, self.table)
