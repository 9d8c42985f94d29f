import math
import unittest
from fractions import Fraction

import mpmath
import pytest

from dkverify.errors import DomainError
from dkverify.estimates import (
    B_INTERVAL,
    B_TABULATED,
    C_PUBLISHED,
    a_lower_sharp,
    a_lower_weak,
    a_upper,
    a_upper_weak,
    pi_lower,
    pi_upper,
    short_interval_upper,
    theta_lower,
    theta_upper,
)
from dkverify.numerics import Power
from dkverify.primes import restricted_sum, sieve, weight_prefix

mpmath.mp.dps = 60

PRECISION = Fraction(1, 10**12)


def mp(value: Fraction):
    return mpmath.mpf(value.numerator) / value.denominator


def eps(y):
    L = mpmath.log(y)
    return 1 / (10 * L**2) + mpmath.mpf(4) / (15 * L**3)


class TestConstants(unittest.TestCase):
    def test_tabulated_b_inside_literal(self):
        assert B_INTERVAL.contains(B_TABULATED)
        assert C_PUBLISHED.lo < C_PUBLISHED.hi < 1


@pytest.mark.usefixtures("table")
class TestRestrictedSumBounds(unittest.TestCase):
    def test_upper_matches_mpmath(self):
        y = 43103
        value = a_upper(y, PRECISION)
        core = mpmath.log(mpmath.log(y)) + mp(B_TABULATED) + eps(y)
        assert mp(value.lo) <= core + mp(C_PUBLISHED.lo)
        assert mp(value.hi) >= core + mp(C_PUBLISHED.hi)

    def test_sandwich(self):
        for y in (10373, 31477, 43103):
            A = restricted_sum(self.table, y)
            assert a_lower_weak(y, PRECISION).hi < A < a_upper(y, PRECISION).lo

    def test_weak_upper_is_weaker(self):
        assert a_upper_weak(43103, PRECISION).lo > a_upper(43103, PRECISION).hi

    def test_licensed_ranges(self):
        with pytest.raises(DomainError):
            a_upper(10372)
        with pytest.raises(DomainError):
            a_upper_weak(10000)
        with pytest.raises(DomainError):
            a_lower_sharp(1999992)
        with pytest.raises(DomainError):
            a_upper(43103, epsilon_at=50000)

    def test_epsilon_at_smaller_argument_loosens(self):
        plain = a_upper(Power(10, 100), PRECISION)
        looser = a_upper(Power(10, 100), PRECISION, epsilon_at=Power(10, 50))
        assert looser.lo > plain.hi


class TestCountingEstimates(unittest.TestCase):
    def test_theta(self):
        assert theta_upper(36260) == 36261
        with pytest.raises(DomainError):
            theta_upper(0)
        value = theta_lower(1000, PRECISION)
        assert mp(value.lo) <= 1000 * (1 - mp(Fraction(12323, 10000)) / mpmath.log(1000)) <= mp(value.hi)
        with pytest.raises(DomainError):
            theta_lower(2)

    def test_pi(self):
        assert pi_lower(10000, PRECISION).hi < 1229
        assert pi_upper(100000, PRECISION).lo > 9592
        with pytest.raises(DomainError):
            pi_lower(5393)
        with pytest.raises(DomainError):
            pi_upper(60184)

    def test_short_interval(self):
        value = short_interval_upper(10000, PRECISION)
        assert 10007 < value.lo
        assert value.hi < 10060
        with pytest.raises(DomainError):
            short_interval_upper(3274)


def theta_values(table, points):
    """theta(x) at each point, summed at 60 digits."""
    values, total, j = {}, mpmath.mpf(0), 1
    for x in sorted(points):
        while j <= len(table) and table.prime(j) <= x:
            total += mpmath.log(table.prime(j))
            j += 1
        values[x] = total
    return values


@pytest.mark.usefixtures("table")
class TestAgainstSieve(unittest.TestCase):
    def test_theta_bounds(self):
        points = list(range(3, 50000, 1499)) + [41, 1129, 15683]
        for x, theta in theta_values(self.table, points).items():
            assert mp(theta_lower(x, PRECISION).hi) < theta < mp(theta_upper(x))

    def test_pi_lower(self):
        for x in range(5394, 50000, 1777):
            assert pi_lower(x, PRECISION).hi <= self.table.pi(x)

    def test_pi_upper(self):
        table = sieve(200000)
        for x in range(60185, 200000, 4999):
            assert pi_upper(x, PRECISION).lo >= table.pi(x)

    def test_short_interval_holds_a_prime(self):
        for x in range(3275, 49000, 1231):
            top = math.floor(short_interval_upper(x, PRECISION).lo)
            assert self.table.pi(top) > self.table.pi(x)

    def test_restricted_sum_sandwich(self):
        for y in list(range(2, 10373, 997)) + list(range(10373, 50000, 2503)):
            A = weight_prefix(self.table, self.table.pi(y))
            assert a_lower_weak(y, PRECISION).hi < A
            if y > 10372:
                assert A < a_upper(y, PRECISION).lo


def test_lower_weak_below_e():
    for y in (Fraction(3, 2), 2, Fraction(27, 10)):
        value = a_lower_weak(y, PRECISION)
        reference = mpmath.log(mpmath.log(mp(Fraction(y)))) + mp(B_TABULATED) - eps(mp(Fraction(y)))
        assert mp(value.lo) <= reference <= mp(value.hi)
    assert a_lower_weak(2, PRECISION).hi < 1
