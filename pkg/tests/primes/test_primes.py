import pickle
import unittest
from fractions import Fraction

import pytest

from dkverify.errors import ArgumentError, DomainError, ResourceError, TableIndexError
from dkverify.primes import (
    cached_sieve,
    decimal_digits,
    gap_at,
    is_prime,
    iter_segments,
    load_table,
    primorial,
    restricted_sum,
    segment_primes,
    sieve,
    store_table,
    weight_prefix,
    weight_vector,
)


def trial(lo, hi):
    return [n for n in range(max(lo, 2), hi) if all(n % d for d in range(2, int(n**0.5) + 1))]


class TestSieve(unittest.TestCase):
    def setUp(self):
        self.table = sieve(100)

    def test_indexing(self):
        assert len(self.table) == 25
        assert self.table.prime(1) == 2
        assert self.table.prime(25) == 97
        with pytest.raises(TableIndexError):
            self.table.prime(0)
        with pytest.raises(TableIndexError):
            self.table.prime(26)

    def test_pi(self):
        assert self.table.pi(100) == 25
        assert self.table.pi(2) == 1
        assert self.table.pi(1) == 0
        with pytest.raises(ResourceError):
            self.table.pi(101)

    def test_index_of(self):
        assert self.table.index_of(13) == 6
        with pytest.raises(ArgumentError):
            self.table.index_of(15)
        with pytest.raises(ResourceError):
            self.table.index_of(101)

    def test_limits(self):
        with pytest.raises(DomainError):
            sieve(1)
        with pytest.raises(ResourceError):
            sieve(1000, cap=100)

    def test_segments_are_stitched(self):
        lo, hi = 10**6, 10**6 + 2000
        stitched = [int(p) for chunk in iter_segments(lo, hi, span=16) for p in chunk]
        assert stitched == trial(lo, hi)
        assert segment_primes(0, 30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert segment_primes(20, 20).tolist() == []

    def test_spot_check(self):
        assert sieve(20000).spotCheck(samples=16)

    def test_pickles(self):
        clone = pickle.loads(pickle.dumps(self.table))
        assert clone.prime(25) == 97
        assert clone.weightPrefix(2) == Fraction(3, 2)


class TestWeights(unittest.TestCase):
    def setUp(self):
        self.table = sieve(100)

    def test_gap(self):
        assert gap_at(self.table, 4) == 4
        assert gap_at(self.table, 1) == 1

    def test_prefix(self):
        assert self.table.weightPrefix(0) == 0
        assert self.table.weightPrefix(3) == Fraction(7, 4)
        vector = weight_vector(self.table, 3)
        assert vector.weights == (1, Fraction(1, 2), Fraction(1, 4))
        assert vector.prefix[-1] == Fraction(7, 4)
        assert weight_prefix(self.table, 3) == Fraction(7, 4)

    def test_restricted_sum(self):
        assert restricted_sum(self.table, 5) == Fraction(7, 4)
        assert restricted_sum(self.table, 5, strict=True) == Fraction(3, 2)
        with pytest.raises(ResourceError):
            restricted_sum(self.table, 1000)

    def test_primorial(self):
        assert primorial(self.table, 13) == 30030
        assert primorial(self.table, 2) == 2
        with pytest.raises(ArgumentError):
            primorial(self.table, 12)


class TestPrimality(unittest.TestCase):
    def test_known_values(self):
        assert is_prime(2**61 - 1)
        assert not is_prime(561)
        assert not is_prime(3215031751)
        assert not is_prime(1)
        assert is_prime(41)

    def test_beyond_deterministic_range(self):
        with pytest.raises(ResourceError):
            is_prime(2**89 - 1)

    def test_digits(self):
        assert decimal_digits(1) == 1
        assert decimal_digits(9) == 1
        assert decimal_digits(10) == 2
        assert decimal_digits(10**100) == 101
        assert decimal_digits(10**100 - 1) == 100
        with pytest.raises(DomainError):
            decimal_digits(0)


def test_cache_round_trip(tmp_path):
    table = sieve(10000)
    path = tmp_path / "primes.bin"
    store_table(table, path)
    loaded = load_table(path)
    assert loaded is not None
    assert loaded.limit == 10000
    assert loaded.primes.tolist() == table.primes.tolist()


def test_cache_rejects_tampering(tmp_path):
    path = tmp_path / "primes.bin"
    store_table(sieve(1000), path)
    raw = bytearray(path.read_bytes())
    raw[-1] ^= 1
    path.write_bytes(bytes(raw))
    assert load_table(path) is None
    assert load_table(tmp_path / "missing.bin") is None


def test_cached_sieve_writes_once(tmp_path):
    first = cached_sieve(5000, str(tmp_path))
    assert (tmp_path / "primes-5000.bin").exists()
    second = cached_sieve(5000, str(tmp_path))
    assert second.primes.tolist() == first.primes.tolist()


@pytest.mark.usefixtures("table")
class TestDisplayedValues(unittest.TestCase):
    def test_small_sieve(self):
        assert sieve(20).primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19]
        assert sieve(10000).primes.tolist() == trial(2, 10001)

    def test_gaps(self):
        assert gap_at(self.table, self.table.index_of(15683)) == 44
        assert gap_at(self.table, self.table.index_of(1129)) == 22
        assert gap_at(self.table, self.table.index_of(31469)) == 8

    def test_prefix_values(self):
        assert self.table.weightPrefix(4) == Fraction(23, 12)
        assert self.table.weightPrefix(29) < Fraction(2612642166507777, 10**15)
        assert restricted_sum(self.table, 2) == 1
        assert restricted_sum(self.table, 15683, strict=True) > Fraction(3303755162423773, 10**15)
        assert restricted_sum(self.table, 31397) < Fraction(3372616108417913, 10**15)

    def test_prefix_matches_pi(self):
        for y in (2, 3, 100, 1000, 43103):
            assert restricted_sum(self.table, y) == self.table.weightPrefix(self.table.pi(y))

    def test_primorial_divisibility(self):
        value = primorial(self.table, 101)
        assert all(value % p == 0 for p in self.table.primes[:26].tolist())
        assert all(value % p for p in self.table.primes[26:200].tolist())

    def test_digits_of_powers(self):
        for k in range(21):
            assert decimal_digits(10**k) == k + 1


@pytest.mark.slow
def test_pi_two_million(big_table):
    assert big_table.pi(1999993) == 148933
    assert big_table.prime(148933) == 1999993
