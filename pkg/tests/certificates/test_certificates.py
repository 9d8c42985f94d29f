import unittest
from dataclasses import replace
from fractions import Fraction
from unittest.mock import patch

import pytest

from dkverify import certificates
from dkverify.certificates import (
    RANGE_A,
    RANGE_B,
    RANGES,
    TABLE1,
    enclose_C,
    nth_prime_upper_bound,
    record_inputs,
    verify_constants,
    verify_range,
    verify_records,
    verify_table1,
)
from dkverify.errors import ConsistencyError, DomainError, ResourceError
from dkverify.numerics import Interval
from dkverify.primes import sieve
from dkverify.report import FAIL, PASS


class TestConstantC(unittest.TestCase):
    def test_toy_cutoff(self):
        enclosure = enclose_C(sieve(10), N=2, exact=True)
        assert enclosure.interval == Interval(Fraction(1, 2), 1)

    def test_directed_sum_contains_exact_sum(self):
        table = sieve(1000)
        exact = enclose_C(table, N=1000, exact=True).interval
        dyadic = enclose_C(table, N=1000).interval
        assert dyadic.lo <= exact.lo and exact.hi <= dyadic.hi
        assert dyadic.width - exact.width < Fraction(1, 2**140)

    def test_arguments(self):
        with pytest.raises(DomainError):
            enclose_C(sieve(10), N=1)
        with pytest.raises(ResourceError):
            enclose_C(sieve(10), N=100)


@pytest.mark.slow
def test_constants_suite(big_table):
    reports = verify_constants(big_table)
    assert [r.claim_id for r in reports] == ["constants.B", "constants.C"]
    assert all(r.passed for r in reports)


@pytest.mark.usefixtures("table")
class TestSmallCases(unittest.TestCase):
    def test_every_row_passes(self):
        reports = verify_table1(self.table)
        assert len(reports) == len(TABLE1) == 17
        for report in reports:
            assert report.passed, report.firstFailure()
            assert len(report.checked_inequalities) == 3

    def test_first_row_values(self):
        report = verify_table1(self.table)[0]
        assert report.claim_id == "table1.r3"
        descent = report.checked_inequalities[0]
        assert descent.claim_id == "table1.r3.descent"
        assert descent.kind == "exact"
        assert descent.verdict == PASS

    def test_chains_start_at_the_ratio_bounds(self):
        for row, report in zip(TABLE1, verify_table1(self.table)):
            descent, ascent, _ = report.checked_inequalities
            assert len(descent.terms) == len(ascent.terms) == 4
            assert descent.description.startswith(f"{row.r}/A({row.a}^-) < R_{row.r}")
            assert ascent.description.startswith(f"{row.r}/(A({row.b}^-) - W_{row.r - 1}) >")

    def test_escaping_ratio_is_raised(self):
        broken = ConsistencyError("R_3 escapes its symmetric-polynomial bounds")
        with patch.object(certificates, "ratio_bounds", side_effect=broken):
            with pytest.raises(ConsistencyError):
                verify_table1(self.table)

    def test_needs_the_table(self):
        with pytest.raises(ResourceError):
            verify_table1(sieve(1000))


@pytest.mark.usefixtures("table")
class TestRanges(unittest.TestCase):
    def test_both_ranges_pass(self):
        for spec in RANGES:
            report = verify_range(spec, self.table)
            assert report.passed, report.firstFailure()
            names = [c.claim_id.rsplit(".", 1)[1] for c in report.checked_inequalities]
            assert "descent_monotone" in names and "ascent_monotone" in names


@pytest.mark.usefixtures("table")
class TestRecords(unittest.TestCase):
    def test_nth_prime_bound(self):
        assert nth_prime_upper_bound(8599999).hi < 152960196
        assert nth_prime_upper_bound(8600000).hi < 152960215
        with pytest.raises(DomainError):
            nth_prime_upper_bound(688383)

    def test_record_inputs(self):
        largeGap, twin = record_inputs(self.table)
        assert largeGap.gap == 1113106
        assert largeGap.value % 2 == 1
        assert twin.value == 504983334**8192 - 504983334**4096 - 1
        assert twin.gap == 2

    def test_records_pass(self):
        report = verify_records(self.table)
        assert report.passed, report.firstFailure()
        assert report.claim_id == "records"
        assert any("axioms" in note for note in report.notes)


@pytest.mark.usefixtures("table")
class TestRejectsWrongLiterals(unittest.TestCase):
    def test_descent_literal_above_gap(self):
        rows = (replace(TABLE1[0], descent="5.1"),) + TABLE1[1:]
        with patch.object(certificates, "TABLE1", rows):
            report = verify_table1(self.table)[0]
        assert report.verdict == FAIL
        assert report.firstFailure() == "table1.r3.descent"

    def test_ascent_literal_above_ratio(self):
        rows = (TABLE1[0], replace(TABLE1[1], ascent="5"))
        with patch.object(certificates, "TABLE1", rows):
            reports = verify_table1(self.table)
        assert reports[0].passed
        assert reports[1].firstFailure() == "table1.r4.ascent"

    def test_range_sum_literal(self):
        report = verify_range(replace(RANGE_A, below_literal="3.4"), self.table)
        assert report.verdict == FAIL
        assert report.firstFailure() == "ranges.A.sum_below"

    def test_range_descent_bound(self):
        report = verify_range(replace(RANGE_B, descent_bound="80"), self.table)
        assert report.verdict == FAIL
        assert report.firstFailure() == "ranges.B.descent"


def test_c_partial_sums_nest():
    table = sieve(5000)
    cutoffs = (10, 100, 1000, 2500, 5000)
    enclosures = [enclose_C(table, N=N, exact=True).interval for N in cutoffs]
    for coarse, fine in zip(enclosures, enclosures[1:]):
        assert coarse.lo < fine.lo and fine.hi <= coarse.hi
