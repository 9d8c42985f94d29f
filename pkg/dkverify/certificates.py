"""Finite certificates: the constants B and C, the small-case table, the two
range certificates and the record-gap arithmetic."""
# System modules
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

# Custom modules
from .densities import ratio_bounds, symmetric_rows
from .errors import DomainError, ResourceError
from .estimates import (
    B_INTERVAL,
    B_MINUS,
    B_TABULATED,
    C_MINUS,
    C_PUBLISHED,
    a_lower_sharp,
    a_upper,
)
from .numerics import (
    Interval,
    Power,
    log_enclosure,
    loglog_enclosure,
    parse_decimal,
    resolve_precision,
)
from .primes import PrimeTable, decimal_digits, primorial, restricted_sum
from .report import CertificateReport, ReportBuilder

logger = logging.getLogger(__name__)

C_CUTOFF = 1999993
NTH_PRIME_FROM = 688383
_DYADIC_BITS = 160

AXIOM_NOTE = (
    "uses published explicit prime estimates as axioms; their right-hand "
    "sides are evaluated with outward rounding, the estimates are not re-proved"
)


@dataclass(frozen=True)
class ConstantEnclosure:
    name: str
    interval: Interval
    method: str


@dataclass(frozen=True)
class RecordInput:
    """A record prime rebuilt from its defining formula."""

    name: str
    value: int
    gap: int
    claimed_digits: int


@dataclass(frozen=True)
class Table1Row:
    """Descent at a -> b and the later ascent at b -> c, with the displayed
    outward-rounded literals."""

    r: int
    a: int
    b: int
    c: int
    descent: str
    ascent: str


TABLE1 = (
    Table1Row(3, 13, 17, 19, "3.506", "3.048"),
    Table1Row(4, 23, 29, 31, "4.759", "4.371"),
    Table1Row(5, 31, 37, 41, "6.748", "6.263"),
    Table1Row(6, 73, 79, 83, "6.437", "6.282"),
    Table1Row(7, 89, 97, 101, "8.085", "7.911"),
    Table1Row(8, 113, 127, 131, "9.303", "9.145"),
    Table1Row(9, 113, 127, 131, "11.677", "11.452"),
    Table1Row(10, 113, 127, 131, "14.414", "14.101"),
    Table1Row(11, 293, 307, 311, "12.085", "12.011"),
    Table1Row(12, 293, 307, 311, "14.050", "13.959"),
    Table1Row(13, 523, 541, 547, "13.651", "13.607"),
    Table1Row(14, 523, 541, 547, "15.415", "15.364"),
    Table1Row(15, 523, 541, 547, "17.279", "17.218"),
    Table1Row(16, 887, 907, 911, "16.752", "16.721"),
    Table1Row(17, 887, 907, 911, "18.438", "18.402"),
    Table1Row(18, 887, 907, 911, "20.191", "20.151"),
    Table1Row(19, 1129, 1151, 1153, "20.742", "20.711"),
)


@dataclass(frozen=True)
class RangeSpec:
    """One bound chain covering r_lo..r_hi at the gaps p -> b -> c."""

    name: str
    r_lo: int
    r_hi: int
    p: int
    b: int
    c: int
    below_literal: str
    at_literal: str
    weight_literal: str
    descent_bound: str
    ascent_bound: str


RANGE_A = RangeSpec(
    "A", 20, 30, 15683, 15727, 15731,
    "3.303755162423773", "3.303818929800384", "2.612642166507777",
    "43.409", "6.053",
)
RANGE_B = RangeSpec(
    "B", 31, 47, 31397, 31469, 31477,
    "3.372584257226677", "3.372616108417913", "2.721441010945543",
    "72.181", "9.191",
)
RANGES = (RANGE_A, RANGE_B)

LARGE_GAP_LENGTH = 1113106
LARGE_GAP_DIGITS = 18662
TWIN_DIGITS = 71298


def _require(table: PrimeTable, limit: int, what: str):
    if table.limit < limit:
        raise ResourceError(f"{what} needs a sieve through {limit}, table stops at {table.limit}")


def _dyadic_sum(primes: List[int], bits: int) -> Tuple[int, int]:
    scale = 1 << bits
    lo = hi = 0
    for p in primes:
        q, rem = divmod(scale, p * (p - 1))
        lo += q
        hi += q + (rem > 0)
    return lo, hi


def _exact_sum(primes: List[int]) -> Fraction:
    """Binary splitting of sum 1/(p(p-1)) as one exact fraction."""
    if not primes:
        return Fraction(0)
    if len(primes) == 1:
        p = primes[0]
        return Fraction(1, p * (p - 1))
    middle = len(primes) // 2
    return _exact_sum(primes[:middle]) + _exact_sum(primes[middle:])


def enclose_C(table: PrimeTable, N: int = C_CUTOFF, exact: bool = False) -> ConstantEnclosure:
    """C = sum_p 1/(p(p-1)) lies in [S_N, S_N + 1/N], S_N the sum over p <= N.

    Args:
        table: prime table through N.
        N: cutoff; the tail over n > N telescopes to 1/N.
        exact: sum exactly instead of with 160-bit directed rounding (only
            sensible for small N).
    """
    if N < 2:
        raise DomainError(f"C enclosure needs N >= 2, got {N}")
    _require(table, N, "the C enclosure")
    primes = table.primes[: table.pi(N)].tolist()
    if exact:
        partial = _exact_sum(primes)
        interval = Interval(partial, partial + Fraction(1, N))
        method = f"exact rational sum over p <= {N} plus telescoped tail 1/{N}"
    else:
        lo, hi = _dyadic_sum(primes, _DYADIC_BITS)
        scale = 1 << _DYADIC_BITS
        interval = Interval(Fraction(lo, scale), Fraction(hi, scale) + Fraction(1, N))
        method = (
            f"{_DYADIC_BITS}-bit directed dyadic sum over p <= {N} "
            f"plus telescoped tail 1/{N}"
        )
    logger.info("Constants :: C in %s (%d primes)", interval, len(primes))
    return ConstantEnclosure(name="C", interval=interval, method=method)


def verify_constants(table: PrimeTable, exact: bool = False) -> List[CertificateReport]:
    """Audits the B literals and recomputes the C enclosure."""
    b = ReportBuilder("constants.B", "constants, B interval")
    b.less(
        "literal",
        "B_lo < tabulated B < B_hi",
        B_INTERVAL.lo,
        B_TABULATED,
        B_INTERVAL.hi,
    )
    b.equal("minus", "B_- is the lower B literal", B_MINUS, B_INTERVAL.lo)
    b.note("B is an axiom literal taken from the published tabulation, not recomputed")

    enclosure = enclose_C(table, exact=exact)
    c = ReportBuilder("constants.C", "constants, C interval")
    c.greater(
        "lower",
        f"sum_(p<={C_CUTOFF}) 1/(p(p-1)) > {C_MINUS}",
        enclosure.interval.lo,
        C_PUBLISHED.lo,
    )
    c.less(
        "upper",
        f"sum_(p<={C_CUTOFF}) 1/(p(p-1)) + 1/{C_CUTOFF} < {C_PUBLISHED.hi}",
        enclosure.interval.hi,
        C_PUBLISHED.hi,
    )
    c.equal("minus", "C_- is the lower C literal", C_MINUS, C_PUBLISHED.lo)
    c.note(enclosure.method)
    return [b.build(), c.build()]


def verify_table1(table: PrimeTable) -> List[CertificateReport]:
    """Exact descent and ascent certificates for r = 3..19."""
    _require(table, 1153, "the small-case table")
    rCap = max(row.r for row in TABLE1)
    indices = set()
    for row in TABLE1:
        indices.add(table.index_of(row.a) - 1)
        indices.add(table.index_of(row.b) - 1)
    rows = symmetric_rows(table, rCap, indices)

    reports = []
    for row in TABLE1:
        r = row.r
        ia, ib = table.index_of(row.a), table.index_of(row.b)
        below = rows[ia - 1].row
        at = rows[ib - 1].row
        descent = below[r - 1] / below[r]
        ascent = at[r - 1] / at[r]
        g, gNext = row.b - row.a, row.c - row.b
        descentLower, _ = ratio_bounds(r, ia - 1, table)
        _, ascentUpper = ratio_bounds(r, ib - 1, table)

        builder = ReportBuilder(f"table1.r{r}", "small cases r = 3..19")
        builder.less(
            "descent",
            f"{r}/A({row.a}^-) < R_{r}({row.a}^-) < {row.descent} < {g + 1}",
            descentLower,
            descent,
            parse_decimal(row.descent),
            g + 1,
            note=f"gap {row.a} -> {row.b}, g = {g}",
        )
        builder.greater(
            "ascent",
            f"{r}/(A({row.b}^-) - W_{r - 1}) > R_{r}({row.b}^-) > {row.ascent} > {gNext + 1}",
            ascentUpper,
            ascent,
            parse_decimal(row.ascent),
            gNext + 1,
            note=f"gap {row.b} -> {row.c}, g = {gNext}",
        )
        builder.fact(
            "order",
            f"{row.a} -> {row.b} -> {row.c} are consecutive primes, descent first",
            table.prime(ia + 1) == row.b and table.prime(ib + 1) == row.c and row.a < row.b,
        )
        builder.note("the opposite side of each ratio sandwich is asserted, not reported")
        reports.append(builder.build())
    return reports


def verify_range(spec: RangeSpec, table: PrimeTable) -> CertificateReport:
    """Reproduces the displayed prime sums and verifies both bound chains,
    with the r-monotonicity of each bound checked at every r in the range."""
    _require(table, spec.c, f"range {spec.name}")
    below = restricted_sum(table, spec.p, strict=True)
    at = restricted_sum(table, spec.p)
    weight = table.weightPrefix(spec.r_hi - 1)
    belowLit = parse_decimal(spec.below_literal)
    atLit = parse_decimal(spec.at_literal)
    weightLit = parse_decimal(spec.weight_literal)
    g, gNext = spec.b - spec.p, spec.c - spec.b
    ib = table.index_of(spec.b)

    builder = ReportBuilder(f"ranges.{spec.name}", "range certificates")
    builder.fact(
        "gaps",
        f"{spec.p} -> {spec.b} -> {spec.c} are consecutive primes",
        table.prime(ib - 1) == spec.p and table.prime(ib + 1) == spec.c,
    )
    builder.greater("sum_below", f"A({spec.p}^-) > {spec.below_literal}", below, belowLit)
    builder.less("sum_at", f"A({spec.p}) < {spec.at_literal}", at, atLit)
    builder.less(
        "weight", f"W_{spec.r_hi - 1} < {spec.weight_literal}", weight, weightLit
    )
    builder.less(
        "descent",
        f"{spec.r_hi}/({spec.below_literal} - {spec.weight_literal}) "
        f"< {spec.descent_bound} < {g + 1}",
        spec.r_hi / (belowLit - weightLit),
        parse_decimal(spec.descent_bound),
        g + 1,
    )
    builder.greater(
        "ascent",
        f"{spec.r_lo}/{spec.at_literal} > {spec.ascent_bound} > {gNext + 1}",
        spec.r_lo / atLit,
        parse_decimal(spec.ascent_bound),
        gNext + 1,
    )

    rs = range(spec.r_lo, spec.r_hi + 1)
    upper = [r / (below - table.weightPrefix(r - 1)) for r in rs]
    lower = [r / at for r in rs]
    builder.fact(
        "descent_monotone",
        f"r/(A({spec.p}^-) - W_(r-1)) increases over r = {spec.r_lo}..{spec.r_hi}",
        all(u < v for u, v in zip(upper, upper[1:])),
    )
    builder.fact(
        "ascent_monotone",
        f"r/A({spec.p}) increases over r = {spec.r_lo}..{spec.r_hi}",
        all(u < v for u, v in zip(lower, lower[1:])),
    )
    return builder.build()


def nth_prime_upper_bound(n: int, precision=None) -> Interval:
    """Enclosure of n(log n + loglog n - 1 + (loglog n - 2)/log n) >= p_n."""
    precision = resolve_precision(precision)
    if n <= NTH_PRIME_FROM:
        raise DomainError(f"the p_n bound is licensed for n > {NTH_PRIME_FROM}, got {n}")
    inner = precision / (8 * n)
    logN = log_enclosure(n, inner)
    loglogN = loglog_enclosure(n, inner)
    return n * (logN + loglogN - 1 + (loglogN - 2) / logN)


def record_inputs(table: PrimeTable) -> Tuple[RecordInput, RecordInput]:
    """Rebuilds s_L = 587*43103#/2310 - 455704 and
    s_T = 504983334^8192 - 504983334^4096 - 1."""
    _require(table, 43103, "the large-gap record")
    primorialValue = primorial(table, 43103)
    largeGap = RecordInput(
        name="LARGE_GAP",
        value=587 * (primorialValue // 2310) - 455704,
        gap=LARGE_GAP_LENGTH,
        claimed_digits=LARGE_GAP_DIGITS,
    )
    base = 504983334
    square = base**4096
    twin = RecordInput(
        name="TWIN",
        value=square * square - square - 1,
        gap=2,
        claimed_digits=TWIN_DIGITS,
    )
    return largeGap, twin


def verify_records(table: PrimeTable, precision=None) -> CertificateReport:
    """Record-gap arithmetic covering 40 <= r <= 8,600,000."""
    precision = resolve_precision(precision)
    tight = precision / 1000
    largeGap, twin = record_inputs(table)
    digitsL = decimal_digits(largeGap.value)
    digitsT = decimal_digits(twin.value)

    builder = ReportBuilder("records", "record-gap certificate")
    builder.equal("sL.digits", "s_L has 18662 decimal digits", digitsL, largeGap.claimed_digits)
    builder.equal("sT.digits", "s_T has 71298 decimal digits", digitsT, twin.claimed_digits)

    sTBound = a_upper(
        Power(10, TWIN_DIGITS), tight, epsilon_at=Power(10, TWIN_DIGITS - 1)
    )
    builder.less(
        "sT.upper",
        "A(s_T) <= loglog(10^71298) + B + eps(10^71297) + C < 13.04331036",
        sTBound,
        parse_decimal("13.04331036"),
    )
    builder.greater(
        "ascent",
        "40/13.04331036 > 3.066 > 3",
        40 / parse_decimal("13.04331036"),
        parse_decimal("3.066"),
        3,
    )

    builder.less(
        "U",
        "p_8599999 <= U < 152,960,196",
        nth_prime_upper_bound(8599999, tight),
        152960196,
    )
    reach = nth_prime_upper_bound(8600000, tight)
    builder.less("p8600000", "p_8600000 < 152,960,215", reach, 152960215)
    builder.fact(
        "sT.reach",
        "152,960,215 < s_T, so at least 8,600,000 primes lie below s_T",
        152960215 < twin.value,
    )

    builder.less(
        "W.upper",
        "W_(r-1) <= A(152,960,196) < 3.9713",
        a_upper(152960196, tight),
        parse_decimal("3.9713"),
    )
    builder.greater(
        "sL.lower",
        "A(s_L^-) >= A(10^18661) > 11.70287735",
        a_lower_sharp(Power(10, LARGE_GAP_DIGITS - 1), tight),
        parse_decimal("11.70287735"),
    )
    builder.less(
        "descent",
        "8,600,000/(11.70287735 - 3.9713) < 1,112,322 < 1,113,107",
        8600000 / (parse_decimal("11.70287735") - parse_decimal("3.9713")),
        1112322,
        largeGap.gap + 1,
    )
    digitsAfter = decimal_digits(largeGap.value + largeGap.gap)
    builder.greater(
        "ordering",
        "digits(s_T) > digits(s_L + g_L): the twin ascent lies after the large descent",
        digitsT,
        digitsAfter,
    )
    builder.note(AXIOM_NOTE)
    builder.note("primality of s_L, s_L + g_L, s_T and s_T + 2 is taken from the published records")
    builder.note("the C interval here is the published one, as in the displayed chain")
    return builder.build()
