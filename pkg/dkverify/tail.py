"""The uniform tail r >= 8,600,001: boundary constants, the D(M) identity,
the h(t) bounds, a pointwise check of the consequence chain, and the CRT
composite block reproduced at desk scale."""
# System modules
import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

# Third-party modules
import numpy as np

# Custom modules
from .certificates import AXIOM_NOTE, nth_prime_upper_bound
from .errors import ArgumentError, ConsistencyError, DomainError, ResourceError
from .estimates import B_INTERVAL, THETA_FACTOR, THETA_LOWER_COEFFICIENT
from .numerics import (
    Interval,
    epsilon_from_log,
    log_enclosure,
    log_interval,
    parse_decimal,
    resolve_precision,
)
from .primes import PrimeTable, is_prime, iter_segments, segment_primes
from .report import CertificateReport, ReportBuilder
from .settings import settings

logger = logging.getLogger(__name__)

R0 = 8600001
V0 = parse_decimal("15.96")
X0 = 533000
_TENTH = Fraction(1, 10)
_NINETY_NINE = Fraction(99, 100)
_DIRECT_COUNT_LIMIT = 10**7

DESK_NOTE = (
    "desk-scale substitution: the block, containment and pigeonhole logic run at "
    "small q, while the constants are checked at the true boundary values"
)


@dataclass(frozen=True)
class TailParameters:
    """r with enclosures v of log r and x of 0.99 r/log r."""

    r: int
    v: Interval
    x: Interval


class WitnessCase(enum.Enum):
    BELOW = "prime factor of q- - m"
    PREDECESSOR = "q-"
    TWO = "2"
    SUCCESSOR = "q"
    ABOVE = "prime factor of m - q-"


@dataclass(frozen=True)
class Witness:
    m: int
    case: WitnessCase
    prime: int


@dataclass(frozen=True)
class CrtBlock:
    """a + 2P + 1, ..., a + 2P + 2q- - 1, each divisible by a prime <= q."""

    q: int
    q_minus: int
    P: int
    residues: Dict[int, int]
    a: int
    block_start: int
    block_len: int
    witnesses: Tuple[Witness, ...]

    @property
    def block_end(self) -> int:
        return self.block_start + self.block_len - 1

    def element(self, m: int) -> int:
        return self.a + 2 * self.P + m


@dataclass(frozen=True)
class GapScan:
    """Smallest gap between consecutive primes of (lo, hi]."""

    lo: int
    hi: int
    min_gap: int
    prime_count: int
    gap_start: int


@dataclass(frozen=True)
class SurroundingGap:
    lower: int
    upper: int

    @property
    def length(self) -> int:
        return self.upper - self.lower


@dataclass(frozen=True)
class PrimeCount:
    lo: int
    hi: int
    count: int
    exhaustive: bool


def tail_parameters(r: int, precision=None) -> TailParameters:
    """Encloses v = log r and x = 0.99 r/v and re-derives v > 15.96,
    x > 533,000 and x/2 > 3275."""
    precision = resolve_precision(precision)
    if r < R0:
        raise DomainError(f"the tail starts at r = {R0}, got {r}")
    v = log_enclosure(r, precision)
    x = _NINETY_NINE * r / v
    if not (v.lo > V0 and x.lo > X0 and x.lo / 2 > 3275):
        raise ConsistencyError(f"tail parameters at r={r} fall below the boundary values")
    return TailParameters(r=r, v=v, x=x)


def verify_tail_constants(precision=None) -> CertificateReport:
    """Every displayed tail constant at x = 533,000 and v = 15.96, with the
    monotonicity that extends it to the whole range."""
    tight = resolve_precision(precision) / 1000
    builder = ReportBuilder("tail.constants", "uniform tail, boundary constants")

    logR = log_enclosure(R0, tight)
    builder.greater("v_lower", "log(8,600,001) > 15.96", logR, V0)
    x = _NINETY_NINE * R0 / logR
    builder.greater("x_lower", "0.99 * 8,600,001/log(8,600,001) > 533,000", x, X0)
    builder.greater(
        "x_lower_slope", "log r > 1 from r = 8,600,001 on, so (log r - 1)/log^2 r > 0",
        logR, 1,
    )
    builder.greater("x_half", "x/2 > 266,500 > 3275", x / 2, 266500, 3275)

    logX = log_enclosure(X0, tight)
    builder.less(
        "logx_error", "1/(2 log^2 x) < 0.002876 at x = 533,000",
        1 / (2 * logX**2), "0.002876",
    )
    builder.greater(
        "log_x_positive", "log 533,000 > 0, so 1/(2 log^2 x) and 1.2323/log x decrease in x",
        logX, 0,
    )
    logHalf = log_enclosure(266500, tight)
    builder.less(
        "logxhalf_error", "1/(2 log^2(x/2)) < 0.00321 at x/2 = 266,500",
        1 / (2 * logHalf**2), "0.00321",
    )
    builder.greater(
        "log_half_positive", "log 266,500 > 0, so 1/(2 log^2(x/2)) decreases in x",
        logHalf, 0,
    )
    builder.less(
        "theta_error", "1.2323/log x < 0.1 at x = 533,000",
        THETA_LOWER_COEFFICIENT / logX, _TENTH,
    )
    log8 = log_enclosure(8, tight)
    mFactor = (1 + 1 / (2 * logX**2)) * (1 + THETA_FACTOR) + log8 / X0
    builder.less(
        "m_factor", "(1 + 1/(2 log^2 x))(1 + 1/36260) + log 8/x < 1.003 at x = 533,000",
        mFactor, "1.003",
    )
    builder.greater(
        "m_factor_slope", "log x > log 8 > 0 at x = 533,000, so both terms decrease in x",
        logX, log8, 0,
    )
    builder.less(
        "eps_small", "eps(y) < 0.001 at log y = 18.9",
        epsilon_from_log(parse_decimal("18.9")), "0.001",
    )
    builder.greater(
        "eps_small_slope", "log y >= 18.9 > 0, where 1/(10L^2) + 4/(15L^3) decreases in L",
        "18.9", 0,
    )

    logV = log_enclosure(V0, tight)
    builder.greater(
        "elementary_one", "0.44v - 2 log v - 1.300 > 0.18 > 0 at v = 15.96",
        Fraction(44, 100) * V0 - 2 * logV - parse_decimal("1.300"), "0.18", 0,
    )
    builder.less(
        "elementary_one_slope", "2/15.96 < 0.13 < 0.44, so 0.44 - 2/v > 0 for v >= 15.96",
        2 / V0, "0.13", "0.44",
    )
    builder.greater(
        "elementary_two", "v/(0.99(v - 1.50)) > 1/0.99 > 1.010 at v = 15.96",
        V0 / (_NINETY_NINE * (V0 - parse_decimal("1.50"))), 1 / _NINETY_NINE, "1.010",
    )
    builder.greater(
        "elementary_two_slope", "v >= 15.96 > 1.50, so v/(v - 1.50) > 1",
        V0, "1.50",
    )
    builder.less(
        "ascent_log", "-log v + log 0.99 + 1.266 < -1.50 at v = 15.96",
        -logV + log_enclosure(_NINETY_NINE, tight) + parse_decimal("1.266"),
        parse_decimal("-1.50"),
    )
    builder.greater(
        "ascent_log_slope", "v >= 15.96 > 0, so -log v decreases in v",
        V0, 0,
    )
    builder.greater(
        "log_1_2v", "0.2v - log(1.2v) > 0.23 at v = 15.96",
        V0 / 5 - log_enclosure(Fraction(6, 5) * V0, tight), "0.23",
    )
    builder.less(
        "log_1_2v_slope", "1/15.96 < 0.2, so 0.2v - log(1.2v) increases",
        1 / V0, Fraction(1, 5),
    )
    builder.note("each bound is checked at its boundary and extended by its slope check")
    return builder.build()


def _dm_sides(M: Fraction, lam: Fraction) -> Tuple[Fraction, Fraction]:
    shift = lam + Fraction(11, 10)
    lhs = Fraction(8) / (M - 1) - Fraction(4) / (M - shift) - Fraction(4) / M
    rhs = 2 * ((9 - 10 * lam) * M - (10 * lam + 11)) / (5 * M * (M - 1) * (M - shift))
    return lhs, rhs


DM_SAMPLES_M = (21, 25, 30, 40, 100)
DM_SAMPLES_LAMBDA = (Fraction(7, 10), Fraction(69, 100), Fraction(7, 11))


def verify_DM_identity(precision=None) -> CertificateReport:
    """D(M) - 4/M = 2((9 - 10 lam)M - (10 lam + 11))/(5M(M-1)(M - lam - 1.1))
    with lam = log 2 kept symbolic, and the bounds drawn from it for M > 20."""
    tight = resolve_precision(precision) / 1000
    builder = ReportBuilder("tail.dm", "uniform tail, prime count in (4P, 8P]")
    for M in DM_SAMPLES_M:
        for j, lam in enumerate(DM_SAMPLES_LAMBDA):
            lhs, rhs = _dm_sides(Fraction(M), lam)
            builder.equal(
                f"sample.M{M}.l{j}", f"identity at M = {M}, lambda = {lam}", lhs, rhs
            )
    builder.note(
        "cleared of denominators the identity is polynomial of degree <= 4 in M and "
        "<= 2 in lambda, so the 5 x 3 grid decides it"
    )

    log2 = log_enclosure(2, tight)
    builder.greater("log2_slope", "9 - 10 log 2 > 2", 9 - 10 * log2, 2)
    builder.less("log2_offset", "10 log 2 + 11 < 18", 10 * log2 + 11, 18)
    builder.greater(
        "denominator", "log 2 + 1.1 > 0, so M(M-1)(M - log 2 - 1.1) < M^3",
        log2 + Fraction(11, 10), 0,
    )
    builder.greater(
        "cubic", "2(2M - 18)/5 > 8 at M = 20, increasing in M",
        Fraction(2 * (2 * 20 - 18), 5), 8,
    )
    builder.less(
        "exp", "3 log 20 < 20, so e^M/M^3 > 1 at M = 20",
        3 * log_enclosure(20, tight), 20,
    )
    builder.less("exp_slope", "3/20 < 1, so M - 3 log M increases for M > 20", Fraction(3, 20), 1)
    return builder.build()


def verify_h_monotone(precision=None) -> CertificateReport:
    """h(t) = 0.2t - log t + 1 - (log t - 2)/t is positive for t >= 15.96."""
    tight = resolve_precision(precision) / 1000
    builder = ReportBuilder("tail.h", "uniform tail, h(t)")
    t = V0
    logT = log_enclosure(t, tight)
    bound = parse_decimal("0.230")
    builder.less("log_bound", "-0.230 < log 15.96 - 3 < 0.230", -bound, logT - 3, bound)
    builder.greater(
        "h_prime", "0.2 - 1/15.96 - 0.230/15.96^2 > 0",
        Fraction(1, 5) - 1 / t - bound / t**2, 0,
    )
    h = t / 5 - logT + 1 - (logT - 2) / t
    builder.greater("h_value", "h(15.96) > 1.37", h, "1.37")
    builder.less(
        "log_1_2v", "log(1.2 * 15.96) < 0.2 * 15.96",
        log_enclosure(Fraction(6, 5) * t, tight), t / 5,
    )
    logR = log_enclosure(R0, tight)
    builder.less(
        "p_spot", "p_8600000 <= its explicit bound < 1.2 * 8,600,001 * log(8,600,001)",
        nth_prime_upper_bound(R0 - 1, tight), Fraction(6, 5) * R0 * logR,
    )
    builder.note(
        "log t - 3 is negative near t = 15.96; the displayed chain subtracts "
        "0.230/t^2 and is verified as written"
    )
    builder.note(AXIOM_NOTE)
    return builder.build()


def verify_two_primes_step(precision=None) -> CertificateReport:
    """The symbolic steps behind pi(2P) - pi(P) > P/(2 log P) > 2 for log P > 20."""
    tight = resolve_precision(precision) / 1000
    builder = ReportBuilder("tail.two_primes", "uniform tail, two primes in (P, 2P]")
    lam = log_enclosure(2, tight)
    L = 20
    builder.greater(
        "step", "2/(L + log 2 - 1) - 1/(L - 1.1) > 1/(2L) at L = 20",
        2 / (L + lam - 1) - 1 / (L - Fraction(11, 10)), Fraction(1, 2 * L),
    )
    builder.greater(
        "step_form", "L^2 - (0.3 + 3 log 2)L + 1.1(log 2 - 1) > 0 at L = 20",
        L**2 - (Fraction(3, 10) + 3 * lam) * L + Fraction(11, 10) * (lam - 1), 0,
        note="the difference times 2L(L + log 2 - 1)(L - 1.1)",
    )
    builder.greater(
        "step_slope", "2L - 0.3 - 3 log 2 > 0 at L = 20",
        2 * L - Fraction(3, 10) - 3 * lam, 0,
    )
    builder.greater(
        "growth", "L - log(2L) > log 2 at L = 20, so P/(2 log P) > 2",
        L - log_enclosure(2 * L, tight), lam,
    )
    builder.less("growth_slope", "1/L < 1, so L - log(2L) increases", Fraction(1, L), 1)
    builder.note(AXIOM_NOTE)
    return builder.build()


def verify_tail_chain(r: int, precision=None, label: Optional[str] = None) -> CertificateReport:
    """The tail consequence chain evaluated at one sample r >= 8,600,001."""
    tight = resolve_precision(precision) / 1000
    params = tail_parameters(r, tight)
    v, x = params.v, params.x
    logX = log_interval(x, tight)
    logHalf = log_interval(x / 2, tight)
    logV = log_interval(v, tight)
    log2 = log_enclosure(2, tight)

    builder = ReportBuilder(f"tail.chain.{label or r}", "uniform tail, consequence chain")
    builder.less(
        "theta_error", "1.2323/log x < 0.1, so log P > 0.9x",
        THETA_LOWER_COEFFICIENT / logX, _TENTH,
    )
    builder.greater("logP_size", "0.9x > 20 > 18.9", Fraction(9, 10) * x, 20, "18.9")
    builder.less(
        "log8P", "(1 + 1/(2 log^2 x))(1 + 1/36260) + log 8/x < 1.003, so log 8P < 1.003x",
        (1 + 1 / (2 * logX**2)) * (1 + THETA_FACTOR) + 3 * log2 / x, "1.003",
    )
    builder.less(
        "q_minus", "1/(2 log^2(x/2)) < 0.00321, so q- > x/1.00321",
        1 / (2 * logHalf**2), "0.00321",
    )
    builder.greater(
        "g_minus", "2/1.00321 > 1.993, so G- > 1.993x",
        2 / parse_decimal("1.00321"), "1.993",
    )
    builder.greater(
        "loglog_arg", "log(1.2 r log r) = v + log(1.2v) > 18.9",
        v + log_interval(Fraction(6, 5) * v, tight), "18.9",
    )
    builder.less(
        "log_1_2v", "log(1.2v) < 0.2v", log_interval(Fraction(6, 5) * v, tight), v / 5,
    )
    builder.greater(
        "a_minus_w_const", "log(0.9 * 0.99) - log 1.2 - 1.002 > -1.300",
        log_enclosure(Fraction(891, 1000), tight) - log_enclosure(Fraction(6, 5), tight)
        - parse_decimal("1.002"),
        parse_decimal("-1.300"),
    )
    builder.greater(
        "a_minus_w", "v - 2 log v - 1.300 > 0.56v, so A(P) - W_(r-1) > 0.56 log r",
        v - 2 * logV - parse_decimal("1.300"), Fraction(56, 100) * v,
    )
    builder.less(
        "descent", "1/(0.99 * 0.56) < 1.805 < 1.993, so R_r(i-1) < 1.805x < G- + 1",
        1 / (_NINETY_NINE * Fraction(56, 100)), "1.805", "1.993",
    )
    builder.less(
        "a_8p", "log 1.003 + B + 1.001 < 1.266, so A(8P) < log x + 1.266",
        log_enclosure(parse_decimal("1.003"), tight) + B_INTERVAL + parse_decimal("1.001"),
        "1.266",
    )
    builder.less(
        "ascent_log", "-log v + log 0.99 + 1.266 < -1.50, so A(8P) < v - 1.50",
        -logV + log_enclosure(_NINETY_NINE, tight) + parse_decimal("1.266"),
        parse_decimal("-1.50"),
    )
    builder.greater(
        "ascent", "v/(0.99(v - 1.50)) > 1.010, so R_r(j-1) > 1.010x",
        v / (_NINETY_NINE * (v - parse_decimal("1.50"))), "1.010",
    )
    builder.greater(
        "ascent_gap", "0.001x > 1, so G+ + 1 < 1.003x + 1 < 1.004x < 1.010x",
        x / 1000, 1,
    )
    builder.note(AXIOM_NOTE)
    builder.note(f"pointwise at r = {r}; the boundary suite covers the whole range")
    return builder.build()


def crt_solve(congruences: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    """Incremental CRT over pairwise coprime moduli: returns (a, modulus) with
    0 <= a < modulus and a = residue mod m for every (residue, m)."""
    a, modulus = 0, 1
    for residue, m in congruences:
        try:
            step = (residue - a) * pow(modulus, -1, m) % m
        except ValueError as e:
            raise ConsistencyError(f"modulus {m} is not coprime to {modulus}") from e
        a += modulus * step
        modulus *= m
    return a % modulus, modulus


def _smallest_factor(n: int) -> int:
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return d
    return n


def _witness(m: int, qMinus: int, q: int) -> Witness:
    if m <= qMinus - 2:
        return Witness(m, WitnessCase.BELOW, _smallest_factor(qMinus - m))
    if m == qMinus - 1:
        return Witness(m, WitnessCase.PREDECESSOR, qMinus)
    if m == qMinus:
        return Witness(m, WitnessCase.TWO, 2)
    if m == qMinus + 1:
        return Witness(m, WitnessCase.SUCCESSOR, q)
    return Witness(m, WitnessCase.ABOVE, _smallest_factor(m - qMinus))


def build_crt_block(q: int, table: PrimeTable, qCap: Optional[int] = None) -> CrtBlock:
    """Builds the block of 2q- - 1 consecutive composites inside (2P, 4P).

    Args:
        q: prime, at least 13.
        table: prime table through q.
        qCap: largest accepted q (defaults to the configured cap).
    """
    qCap = settings.crtQCap if qCap is None else qCap
    if q < 13:
        raise DomainError(f"the block construction needs q >= 13, got {q}")
    if q > qCap:
        raise ResourceError(f"q = {q} over the CRT cap {qCap}")
    if not is_prime(q):
        raise ArgumentError(f"{q} is not prime")
    i = table.index_of(q)
    qMinus = table.prime(i - 1)
    primes = table.primes[:i].tolist()

    residues = {}
    for p in primes:
        if p < qMinus:
            residues[p] = qMinus % p
        elif p == qMinus:
            residues[p] = (qMinus - 1) % p
        else:
            residues[p] = (qMinus + 1) % p
    a, P = crt_solve([((-residues[p]) % p, p) for p in primes])
    if P != math.prod(primes) or any((a + residues[p]) % p for p in primes):
        raise ConsistencyError(f"CRT solution for q={q} misses a congruence")

    blockLen = 2 * qMinus - 1
    witnesses = tuple(_witness(m, qMinus, q) for m in range(1, blockLen + 1))
    for w in witnesses:
        if w.prime > q or (a + 2 * P + w.m) % w.prime:
            raise ConsistencyError(f"witness {w.prime} does not divide a + 2P + {w.m}")
    block = CrtBlock(
        q=q,
        q_minus=qMinus,
        P=P,
        residues=residues,
        a=a,
        block_start=a + 2 * P + 1,
        block_len=blockLen,
        witnesses=witnesses,
    )
    if not 2 * P < block.block_start <= block.block_end < 4 * P:
        raise ConsistencyError(f"block for q={q} leaves (2P, 4P)")
    logger.info("CRT :: q=%d block of %d composites after 2P", q, blockLen)
    return block


def scan_gap_region(block: CrtBlock, scanCap: Optional[int] = None) -> GapScan:
    """Enumerates the primes of (4P, 8P] segment by segment, stitching the gap
    across segment borders, and returns the smallest gap."""
    scanCap = settings.scanCap if scanCap is None else scanCap
    lo, hi = 4 * block.P, 8 * block.P
    if hi > scanCap:
        raise ResourceError(f"scan up to 8P = {hi} over the scan cap {scanCap}")

    count = 0
    previous = None
    minGap, gapStart = None, None
    for chunk in iter_segments(lo + 1, hi + 1):
        if chunk.size == 0:
            continue
        count += int(chunk.size)
        if previous is not None:
            stitch = int(chunk[0]) - previous
            if minGap is None or stitch < minGap:
                minGap, gapStart = stitch, previous
        if chunk.size > 1:
            gaps = np.diff(chunk)
            j = int(np.argmin(gaps))
            if minGap is None or int(gaps[j]) < minGap:
                minGap, gapStart = int(gaps[j]), int(chunk[j])
        previous = int(chunk[-1])

    if count < 2:
        raise ConsistencyError(f"fewer than two primes in ({lo}, {hi}]")
    if not minGap * (count - 1) < lo:
        raise ConsistencyError("smallest gap exceeds the mean gap bound 4P/(N-1)")
    logger.info("CRT :: (4P, 8P] holds %d primes, smallest gap %d", count, minGap)
    return GapScan(lo=lo, hi=hi, min_gap=minGap, prime_count=count, gap_start=gapStart)


def surrounding_gap(block: CrtBlock) -> Optional[SurroundingGap]:
    """The consecutive primes around the block, or None when they lie beyond
    deterministic primality testing."""
    try:
        lower = block.block_start - 1
        while not is_prime(lower):
            lower -= 1
        upper = block.block_end + 1
        while not is_prime(upper):
            upper += 1
    except ResourceError:
        return None
    return SurroundingGap(lower=lower, upper=upper)


def two_primes_in_P_2P(block: CrtBlock) -> Optional[PrimeCount]:
    """Counts the primes of (P, 2P]: exhaustively when 2P is small, otherwise
    stopping at the second prime. None when beyond primality reach."""
    P = block.P
    if 2 * P <= _DIRECT_COUNT_LIMIT:
        count = int(segment_primes(P + 1, 2 * P + 1).size)
        return PrimeCount(lo=P, hi=2 * P, count=count, exhaustive=True)
    found = 0
    n = P + 1
    try:
        while found < 2 and n <= 2 * P:
            found += is_prime(n)
            n += 1
    except ResourceError:
        return None
    return PrimeCount(lo=P, hi=2 * P, count=found, exhaustive=False)


def verify_crt_block(
    q: int, table: PrimeTable, scan: bool = True, scanCap: Optional[int] = None
) -> CertificateReport:
    """Block, witnesses, containment, surrounding gap and, when within the
    scan cap, the smaller later gap in (4P, 8P]."""
    scanCap = settings.scanCap if scanCap is None else scanCap
    block = build_crt_block(q, table)
    P, qMinus = block.P, block.q_minus
    primes = table.primes[: table.index_of(q)].tolist()

    builder = ReportBuilder(f"tail.crt.q{q}", "uniform tail, CRT composite block")
    builder.fact(
        "witnesses",
        f"each of the {block.block_len} integers a + 2P + m has its case witness as a divisor",
        all(block.element(w.m) % w.prime == 0 and w.prime <= q for w in block.witnesses),
    )
    builder.fact(
        "trial",
        f"trial division by the primes <= {q} finds a divisor of every block element",
        all(
            any(n % p == 0 for p in primes)
            for n in range(block.block_start, block.block_end + 1)
        ),
    )
    counts = {case: 0 for case in WitnessCase}
    for w in block.witnesses:
        counts[w.case] += 1
    builder.fact(
        "cases",
        "every m in [1, 2q- - 1] falls in exactly one of the five witness cases",
        counts[WitnessCase.BELOW] == qMinus - 2
        and counts[WitnessCase.ABOVE] == qMinus - 2
        and counts[WitnessCase.PREDECESSOR] == 1
        and counts[WitnessCase.TWO] == 1
        and counts[WitnessCase.SUCCESSOR] == 1,
    )
    builder.fact("primorial", f"P >= 2 q- q = {2 * qMinus * q}", P >= 2 * qMinus * q)
    builder.less(
        "containment", "2P < a + 2P + 1 <= a + 2P + 2q- - 1 < 4P",
        2 * P, block.block_start, block.block_end + 1, 4 * P + 1,
    )

    gap = surrounding_gap(block)
    if gap is not None:
        builder.fact(
            "g_minus",
            f"surrounding gap {gap.lower} -> {gap.upper} has length {gap.length} >= 2q- = {2 * qMinus}",
            gap.length >= 2 * qMinus,
        )
    else:
        builder.note("surrounding gap beyond deterministic primality testing; G- >= 2q- by construction")

    count = two_primes_in_P_2P(block)
    if count is not None:
        builder.fact(
            "two_primes",
            f"(P, 2P] holds {'exactly' if count.exhaustive else 'at least'} {count.count} primes, at least 2",
            count.count >= 2,
        )
    else:
        builder.note("(P, 2P] beyond deterministic primality testing; covered by tail.two_primes")

    if scan and 8 * P <= scanCap:
        scanned = scan_gap_region(block, scanCap)
        builder.less(
            "pigeonhole",
            f"G+ = {scanned.min_gap} < 4P/(N - 1) with N = {scanned.prime_count}",
            scanned.min_gap,
            Fraction(4 * P, scanned.prime_count - 1),
        )
        if gap is not None:
            builder.note(
                f"informational: G+ = {scanned.min_gap} "
                f"{'<' if scanned.min_gap < gap.length else '>='} G- = {gap.length}"
            )
    else:
        builder.note(f"scan of (4P, 8P] skipped: 8P exceeds the scan cap {scanCap}")
    builder.note(DESK_NOTE)
    return builder.build()


def block_artifact(block: CrtBlock) -> str:
    """Plain-text listing of the block with one witness per element."""
    lines = [
        f"# q = {block.q}, q- = {block.q_minus}",
        f"# P = {block.P}",
        f"# a = {block.a}",
        f"# block a + 2P + 1 .. a + 2P + {block.block_len}",
        "# m\tn\twitness\tcase",
    ]
    for w in block.witnesses:
        lines.append(f"{w.m}\t{block.element(w.m)}\t{w.prime}\t{w.case.value}")
    return "\n".join(lines) + "\n"


def tail_reports(
    table: PrimeTable, precision=None, qs: Sequence[int] = (13, 23, 53, 101)
) -> List[CertificateReport]:
    reports = [
        verify_tail_constants(precision),
        verify_DM_identity(precision),
        verify_h_monotone(precision),
        verify_two_primes_step(precision),
        verify_tail_chain(R0, precision, label="boundary"),
        verify_tail_chain(10**40, precision, label="1e40"),
    ]
    reports.extend(verify_crt_block(q, table) for q in qs)
    return reports
