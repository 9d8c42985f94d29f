"""Exact densities delta_m(i), d_k(p_i), symmetric sums E_m(i) and the ratio
R_r(i), with the threshold criterion and the two-sided ratio bounds."""
# System modules
import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

# Custom modules
from .errors import ConsistencyError, DomainError, TableIndexError, UndefinedRatioError
from .primes import PrimeTable, gap_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymmetricState:
    """E_0(i)..E_{r_cap}(i) for the weights of the first i primes."""

    i: int
    row: Tuple[Fraction, ...]
    r_cap: int

    @classmethod
    def fresh(cls, r_cap: int) -> "SymmetricState":
        return cls(i=0, row=(Fraction(1),) + (Fraction(0),) * r_cap, r_cap=r_cap)


@dataclass(frozen=True)
class DensityState:
    """delta_0(i)..delta_{r_cap}(i) and prod_{j<=i} (p_j - 1)/p_j."""

    i: int
    deltas: Tuple[Fraction, ...]
    squarefree_factor: Fraction

    @classmethod
    def fresh(cls, r_cap: int) -> "DensityState":
        return cls(
            i=0,
            deltas=(Fraction(1),) + (Fraction(0),) * r_cap,
            squarefree_factor=Fraction(1),
        )


class Verdict(enum.Enum):
    DESCENT = "descent"
    ASCENT = "ascent"
    EQUAL = "equal"


@dataclass(frozen=True)
class ThresholdVerdict:
    """Exact comparison of R_r(i-1) with g_i + 1."""

    r: int
    i: int
    ratio: Fraction
    gap_plus_one: int
    verdict: Verdict


def advance(state: SymmetricState, w: Fraction) -> SymmetricState:
    """Consumes the weight w_{i+1}: E_m(i+1) = E_m(i) + w * E_{m-1}(i).

    The row is updated from high m to low m so that each E_{m-1} read is
    still the old value.
    """
    row = list(state.row)
    for m in range(min(state.i + 1, state.r_cap), 0, -1):
        row[m] += w * row[m - 1]
    return SymmetricState(i=state.i + 1, row=tuple(row), r_cap=state.r_cap)


def advance_density(state: DensityState, p: int) -> DensityState:
    """delta_m(i) = (1 - 1/p) delta_m(i-1) + (1/p) delta_{m-1}(i-1)."""
    deltas = list(state.deltas)
    keep, hit = Fraction(p - 1, p), Fraction(1, p)
    for m in range(len(deltas) - 1, 0, -1):
        deltas[m] = keep * deltas[m] + hit * deltas[m - 1]
    deltas[0] = keep * deltas[0]
    return DensityState(
        i=state.i + 1,
        deltas=tuple(deltas),
        squarefree_factor=state.squarefree_factor * keep,
    )


def symmetric_states(
    table: PrimeTable, r_cap: int, upto: Optional[int] = None
) -> Iterator[SymmetricState]:
    """Yields the symmetric rows for i = 0, 1, ..., upto."""
    upto = len(table) if upto is None else upto
    state = SymmetricState.fresh(r_cap)
    yield state
    for j in range(1, upto + 1):
        state = advance(state, Fraction(1, table.prime(j) - 1))
        yield state


def density_states(
    table: PrimeTable, r_cap: int, upto: Optional[int] = None
) -> Iterator[DensityState]:
    """Yields the density rows for i = 0, 1, ..., upto."""
    upto = len(table) if upto is None else upto
    state = DensityState.fresh(r_cap)
    yield state
    for j in range(1, upto + 1):
        state = advance_density(state, table.prime(j))
        yield state


def symmetric_rows(
    table: PrimeTable, r_cap: int, indices: Iterable[int]
) -> Dict[int, SymmetricState]:
    """Symmetric rows at every requested index, in a single pass."""
    wanted = set(indices)
    if not wanted:
        return {}
    _check_index(table, max(wanted))
    return {
        state.i: state
        for state in symmetric_states(table, r_cap, max(wanted))
        if state.i in wanted
    }


def _check_index(table: PrimeTable, i: int):
    if not 0 <= i <= len(table):
        raise TableIndexError(f"index {i} outside 0..{len(table)}")


def _last(states: Iterator):
    state = None
    for state in states:
        pass
    return state


def delta(m: int, i: int, table: PrimeTable) -> Fraction:
    """Exact delta_m(i), computed by the density recurrence and checked
    against squarefree_factor * E_m(i)."""
    if m < 0:
        raise DomainError(f"delta needs m >= 0, got {m}")
    _check_index(table, i)
    if m > i:
        return Fraction(0)
    density = _last(density_states(table, m, i))
    symmetric = _last(symmetric_states(table, m, i))
    value = density.deltas[m]
    if value != density.squarefree_factor * symmetric.row[m]:
        raise ConsistencyError(f"delta_{m}({i}) disagrees between recurrence and E_m")
    return value


def d_k(k: int, i: int, table: PrimeTable) -> Fraction:
    """Density of the integers whose k-th smallest prime divisor is p_i."""
    if k < 1 or i < 1:
        raise DomainError(f"d_k needs k >= 1 and i >= 1, got k={k}, i={i}")
    return delta(k - 1, i - 1, table) / table.prime(i)


def ratio(r: int, i: int, table: PrimeTable) -> Fraction:
    """R_r(i) = delta_{r-1}(i)/delta_r(i) = E_{r-1}(i)/E_r(i)."""
    if r < 1:
        raise DomainError(f"R_r needs r >= 1, got {r}")
    if i < r:
        raise UndefinedRatioError(f"R_{r}({i}) undefined: delta_{r}({i}) = 0")
    _check_index(table, i)
    row = _last(symmetric_states(table, r, i)).row
    return row[r - 1] / row[r]


def _classify(value: Fraction, threshold) -> Verdict:
    if value < threshold:
        return Verdict.DESCENT
    if value > threshold:
        return Verdict.ASCENT
    return Verdict.EQUAL


def threshold_check(r: int, i: int, table: PrimeTable) -> ThresholdVerdict:
    """Compares R_r(i-1) with g_i + 1; the verdict is the direction of
    d_{r+1}(p_i) -> d_{r+1}(p_{i+1})."""
    if i < 1:
        raise DomainError(f"threshold check needs i >= 1, got {i}")
    value = ratio(r, i - 1, table)
    gapPlusOne = gap_at(table, i) + 1
    return ThresholdVerdict(
        r=r,
        i=i,
        ratio=value,
        gap_plus_one=gapPlusOne,
        verdict=_classify(value, gapPlusOne),
    )


def ratio_bounds(r: int, i: int, table: PrimeTable) -> Tuple[Fraction, Fraction]:
    """r/A(p_i) <= R_r(i) <= r/(A(p_i) - W_{r-1})."""
    if r < 1:
        raise DomainError(f"R_r needs r >= 1, got {r}")
    if i < r:
        raise UndefinedRatioError(f"bounds on R_{r}({i}) need i >= r")
    total = table.weightPrefix(i)
    lower = r / total
    upper = r / (total - table.weightPrefix(r - 1))
    exact = ratio(r, i, table)
    if not lower <= exact <= upper:
        raise ConsistencyError(f"R_{r}({i}) escapes its symmetric-polynomial bounds")
    return lower, upper


@dataclass(frozen=True)
class SweepMismatch:
    r: int
    i: int
    verdict: Verdict
    difference_sign: int


@dataclass(frozen=True)
class SweepResult:
    checked: int
    mismatches: List[SweepMismatch] = field(default_factory=list)


def threshold_sweep(table: PrimeTable, r_max: int = 10, p_max: int = 10**4) -> SweepResult:
    """For every r <= r_max and every gap p_i -> p_{i+1} with p_i <= p_max and
    i - 1 >= r, compares the threshold verdict (from E_m) with the sign of
    d_{r+1}(p_{i+1}) - d_{r+1}(p_i) (from the density recurrence)."""
    last = table.pi(p_max)
    if last + 1 > len(table):
        raise TableIndexError(f"sweep to {p_max} needs the prime after it")
    symmetric = SymmetricState.fresh(r_max)
    previous = DensityState.fresh(r_max)
    checked = 0
    mismatches = []
    for i in range(1, last + 1):
        p, nextP = table.prime(i), table.prime(i + 1)
        current = advance_density(previous, p)
        gapPlusOne = nextP - p + 1
        for r in range(1, min(r_max, i - 1) + 1):
            # R_r(i-1) vs g_i + 1, cross-multiplied
            verdict = _classify(symmetric.row[r - 1], gapPlusOne * symmetric.row[r])
            # sign of delta_r(i)/p_{i+1} - delta_r(i-1)/p_i
            lhs, rhs = current.deltas[r] * p, previous.deltas[r] * nextP
            sign = (lhs > rhs) - (lhs < rhs)
            expected = {Verdict.DESCENT: -1, Verdict.ASCENT: 1, Verdict.EQUAL: 0}[verdict]
            checked += 1
            if sign != expected:
                mismatches.append(SweepMismatch(r, i, verdict, sign))
        symmetric = advance(symmetric, Fraction(1, p - 1))
        previous = current
    logger.info("Sweep :: %d threshold comparisons, %d mismatches", checked, len(mismatches))
    return SweepResult(checked=checked, mismatches=mismatches)
