"""Exact rationals and outward-rounded rational intervals.

Nothing in this module touches binary floating point. Logarithms are
enclosed with the atanh series evaluated in fixed point on integers, lower
sums rounded down and upper sums rounded up, with the geometric tail bound
added to the upper end.
"""
# System modules
import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple, Union

# Custom modules
from .errors import ConsistencyError, DomainError, PrecisionError
from .settings import settings

logger = logging.getLogger(__name__)

Rational = Fraction

_LEVEL_BITS = 32
_GUARD_BITS = 16
_LOGLOG_STEP_BITS = 8
_LOGLOG_STEPS = 64


def parse_decimal(text: str) -> Fraction:
    """Parses a displayed literal such as '3.303755162423773' or
    '152,960,196' into an exact Rational."""
    cleaned = text.replace(",", "").replace("_", "").strip()
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"not a decimal literal: {text!r}") from e


def as_rational(value) -> Fraction:
    """Coerces ints and Fractions; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, str):
        return parse_decimal(value)
    return Fraction(value)


@dataclass(frozen=True)
class Power:
    """The exact integer base**exponent, kept symbolic.

    Its logarithm is exponent*log(base), so 10**71298 never becomes a series
    argument; ``value()`` materializes the integer when digits are needed.
    """

    base: int
    exponent: int

    def __post_init__(self):
        if self.base < 2 or self.exponent < 0:
            raise DomainError(f"unsupported power {self.base}^{self.exponent}")

    def value(self) -> int:
        return self.base**self.exponent

    def __str__(self):
        return f"{self.base}^{self.exponent}"


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with Rational endpoints.

    Arithmetic between intervals is exact on the endpoints, so it is trivially
    outward; only the transcendental enclosures below round, and they round
    outward.
    """

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise DomainError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value) -> "Interval":
        value = as_rational(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def isPoint(self) -> bool:
        return self.lo == self.hi

    def contains(self, value) -> bool:
        value = as_rational(value)
        return self.lo <= value <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ConsistencyError(f"disjoint enclosures {self} and {other}")
        return Interval(lo, hi)

    def roundOut(self, bits: int) -> "Interval":
        """Widens both ends to the dyadic grid 2**-bits."""
        scale = 1 << bits
        lo = (self.lo.numerator * scale) // self.lo.denominator
        hi = -((-self.hi.numerator * scale) // self.hi.denominator)
        return Interval(Fraction(lo, scale), Fraction(hi, scale))

    def __add__(self, other):
        other = to_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = to_interval(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return to_interval(other) - self

    def __mul__(self, other):
        other = to_interval(other)
        products = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = to_interval(other)
        if other.lo <= 0 <= other.hi:
            raise DomainError(f"division by an interval containing zero: {other}")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return to_interval(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("only nonnegative integer powers are supported")
        if self.lo >= 0:
            return Interval(self.lo**exponent, self.hi**exponent)
        result = Interval.point(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __str__(self):
        return f"[{float_free(self.lo)}, {float_free(self.hi)}]"


def float_free(value: Fraction, digits: int = 12) -> str:
    """Short decimal rendering for logs, truncated toward zero."""
    sign = "-" if value < 0 else ""
    value = abs(value)
    scaled = (value.numerator * 10**digits) // value.denominator
    whole, frac = divmod(scaled, 10**digits)
    if whole.bit_length() > 64:
        return f"{sign}~2^{whole.bit_length()}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def to_interval(value) -> Interval:
    if isinstance(value, Interval):
        return value
    return Interval.point(value)


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    OVERLAP = "overlap"


def interval_compare(a, b) -> Ordering:
    """Strict comparison of two enclosures; OVERLAP proves nothing."""
    a, b = to_interval(a), to_interval(b)
    if a.hi < b.lo:
        return Ordering.LESS
    if a.lo > b.hi:
        return Ordering.GREATER
    return Ordering.OVERLAP


def _atanh_scaled(u: Fraction, bits: int, cap: int) -> Tuple[int, int]:
    """Integers lo, hi with lo <= atanh(u) * 2**bits <= hi, for 0 < u <= 1/3."""
    scale = 1 << bits
    uLo = (u.numerator << bits) // u.denominator
    uHi = -((-u.numerator << bits) // u.denominator)
    squareLo = (uLo * uLo) >> bits
    squareHi = -((-(uHi * uHi)) >> bits)

    termLo, termHi = uLo, uHi
    sumLo = sumHi = 0
    n = 0
    while True:
        k = 2 * n + 1
        sumLo += termLo // k
        sumHi += -(-termHi // k)
        termLo = (termLo * squareLo) >> bits
        termHi = -((-(termHi * squareHi)) >> bits)
        n += 1
        # |R_n| <= u^(2n+1) / ((2n+1)(1-u^2))
        k = 2 * n + 1
        tail = -(-(termHi << bits) // (k * (scale - squareHi)))
        if tail <= 1:
            return sumLo, sumHi + tail
        if n >= cap:
            raise PrecisionError(
                f"atanh series needs more than {cap} terms at {bits} bits"
            )


@lru_cache(maxsize=64)
def _ln2_scaled(bits: int, cap: int) -> Tuple[int, int]:
    lo, hi = _atanh_scaled(Fraction(1, 3), bits, cap)
    return 2 * lo, 2 * hi


@lru_cache(maxsize=512)
def _log_at_level(x: Fraction, level: int, cap: int) -> Interval:
    """Enclosure of log(x) for x > 1 using about 32*level working bits."""
    k = x.numerator.bit_length() - x.denominator.bit_length()
    y = Fraction(x.numerator, x.denominator << k) if k >= 0 else x * (1 << -k)
    if y < 1:
        k -= 1
        y *= 2
    u = (y - 1) / (y + 1)

    bits = level * _LEVEL_BITS + _GUARD_BITS + k.bit_length()
    scale = 1 << bits
    atanhLo, atanhHi = _atanh_scaled(u, bits, cap) if u else (0, 0)
    ln2Lo, ln2Hi = _ln2_scaled(bits, cap) if k else (0, 0)
    return Interval(
        Fraction(k * ln2Lo + 2 * atanhLo, scale),
        Fraction(k * ln2Hi + 2 * atanhHi, scale),
    )


def resolve_precision(precision) -> Fraction:
    precision = settings.precision if precision is None else as_rational(precision)
    if precision <= 0:
        raise DomainError(f"precision must be positive, got {precision}")
    return precision


def log_enclosure(x, precision=None, seriesCap: Optional[int] = None) -> Interval:
    """Returns an interval of width <= precision containing ln(x).

    Successive working levels are intersected, so a tighter precision never
    loosens either endpoint.

    Args:
        x: positive Rational, int or Power.
        precision: target width (defaults to the configured precision).
        seriesCap: maximum atanh series length (defaults to the configured cap).
    """
    precision = resolve_precision(precision)
    cap = settings.seriesCap if seriesCap is None else seriesCap

    if isinstance(x, Power):
        if x.exponent == 0:
            return Interval.point(0)
        inner = log_enclosure(x.base, precision / x.exponent, cap)
        return inner * x.exponent

    x = as_rational(x)
    if x <= 0:
        raise DomainError(f"log of nonpositive value {x}")
    if x == 1:
        return Interval.point(0)
    if x < 1:
        return -log_enclosure(1 / x, precision, cap)

    level = 1
    enclosure = _log_at_level(x, level, cap)
    while enclosure.width > precision:
        level += 1
        enclosure = enclosure.intersect(_log_at_level(x, level, cap))
    if level > 2:
        logger.debug("Log :: %d working levels for width %s", level, float_free(enclosure.width))
    return enclosure


def log_interval(value: Interval, precision=None) -> Interval:
    """Encloses log over a positive interval argument (log is increasing)."""
    precision = resolve_precision(precision)
    value = to_interval(value)
    if value.lo <= 0:
        raise DomainError(f"log of an interval reaching {value.lo}")
    return Interval(
        log_enclosure(value.lo, precision / 2).lo,
        log_enclosure(value.hi, precision / 2).hi,
    )


def _loglog_at(x, width: Fraction) -> Optional[Interval]:
    inner = log_enclosure(x, width / 4)
    if inner.hi <= 1:
        raise DomainError(f"log({x}) is not greater than 1: {inner}")
    if inner.lo <= 1:
        return None
    return Interval(
        log_enclosure(inner.lo, width / 4).lo,
        log_enclosure(inner.hi, width / 4).hi,
    )


def loglog_enclosure(x, precision=None) -> Interval:
    """Returns an interval of width <= precision containing ln(ln(x)).

    The widths 2^-8, 2^-16, ... are tried in turn and intersected, so a
    tighter precision never loosens either endpoint. The inner logarithm
    must be verifiably greater than 1.
    """
    precision = resolve_precision(precision)
    enclosure = None
    for step in range(1, _LOGLOG_STEPS + 1):
        found = _loglog_at(x, Fraction(1, 1 << (_LOGLOG_STEP_BITS * step)))
        if found is not None:
            enclosure = found if enclosure is None else enclosure.intersect(found)
            if enclosure.width <= precision:
                return enclosure
    if enclosure is None:
        raise DomainError(f"log({x}) is not verifiably greater than 1")
    raise PrecisionError(f"loglog width {float_free(enclosure.width)} over target")


def epsilon_from_log(logY) -> Interval:
    """eps as a function of an enclosure L of log y: 1/(10L^2) + 4/(15L^3).

    eps is decreasing in L, so the ends swap.
    """
    logY = to_interval(logY)
    if logY.lo <= 0:
        raise DomainError(f"eps needs log y > 0, got {logY}")

    def value(t: Fraction) -> Fraction:
        return Fraction(1, 10) / t**2 + Fraction(4, 15) / t**3

    return Interval(value(logY.hi), value(logY.lo))


def epsilon_enclosure(y, precision=None) -> Interval:
    """Returns an interval of width <= precision containing eps(y), y > 1."""
    precision = resolve_precision(precision)
    if isinstance(y, Power):
        if y.exponent == 0:
            raise DomainError("eps(y) needs y > 1")
    elif as_rational(y) <= 1:
        raise DomainError(f"eps(y) needs y > 1, got {y}")

    inner = precision
    for _ in range(64):
        logY = log_enclosure(y, inner)
        if logY.lo > 0:
            value = epsilon_from_log(logY)
            if value.width <= precision:
                return value
        inner /= 256
    raise PrecisionError(f"eps({y}) not reachable at width {precision}")


@dataclass(frozen=True)
class ErrorFunctional:
    """eps(y) together with its argument."""

    y: Union[Fraction, Power]
    value: Interval

    @classmethod
    def evaluate(cls, y, precision=None) -> "ErrorFunctional":
        return cls(y=y, value=epsilon_enclosure(y, precision))
