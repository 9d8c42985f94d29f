"""Explicit prime estimates used as axioms.

Each function evaluates the right-hand side of a published inequality as an
outward-rounded enclosure and refuses arguments outside the range where the
inequality is licensed. None of them proves the inequality itself.
"""
# System modules
import logging
from fractions import Fraction
from typing import Optional

# Custom modules
from .errors import DomainError, PrecisionError
from .numerics import (
    Interval,
    Power,
    as_rational,
    epsilon_enclosure,
    log_enclosure,
    log_interval,
    loglog_enclosure,
    parse_decimal,
    resolve_precision,
)

logger = logging.getLogger(__name__)

B_INTERVAL = Interval(parse_decimal("0.261497212847642"), parse_decimal("0.261497212847643"))
B_TABULATED = parse_decimal("0.2614972128476427837554268386")
C_PUBLISHED = Interval(parse_decimal("0.773156636699192"), parse_decimal("0.773157136700943"))
B_MINUS = parse_decimal("0.261497212847642")
C_MINUS = parse_decimal("0.773156636699192")

THETA_FACTOR = Fraction(1, 36260)
THETA_LOWER_COEFFICIENT = parse_decimal("1.2323")
PI_UPPER_SHIFT = parse_decimal("1.1")

A_UPPER_FROM = 10372
A_LOWER_SHARP_FROM = 1999993
SHORT_INTERVAL_FROM = 3275
PI_LOWER_ABOVE = 5393
PI_UPPER_ABOVE = 60184


def _compare(a, b) -> int:
    """Sign of a - b for rationals and Powers, without materializing powers
    of a common base."""
    if isinstance(a, Power) and isinstance(b, Power) and a.base == b.base:
        return (a.exponent > b.exponent) - (a.exponent < b.exponent)
    a = a.value() if isinstance(a, Power) else as_rational(a)
    b = b.value() if isinstance(b, Power) else as_rational(b)
    return (a > b) - (a < b)


def _check_range(name: str, y, bound, strict: bool = True):
    sign = _compare(y, bound)
    if sign < 0 or (strict and sign == 0):
        relation = ">" if strict else ">="
        logger.debug("Estimates :: %s refused y = %s", name, y)
        raise DomainError(f"{name} is licensed for y {relation} {bound}, got {y}")


def a_upper(
    y, precision=None, epsilon_at=None, c: Optional[Interval] = None
) -> Interval:
    """loglog y + B + eps(y) + C, an upper bound on A(y) for y > 10372.

    Args:
        y: argument, Rational or Power.
        precision: width target for the transcendental parts.
        epsilon_at: evaluate eps at this smaller argument instead (eps is
            decreasing, so the bound only grows).
        c: enclosure of C, the published interval by default.
    """
    precision = resolve_precision(precision)
    _check_range("A-upper", y, A_UPPER_FROM)
    if epsilon_at is None:
        epsilon_at = y
    elif _compare(epsilon_at, y) > 0 or _compare(epsilon_at, 1) <= 0:
        raise DomainError(f"eps may only be evaluated at some 1 < z <= y, got {epsilon_at}")
    c = C_PUBLISHED if c is None else c
    return (
        loglog_enclosure(y, precision / 2)
        + B_INTERVAL
        + epsilon_enclosure(epsilon_at, precision / 2)
        + c
    )


def a_upper_weak(y, precision=None) -> Interval:
    """loglog y + B + 1 + eps(y), using only C < 1."""
    precision = resolve_precision(precision)
    _check_range("A-upper-weak", y, A_UPPER_FROM)
    return loglog_enclosure(y, precision / 2) + B_INTERVAL + 1 + epsilon_enclosure(y, precision / 2)


def _loglog_near_one(y, precision: Fraction) -> Interval:
    """log log y for 1 < y where log y may not exceed 1 (the result may be
    negative)."""
    inner = precision
    for _ in range(64):
        logY = log_enclosure(y, inner)
        if logY.lo > 0:
            value = log_interval(logY, precision / 2)
            if value.width <= precision:
                return value
        inner /= 256
    raise PrecisionError(f"log log {y} not reachable at width {precision}")


def a_lower_weak(y, precision=None) -> Interval:
    """loglog y + B - eps(y), a lower bound on A(y) for every y > 1.

    Up to e the log-log term is negative and comes from the logarithm of
    an enclosure of log y."""
    precision = resolve_precision(precision)
    _check_range("A-lower-weak", y, 1)
    if log_enclosure(y, Fraction(1, 16)).lo > 1:
        loglogY = loglog_enclosure(y, precision / 2)
    else:
        loglogY = _loglog_near_one(y, precision / 2)
    return loglogY + B_INTERVAL - epsilon_enclosure(y, precision / 2)


def a_lower_sharp(y, precision=None) -> Interval:
    """loglog y + B_- - eps(y) + C_- - 1/(y-1) for y >= 1,999,993."""
    precision = resolve_precision(precision)
    _check_range("A-lower-sharp", y, A_LOWER_SHARP_FROM, strict=False)
    tail = Fraction(1, (y.value() if isinstance(y, Power) else as_rational(y)) - 1)
    value = (
        loglog_enclosure(y, precision / 4)
        + B_MINUS
        - epsilon_enclosure(y, precision / 4)
        + C_MINUS
        - tail
    )
    # keep the denominators small once 1/(y-1) is folded in
    bits = precision.denominator.bit_length() - precision.numerator.bit_length() + 8
    return value.roundOut(bits)


def theta_upper(x) -> Fraction:
    """x + x/36260 > theta(x) for x > 0."""
    x = as_rational(x)
    if x <= 0:
        raise DomainError(f"theta-upper needs x > 0, got {x}")
    return x * (1 + THETA_FACTOR)


def theta_lower(x, precision=None) -> Interval:
    """Enclosure of x(1 - 1.2323/log x) < theta(x), for x > 2."""
    precision = resolve_precision(precision)
    x = as_rational(x)
    if x <= 2:
        raise DomainError(f"theta-lower needs x > 2, got {x}")
    logX = log_enclosure(x, precision / (4 * x))
    return x * (1 - THETA_LOWER_COEFFICIENT / logX)


def pi_lower(x, precision=None) -> Interval:
    """Enclosure of x/(log x - 1) <= pi(x), for x > 5393."""
    precision = resolve_precision(precision)
    x = as_rational(x)
    if x <= PI_LOWER_ABOVE:
        raise DomainError(f"pi-lower needs x > {PI_LOWER_ABOVE}, got {x}")
    return x / (log_enclosure(x, precision / x) - 1)


def pi_upper(x, precision=None) -> Interval:
    """Enclosure of x/(log x - 1.1) >= pi(x), for x > 60184."""
    precision = resolve_precision(precision)
    x = as_rational(x)
    if x <= PI_UPPER_ABOVE:
        raise DomainError(f"pi-upper needs x > {PI_UPPER_ABOVE}, got {x}")
    return x / (log_enclosure(x, precision / x) - PI_UPPER_SHIFT)


def short_interval_upper(x, precision=None) -> Interval:
    """Enclosure of x(1 + 1/(2 log^2 x)); (x, that] holds a prime for x >= 3275."""
    precision = resolve_precision(precision)
    x = as_rational(x)
    if x < SHORT_INTERVAL_FROM:
        raise DomainError(f"short-interval estimate needs x >= {SHORT_INTERVAL_FROM}, got {x}")
    logX = log_enclosure(x, precision / x)
    return x * (1 + 1 / (2 * logX**2))
