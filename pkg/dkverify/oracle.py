"""Brute-force ground truth for delta_m(i) by counting residues over one
period of the first i primes."""
# System modules
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Tuple

# Third-party modules
import numpy as np

# Custom modules
from .densities import d_k, delta
from .errors import ConsistencyError, DomainError, ResourceError
from .primes import PrimeTable
from .settings import settings

logger = logging.getLogger(__name__)

_INCLUSION_EXCLUSION_MAX = 6


@dataclass(frozen=True)
class ResidueCensus:
    """counts[m] = #{n mod modulus divisible by exactly m of p_1..p_i}."""

    i: int
    modulus: int
    counts: Tuple[int, ...]

    def density(self, m: int) -> Fraction:
        if not 0 <= m < len(self.counts):
            return Fraction(0)
        return Fraction(self.counts[m], self.modulus)


@dataclass(frozen=True)
class OracleVerdict:
    i: int
    checked: int
    mismatch: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def _enumerate(primes: Tuple[int, ...], modulus: int) -> Tuple[int, ...]:
    hits = np.zeros(modulus, dtype=np.uint8)
    for p in primes:
        hits[::p] += 1
    return tuple(int(c) for c in np.bincount(hits, minlength=len(primes) + 1))


def _inclusion_exclusion(primes: Tuple[int, ...], modulus: int) -> Tuple[int, ...]:
    """c_m = sum over subsets S with |S| >= m of (-1)^(|S|-m) C(|S|, m) modulus/prod(S)."""
    atLeast = [0] * (len(primes) + 1)
    for size in range(len(primes) + 1):
        atLeast[size] = sum(modulus // math.prod(s) for s in combinations(primes, size))
    return tuple(
        sum(
            (-1) ** (size - m) * math.comb(size, m) * atLeast[size]
            for size in range(m, len(primes) + 1)
        )
        for m in range(len(primes) + 1)
    )


def census(i: int, table: PrimeTable, strategy: str = "enumerate") -> ResidueCensus:
    """Counts the residues modulo p_1*...*p_i by how many of the p_j divide them.

    Args:
        i: number of leading primes.
        table: prime table holding at least i primes.
        strategy: 'enumerate' walks every residue with numpy, 'subsets' uses
            inclusion-exclusion over divisor subsets.
    """
    if i < 0:
        raise DomainError(f"census needs i >= 0, got {i}")
    if i > settings.oracleMax:
        raise ResourceError(f"census at i={i} over the ceiling {settings.oracleMax}")
    primes = tuple(table.prime(j) for j in range(1, i + 1))
    modulus = math.prod(primes)
    if strategy == "enumerate":
        counts = _enumerate(primes, modulus)
    elif strategy == "subsets":
        if i > _INCLUSION_EXCLUSION_MAX:
            raise ResourceError(f"subset census limited to i <= {_INCLUSION_EXCLUSION_MAX}")
        counts = _inclusion_exclusion(primes, modulus)
    else:
        raise DomainError(f"unknown census strategy {strategy!r}")
    logger.debug("Oracle :: census i=%d modulus=%d counts=%s", i, modulus, counts)
    return ResidueCensus(i=i, modulus=modulus, counts=counts)


def oracle_equals_formula(i: int, table: PrimeTable) -> OracleVerdict:
    """Checks c_m/modulus == delta_m(i) for every m <= i; for i <= 6 the two
    census strategies must also agree."""
    result = census(i, table)
    if i <= _INCLUSION_EXCLUSION_MAX and census(i, table, "subsets") != result:
        raise ConsistencyError(f"census strategies disagree at i={i}")
    for m in range(i + 1):
        if result.density(m) != delta(m, i, table):
            logger.warning("Oracle :: delta_%d(%d) differs from the census", m, i)
            return OracleVerdict(i=i, checked=m, mismatch=m)
    return OracleVerdict(i=i, checked=i + 1)


def oracle_d_k(k: int, i: int, table: PrimeTable) -> bool:
    """d_k(p_i) against the census of the first i-1 primes, divided by p_i."""
    if k < 1 or i < 1:
        raise DomainError(f"d_k needs k >= 1 and i >= 1, got k={k}, i={i}")
    expected = census(i - 1, table).density(k - 1) / table.prime(i)
    return d_k(k, i, table) == expected
