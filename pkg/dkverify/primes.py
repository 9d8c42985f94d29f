"""Prime tables, gaps, weights, primorials and exact digit counts."""
# System modules
import hashlib
import logging
import math
import os
import random
import struct
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from threading import Lock
from typing import Iterator, Optional, Tuple

# Third-party modules
import numpy as np

# Custom modules
from .errors import ArgumentError, DomainError, ResourceError, TableIndexError
from .settings import settings

logger = logging.getLogger(__name__)

_SEGMENT_ODDS = 1 << 22
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the bases above is deterministic below this bound.
_MR_LIMIT = 3317044064679887385961981

_CACHE_MAGIC = b"DKPT"
_CACHE_HEADER = struct.Struct("<4sHQQ32s")


def _base_primes(limit: int) -> np.ndarray:
    """Primes <= limit by the plain sieve of Eratosthenes."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def iter_segments(lo: int, hi: int, span: int = _SEGMENT_ODDS) -> Iterator[np.ndarray]:
    """Yields the primes of [lo, hi) in increasing order, one odd-only
    segment of at most 2*span integers at a time."""
    if hi <= max(lo, 2):
        return
    base = _base_primes(math.isqrt(hi - 1))
    if lo <= 2 < hi:
        yield np.array([2], dtype=np.int64)

    start = max(lo, 3)
    if start % 2 == 0:
        start += 1
    while start < hi:
        end = min(start + 2 * span, hi)
        mask = np.ones((end - start + 1) // 2, dtype=bool)
        for p in base[1:].tolist():
            square = p * p
            if square >= end:
                break
            first = max(square, -(-start // p) * p)
            if first % 2 == 0:
                first += p
            if first < end:
                mask[(first - start) // 2 :: p] = False
        yield start + 2 * np.flatnonzero(mask).astype(np.int64)
        start = end


def segment_primes(lo: int, hi: int) -> np.ndarray:
    """All primes in the half-open window [lo, hi)."""
    chunks = list(iter_segments(lo, hi))
    if not chunks:
        return np.array([], dtype=np.int64)
    return np.concatenate(chunks)


@dataclass(frozen=True)
class WeightVector:
    """w_j = 1/(p_j - 1) for j <= N and the prefix sums W_0..W_N."""

    weights: Tuple[Fraction, ...]
    prefix: Tuple[Fraction, ...]


class PrimeTable:
    """Indexed primes p_1 = 2, p_2 = 3, ... up to ``limit``.

    Indices are 1-based, as in p_i. The table is immutable; the only mutable
    state is a lock-guarded memo of the exact prefix sums W_N.

    Args:
        primes: increasing array of primes.
        limit: the sieve bound the array is complete up to.
    """

    def __init__(self, primes: np.ndarray, limit: int):
        primes = np.asarray(primes, dtype=np.int64)
        primes.flags.writeable = False
        self.primes = primes
        self.limit = int(limit)
        self._prefixLock = Lock()
        self._prefix = [Fraction(0)]

    def __len__(self):
        return int(self.primes.size)

    def __getstate__(self):
        return {"primes": self.primes, "limit": self.limit}

    def __setstate__(self, state):
        self.__init__(state["primes"], state["limit"])

    def prime(self, i: int) -> int:
        """Returns p_i."""
        if not 1 <= i <= len(self):
            raise TableIndexError(f"prime index {i} outside 1..{len(self)}")
        return int(self.primes[i - 1])

    def pi(self, y: int) -> int:
        """Number of primes <= y, for y within the sieve limit."""
        if y > self.limit:
            raise ResourceError(f"pi({y}) needs a sieve beyond {self.limit}")
        return int(np.searchsorted(self.primes, y, side="right"))

    def contains(self, n: int) -> bool:
        if n > self.limit or n < 2:
            return False
        i = int(np.searchsorted(self.primes, n))
        return i < len(self) and int(self.primes[i]) == n

    def index_of(self, p: int) -> int:
        """Returns i with p_i = p."""
        if p > self.limit:
            raise ResourceError(f"{p} lies beyond the sieve limit {self.limit}")
        if not self.contains(p):
            raise ArgumentError(f"{p} is not prime")
        return int(np.searchsorted(self.primes, p)) + 1

    def weightPrefix(self, n: int) -> Fraction:
        """Returns the exact W_n, extending the memo as needed."""
        if not 0 <= n <= len(self):
            raise TableIndexError(f"W_{n} needs {n} primes, table has {len(self)}")
        with self._prefixLock:
            prefix = self._prefix
            for j in range(len(prefix), n + 1):
                prefix.append(prefix[-1] + Fraction(1, self.prime(j) - 1))
            return prefix[n]

    def spotCheck(self, samples: int = 64, seed: int = 0) -> bool:
        """Trial-division check of sampled entries and of the numbers
        between sampled neighbours."""
        rng = random.Random(seed)
        for _ in range(min(samples, max(len(self) - 1, 0))):
            i = rng.randrange(1, len(self))
            p, q = self.prime(i), self.prime(i + 1)
            if not _trial_prime(p) or any(_trial_prime(n) for n in range(p + 1, q)):
                return False
        return True


def _trial_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 3.3e24; larger inputs are refused."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ResourceError(f"no deterministic primality test for {n.bit_length()}-bit n")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve(limit: int, cap: Optional[int] = None) -> PrimeTable:
    """Builds the complete prime table up to ``limit`` with the segmented sieve."""
    cap = settings.sieveCap if cap is None else cap
    if limit < 2:
        raise DomainError(f"sieve limit must be at least 2, got {limit}")
    if limit > cap:
        raise ResourceError(f"sieve limit {limit} over the cap {cap}")
    table = PrimeTable(segment_primes(2, limit + 1), limit)
    logger.info("Sieve :: %d primes up to %d", len(table), limit)
    return table


def gap_at(table: PrimeTable, i: int) -> int:
    """g_i = p_{i+1} - p_i."""
    return table.prime(i + 1) - table.prime(i)


def weight_vector(table: PrimeTable, n: int) -> WeightVector:
    weights = tuple(Fraction(1, table.prime(j) - 1) for j in range(1, n + 1))
    prefix = tuple(table.weightPrefix(j) for j in range(n + 1))
    return WeightVector(weights=weights, prefix=prefix)


def weight_prefix(table: PrimeTable, n: int) -> Fraction:
    """W_N = sum_{j <= N} 1/(p_j - 1), exactly."""
    return table.weightPrefix(n)


def restricted_sum(table: PrimeTable, y: int, strict: bool = False) -> Fraction:
    """A(y) = sum_{p <= y} 1/(p-1), or A(y^-) = sum_{p < y} when strict."""
    if y > table.limit:
        raise ResourceError(f"A({y}) needs a sieve beyond {table.limit}")
    return table.weightPrefix(table.pi(y - 1 if strict else y))


def primorial(table: PrimeTable, q: int) -> int:
    """q# = product of the primes <= q, for prime q."""
    i = table.index_of(q)
    return math.prod(int(p) for p in table.primes[:i].tolist())


def decimal_digits(n: int) -> int:
    """Exact number of base-10 digits of n >= 1, without str()."""
    if n < 1:
        raise DomainError(f"digit count needs n >= 1, got {n}")
    digits = (n.bit_length() - 1) * 30103 // 100000 + 1
    power = 10 ** (digits - 1)
    while power > n:
        digits -= 1
        power //= 10
    while power * 10 <= n:
        digits += 1
        power *= 10
    return digits


def _cache_path(cacheDir: str, limit: int) -> Path:
    return Path(cacheDir) / f"primes-{limit}.bin"


def store_table(table: PrimeTable, path: Path):
    """Writes the table as little-endian 64-bit deltas behind a header."""
    deltas = np.diff(table.primes, prepend=0).astype("<u8").tobytes()
    header = _CACHE_HEADER.pack(
        _CACHE_MAGIC, 1, table.limit, len(table), hashlib.sha256(deltas).digest()
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".primes-")
    with os.fdopen(fd, "wb") as f:
        f.write(header)
        f.write(deltas)
    os.replace(tmp, path)


def load_table(path: Path, samples: int = 32) -> Optional[PrimeTable]:
    """Reads a cached table, returning None when it fails revalidation."""
    try:
        raw = path.read_bytes()
        magic, version, limit, count, digest = _CACHE_HEADER.unpack_from(raw)
    except (OSError, struct.error) as e:
        logger.warning("Cache :: unreadable %s: %s", path, e)
        return None
    payload = raw[_CACHE_HEADER.size :]
    if magic != _CACHE_MAGIC or version != 1 or len(payload) != 8 * count:
        logger.warning("Cache :: malformed %s", path)
        return None
    if hashlib.sha256(payload).digest() != digest:
        logger.warning("Cache :: checksum mismatch in %s", path)
        return None
    if count == 0:
        return None
    primes = np.cumsum(np.frombuffer(payload, dtype="<u8")).astype(np.int64)
    rng = random.Random(count)
    picks = {0, count - 1} | {rng.randrange(count) for _ in range(samples)}
    if not all(is_prime(int(primes[i])) for i in picks):
        logger.warning("Cache :: spot primality test failed for %s", path)
        return None
    return PrimeTable(primes, limit)


def cached_sieve(limit: int, cacheDir: Optional[str] = None) -> PrimeTable:
    """Like sieve, going through the on-disk cache when one is configured."""
    cacheDir = settings.cacheDir if cacheDir is None else cacheDir
    if not cacheDir:
        return sieve(limit)
    path = _cache_path(cacheDir, limit)
    if path.exists():
        table = load_table(path)
        if table is not None and table.limit == limit:
            logger.info("Cache :: loaded %d primes from %s", len(table), path)
            return table
    table = sieve(limit)
    try:
        store_table(table, path)
    except OSError as e:
        logger.warning("Cache :: could not write %s: %s", path, e)
    return table
