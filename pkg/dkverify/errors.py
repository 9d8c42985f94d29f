"""Exceptions raised by dkverify.

A failed inequality is never an exception; it is recorded in a report with
verdict ``fail``. Exceptions signal that a computation could not be carried
out at all, or that an internal cross-check disagreed.
"""


class VerificationError(Exception):
    """Base class of every dkverify error."""


class DomainError(VerificationError, ValueError):
    """Argument outside the domain of the function."""


class UndefinedRatioError(DomainError):
    """R_r(i) requested where delta_r(i) = 0, i.e. i < r."""


class PrecisionError(VerificationError):
    """Requested interval width not reachable within the series cap."""


class ResourceError(VerificationError):
    """Computation exceeds a configured cap (sieve, census, scan, q)."""


class TableIndexError(VerificationError, IndexError):
    """Prime index outside the prime table."""


class ArgumentError(VerificationError, ValueError):
    """Malformed argument, e.g. a composite where a prime is required."""


class ConsistencyError(VerificationError):
    """Two independent computations of the same quantity disagree."""


class ConfigError(VerificationError):
    """Invalid run configuration."""


class UnknownClaimError(VerificationError, KeyError):
    """No check with the requested claim id exists."""
