"""Run settings, read from the environment or a ``.env`` file with decouple."""
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from decouple import AutoConfig, UndefinedValueError

from .errors import ConfigError


@dataclass(frozen=True)
class Settings:
    """Immutable snapshot of every tunable knob.

    Args:
        cacheDir: prime-table cache directory, None disables caching.
        sieveCap: largest limit accepted by the sieve.
        seriesCap: largest atanh series length.
        precision: default interval width for inequality checks.
        crtQCap: largest q accepted by the CRT construction.
        scanCap: largest 8P scanned for the later small gap.
        oracleMax: largest i accepted by the residue census.
        workers: number of concurrent suite workers.
        workerMode: 'thread' or 'process'.
    """

    cacheDir: Optional[str] = None
    sieveCap: int = 10**8
    seriesCap: int = 10**4
    precision: Fraction = Fraction(1, 10**9)
    crtQCap: int = 200
    scanCap: int = 2 * 10**9
    oracleMax: int = 8
    workers: int = 1
    workerMode: str = "thread"

    def override(self, **kwargs) -> "Settings":
        """Returns a copy with the non-None keyword values replaced."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _rational(text) -> Fraction:
    return Fraction(str(text).strip())


def load(search_path: str = ".") -> Settings:
    """Reads every DKVERIFY_* variable from the environment or the nearest
    ``.env``, falling back to the defaults."""
    config = AutoConfig(search_path=search_path)
    try:
        loaded = Settings(
            cacheDir=config("DKVERIFY_CACHE_DIR", default=None),
            sieveCap=config("DKVERIFY_SIEVE_CAP", default=10**8, cast=int),
            seriesCap=config("DKVERIFY_SERIES_CAP", default=10**4, cast=int),
            precision=config("DKVERIFY_PRECISION", default="1e-9", cast=_rational),
            crtQCap=config("DKVERIFY_CRT_Q_CAP", default=200, cast=int),
            scanCap=config("DKVERIFY_SCAN_CAP", default=2 * 10**9, cast=int),
            oracleMax=config("DKVERIFY_ORACLE_MAX", default=8, cast=int),
            workers=config("DKVERIFY_WORKERS", default=1, cast=int),
            workerMode=config("DKVERIFY_WORKER_MODE", default="thread"),
        )
    except (ValueError, ZeroDivisionError, UndefinedValueError) as e:
        raise ConfigError(f"bad DKVERIFY_* setting: {e}") from e
    if loaded.precision <= 0 or loaded.workers < 1 or loaded.workerMode not in ("thread", "process"):
        raise ConfigError(f"invalid settings {loaded}")
    return loaded


class LazySettings:
    """Loads the settings on first attribute access, so a malformed variable
    surfaces as a ConfigError where it is used rather than at import."""

    def __init__(self, search_path: str = "."):
        self._searchPath = search_path
        self._loaded: Optional[Settings] = None

    def get(self) -> Settings:
        if self._loaded is None:
            self._loaded = load(self._searchPath)
        return self._loaded

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        return getattr(self.get(), name)


settings = LazySettings()
