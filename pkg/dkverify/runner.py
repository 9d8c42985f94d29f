"""Suite registry and the run orchestration behind the command line."""
# System modules
import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

# Custom modules
from .certificates import RANGES, verify_constants, verify_range, verify_records, verify_table1
from .densities import threshold_sweep
from .errors import ConfigError, UnknownClaimError
from .oracle import oracle_d_k, oracle_equals_formula
from .pool import MODES, Worker
from .primes import PrimeTable, cached_sieve, sieve
from .report import (
    CertificateReport,
    ReportBuilder,
    explain_text,
    find_claim,
    render,
    sort_reports,
    write_report,
)
from .settings import settings
from .sevent import CLAIM_FAILED, SUITE_FINISHED, SUITE_STARTED, Emitter
from .tail import block_artifact, build_crt_block, tail_reports, verify_crt_block

logger = logging.getLogger(__name__)

FORMATS = ("text", "machine")
ORACLE_TOP = 8
SWEEP_R_MAX = 10
SWEEP_P_MAX = 10**4


def _constants(table: PrimeTable, precision: Fraction) -> List[CertificateReport]:
    return verify_constants(table)


def _table1(table: PrimeTable, precision: Fraction) -> List[CertificateReport]:
    return verify_table1(table)


def _ranges(table: PrimeTable, precision: Fraction) -> List[CertificateReport]:
    return [verify_range(spec, table) for spec in RANGES]


def _records(table: PrimeTable, precision: Fraction) -> List[CertificateReport]:
    return [verify_records(table, precision)]


def _tail(table: PrimeTable, precision: Fraction) -> List[CertificateReport]:
    return tail_reports(table, precision)


def _oracle(table: PrimeTable, precision: Fraction) -> List[CertificateReport]:
    top = min(ORACLE_TOP, settings.oracleMax)
    builder = ReportBuilder("oracle.census", "residue census")
    equalities = 0
    for i in range(top + 1):
        verdict = oracle_equals_formula(i, table)
        equalities += verdict.checked
        modulus = math.prod(table.prime(j) for j in range(1, i + 1))
        builder.fact(
            f"i{i}",
            f"delta_m({i}) = c_m/{modulus} for every m <= {i}",
            verdict.passed,
            note="" if verdict.passed else f"first mismatch at m = {verdict.mismatch}",
        )
    builder.fact(
        "d_k",
        f"d_k(p_i) = delta_(k-1)(i-1)/p_i against the census for 1 <= k <= i <= {top}",
        all(oracle_d_k(k, i, table) for i in range(1, top + 1) for k in range(1, i + 1)),
    )
    builder.note(f"{equalities} equalities delta_m(i) = c_m/modulus checked")
    if top < ORACLE_TOP:
        builder.note(f"census ceiling lowered to i = {top} by configuration")

    result = threshold_sweep(table, SWEEP_R_MAX, SWEEP_P_MAX)
    sweep = ReportBuilder("oracle.sweep", "threshold criterion")
    sweep.fact(
        "mismatches",
        f"sign of d_(r+1)(p_(i+1)) - d_(r+1)(p_i) matches the threshold verdict "
        f"for r <= {SWEEP_R_MAX}, p_i <= {SWEEP_P_MAX}",
        not result.mismatches,
        note=f"{result.checked} comparisons",
    )
    return [builder.build(), sweep.build()]


@dataclass(frozen=True)
class Suite:
    name: str
    minimum_sieve: int
    run: Callable[[PrimeTable, Fraction], List[CertificateReport]]


SUITES: Dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite("constants", 1999993, _constants),
        Suite("table1", 1153, _table1),
        Suite("ranges", 31477, _ranges),
        Suite("records", 43103, _records),
        Suite("tail", 101, _tail),
        Suite("oracle", 10007, _oracle),
    )
}
SUITE_ORDER = tuple(SUITES)


def required_sieve(suites) -> int:
    return max(SUITES[name].minimum_sieve for name in suites)


@dataclass(frozen=True)
class RunConfig:
    """One run of the verifier.

    A sieve_limit of None means the minimum the selected suites need.
    """

    sieve_limit: Optional[int] = None
    precision: Fraction = field(default_factory=lambda: settings.precision)
    report_format: str = "text"
    output_path: Optional[Path] = None
    selected_suites: Tuple[str, ...] = SUITE_ORDER
    workers: int = field(default_factory=lambda: settings.workers)
    mode: str = field(default_factory=lambda: settings.workerMode)

    def validate(self) -> "RunConfig":
        unknown = [name for name in self.selected_suites if name not in SUITES]
        if unknown or not self.selected_suites:
            raise ConfigError(f"unknown suites {unknown}, choose from {list(SUITE_ORDER)}")
        if self.report_format not in FORMATS:
            raise ConfigError(f"unknown report format {self.report_format!r}")
        if self.precision <= 0:
            raise ConfigError(f"precision must be positive, got {self.precision}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown worker mode {self.mode!r}")
        if self.workers < 1:
            raise ConfigError(f"need at least one worker, got {self.workers}")
        needed = required_sieve(self.selected_suites)
        if self.sieve_limit is not None and self.sieve_limit < needed:
            raise ConfigError(
                f"sieve limit {self.sieve_limit} below the {needed} the selected suites need"
            )
        return self


@dataclass(frozen=True)
class RunResult:
    reports: List[CertificateReport]
    first_failure: Optional[str]
    summaries: List[str]

    @property
    def status(self) -> int:
        return 0 if self.first_failure is None else 1


def _run_suite(name: str, table: PrimeTable, precision: Fraction) -> List[CertificateReport]:
    logger.info("Runner :: suite %s", name)
    return SUITES[name].run(table, precision)


def _summary(name: str, reports: List[CertificateReport]) -> str:
    checks = sum(len(r.checked_inequalities) for r in reports)
    verdict = "pass" if all(r.passed for r in reports) else "fail"
    return f"{name}: {len(reports)} reports, {checks} checks, {verdict}"


def run(config: RunConfig, events: Optional[Emitter] = None) -> RunResult:
    """Runs the selected suites in dependency order and merges their reports
    sorted by claim id. The rendered report is written atomically when an
    output path is set."""
    config.validate()
    events = events or Emitter(emitterIsEnabled=False)
    names = [name for name in SUITE_ORDER if name in config.selected_suites]
    limit = config.sieve_limit or required_sieve(names)
    table = cached_sieve(limit)

    for name in names:
        events.emit(SUITE_STARTED, name)
    worker = Worker(config.mode, config.workers)
    results = worker.map([(_run_suite, (name, table, config.precision)) for name in names])

    merged = []
    summaries = []
    for name, reports in zip(names, results):
        summaries.append(_summary(name, reports))
        events.emit(SUITE_FINISHED, name, reports)
        for report in reports:
            failure = report.firstFailure()
            if failure is not None:
                events.emit(CLAIM_FAILED, failure)
        merged.extend(reports)
    merged = sort_reports(merged)

    firstFailure = next((r.firstFailure() for r in merged if not r.passed), None)
    if config.output_path is not None:
        write_report(render(merged, config.report_format), config.output_path)
    return RunResult(reports=merged, first_failure=firstFailure, summaries=summaries)


def explain(claimId: str, config: Optional[RunConfig] = None) -> str:
    """Runs the suite that owns the claim id and describes the check."""
    suite = claimId.split(".", 1)[0]
    if suite not in SUITES:
        raise UnknownClaimError(claimId)
    config = replace(config or RunConfig(), selected_suites=(suite,), output_path=None)
    result = run(config)
    report, check = find_claim(result.reports, claimId)
    return explain_text(report, check)


def crt_demo(q: int, scan: bool = True) -> Tuple[CertificateReport, str]:
    """Block report and witness listing for one q."""
    table = sieve(max(q, 2))
    report = verify_crt_block(q, table, scan=scan)
    return report, block_artifact(build_crt_block(q, table))
