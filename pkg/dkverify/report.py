"""Certificate reports: checked inequalities, verdicts and their serialization."""
# System modules
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

# Custom modules
from .errors import UnknownClaimError
from .numerics import Interval, Ordering, float_free, interval_compare, to_interval

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"

_DECIMALS = 30
_EXACT_LIMIT = 10**120


@dataclass(frozen=True)
class CheckedInequality:
    """One strictly checked chain t_0 R t_1 R ... R t_n, or a boolean fact.

    ``margin`` is the smallest separation between consecutive terms (zero for
    equalities, None for facts); it is negative when the chain fails.
    """

    claim_id: str
    description: str
    relation: str
    terms: Tuple[Interval, ...]
    kind: str
    margin: Optional[Fraction]
    verdict: str
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS


@dataclass(frozen=True)
class CertificateReport:
    claim_id: str
    location: str
    checked_inequalities: Tuple[CheckedInequality, ...]
    verdict: str
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def firstFailure(self) -> Optional[str]:
        for check in self.checked_inequalities:
            if not check.passed:
                return check.claim_id
        return None if self.passed else self.claim_id


class ReportBuilder:
    """Collects checks under one report id.

    Check ids are ``<report id>.<name>``.

    Example usage::
        builder = ReportBuilder("table1.r4", "small cases r = 3..19")
        builder.less("descent", "R_4(23^-) < 4.759 < 7", ratio, "4.759", 7)
        report = builder.build()
    """

    def __init__(self, claimId: str, location: str):
        self.claimId = claimId
        self.location = location
        self.checks: List[CheckedInequality] = []
        self.notes: List[str] = []

    def _id(self, name: str) -> str:
        return f"{self.claimId}.{name}" if name else self.claimId

    def _chain(self, name, description, relation, wanted, terms, note):
        terms = tuple(to_interval(t) for t in terms)
        if len(terms) < 2:
            raise ValueError("a chain needs at least two terms")
        passed = True
        margin = None
        for left, right in zip(terms, terms[1:]):
            if wanted is Ordering.LESS:
                gap = right.lo - left.hi
            else:
                gap = left.lo - right.hi
            margin = gap if margin is None else min(margin, gap)
            passed = passed and interval_compare(left, right) is wanted
        kind = "exact" if all(t.isPoint() for t in terms) else "interval"
        check = CheckedInequality(
            claim_id=self._id(name),
            description=description,
            relation=relation,
            terms=terms,
            kind=kind,
            margin=margin,
            verdict=PASS if passed else FAIL,
            note=note,
        )
        if not passed:
            logger.warning("Report :: %s failed (margin %s)", check.claim_id, float_free(margin))
        self.checks.append(check)
        return check

    def less(self, name: str, description: str, *terms, note: str = "") -> CheckedInequality:
        """Verifies t_0 < t_1 < ... strictly, enclosure against enclosure."""
        return self._chain(name, description, "<", Ordering.LESS, terms, note)

    def greater(self, name: str, description: str, *terms, note: str = "") -> CheckedInequality:
        return self._chain(name, description, ">", Ordering.GREATER, terms, note)

    def equal(self, name: str, description: str, left, right, note: str = "") -> CheckedInequality:
        """Exact equality of two point values."""
        left, right = to_interval(left), to_interval(right)
        passed = left.isPoint() and right.isPoint() and left.lo == right.lo
        check = CheckedInequality(
            claim_id=self._id(name),
            description=description,
            relation="=",
            terms=(left, right),
            kind="exact",
            margin=Fraction(0) if passed else None,
            verdict=PASS if passed else FAIL,
            note=note,
        )
        if not passed:
            logger.warning("Report :: %s failed: %s != %s", check.claim_id, left, right)
        self.checks.append(check)
        return check

    def fact(self, name: str, description: str, holds: bool, note: str = "") -> CheckedInequality:
        """Records a boolean property established by direct computation."""
        check = CheckedInequality(
            claim_id=self._id(name),
            description=description,
            relation="holds",
            terms=(),
            kind="exact",
            margin=None,
            verdict=PASS if holds else FAIL,
            note=note,
        )
        if not holds:
            logger.warning("Report :: %s failed", check.claim_id)
        self.checks.append(check)
        return check

    def note(self, text: str):
        self.notes.append(text)

    def build(self) -> CertificateReport:
        checks = tuple(self.checks)
        passed = bool(checks) and all(c.passed for c in checks)
        return CertificateReport(
            claim_id=self.claimId,
            location=self.location,
            checked_inequalities=checks,
            verdict=PASS if passed else FAIL,
            notes=tuple(self.notes),
        )


def sort_reports(reports: Iterable[CertificateReport]) -> List[CertificateReport]:
    return sorted(reports, key=lambda r: r.claim_id)


def directed_decimal(value: Fraction, digits: int = _DECIMALS, up: bool = False) -> str:
    """Decimal string with ``digits`` fractional digits, rounded toward
    +infinity when ``up`` and toward -infinity otherwise."""
    scale = 10**digits
    if up:
        scaled = -((-value.numerator * scale) // value.denominator)
    else:
        scaled = (value.numerator * scale) // value.denominator
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _exact(value: Fraction) -> Optional[str]:
    if abs(value.numerator) < _EXACT_LIMIT and value.denominator < _EXACT_LIMIT:
        return str(value)
    return None


def _interval_record(interval: Interval) -> dict:
    record = {
        "lo": directed_decimal(interval.lo),
        "hi": directed_decimal(interval.hi, up=True),
    }
    if interval.isPoint():
        exact = _exact(interval.lo)
        if exact is not None:
            record["exact"] = exact
    return record


def _check_record(check: CheckedInequality) -> dict:
    return {
        "claim_id": check.claim_id,
        "description": check.description,
        "relation": check.relation,
        "terms": [_interval_record(t) for t in check.terms],
        "kind": check.kind,
        "margin": None if check.margin is None else directed_decimal(check.margin),
        "verdict": check.verdict,
        "note": check.note,
    }


def report_record(report: CertificateReport) -> dict:
    return {
        "claim_id": report.claim_id,
        "location": report.location,
        "inequalities": [_check_record(c) for c in report.checked_inequalities],
        "notes": list(report.notes),
        "verdict": report.verdict,
    }


def render_machine(reports: Sequence[CertificateReport]) -> str:
    """JSON document with sorted keys, reports sorted by claim id."""
    ordered = sort_reports(reports)
    document = {
        "reports": [report_record(r) for r in ordered],
        "verdict": PASS if all(r.passed for r in ordered) else FAIL,
    }
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def _term_text(interval: Interval) -> str:
    if interval.isPoint():
        return float_free(interval.lo)
    return str(interval)


def render_check(check: CheckedInequality) -> str:
    line = f"  {check.verdict.upper():4} {check.claim_id}: {check.description}"
    if check.margin is not None and check.relation != "=":
        line += f" (margin {float_free(check.margin)})"
    return line


def render_text(reports: Sequence[CertificateReport]) -> str:
    """One header per report and one line per check."""
    lines = []
    for report in sort_reports(reports):
        lines.append(f"{report.verdict.upper()} {report.claim_id} [{report.location}]")
        lines.extend(render_check(c) for c in report.checked_inequalities)
        lines.extend(f"  note: {n}" for n in report.notes)
    return "\n".join(lines) + "\n"


def render(reports: Sequence[CertificateReport], reportFormat: str = "text") -> str:
    if reportFormat == "machine":
        return render_machine(reports)
    return render_text(reports)


def write_report(text: str, path: Path):
    """Writes through a temporary file in the target directory and renames."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".report-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def find_claim(reports: Iterable[CertificateReport], claimId: str):
    """Returns (report, check) for a check id, or (report, None) for a report id."""
    for report in reports:
        if report.claim_id == claimId:
            return report, None
        for check in report.checked_inequalities:
            if check.claim_id == claimId:
                return report, check
    raise UnknownClaimError(claimId)


def explain_text(report: CertificateReport, check: Optional[CheckedInequality]) -> str:
    """Anchor, relation, every term (exact when small, else directed
    decimals) and the margin."""
    if check is None:
        lines = [f"{report.claim_id} [{report.location}]: {report.verdict}"]
        lines.extend(render_check(c) for c in report.checked_inequalities)
        lines.extend(f"note: {n}" for n in report.notes)
        return "\n".join(lines) + "\n"

    lines = [
        f"claim:    {check.claim_id}",
        f"location: {report.location}",
        f"checks:   {check.description}",
        f"relation: {check.relation} ({check.kind})",
    ]
    for n, term in enumerate(check.terms):
        record = _interval_record(term)
        if "exact" in record:
            lines.append(f"term {n}:   {record['exact']} = {record['lo']}...")
        elif term.isPoint():
            lines.append(f"term {n}:   {record['lo']}...")
        else:
            lines.append(f"term {n}:   [{record['lo']}, {record['hi']}]")
    if check.margin is not None:
        lines.append(f"margin:   {directed_decimal(check.margin)}")
    if check.note:
        lines.append(f"note:     {check.note}")
    lines.append(f"verdict:  {check.verdict}")
    return "\n".join(lines) + "\n"
