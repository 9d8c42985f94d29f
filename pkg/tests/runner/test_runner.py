import json
import tempfile
import unittest
from pathlib import Path

import pytest

from dkverify.errors import ConfigError, UnknownClaimError
from dkverify.pool import Worker
from dkverify.report import PASS
from dkverify.runner import (
    SUITE_ORDER,
    RunConfig,
    crt_demo,
    explain,
    required_sieve,
    run,
)
from dkverify.sevent import CLAIM_FAILED, SUITE_FINISHED, SUITE_STARTED, Emitter


def double(x):
    return 2 * x


class TestConfig(unittest.TestCase):
    def test_required_sieve(self):
        assert required_sieve(["table1"]) == 1153
        assert required_sieve(SUITE_ORDER) == 1999993

    def test_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(selected_suites=("table2",)).validate()
        with pytest.raises(ConfigError):
            RunConfig(selected_suites=("ranges",), sieve_limit=1000).validate()
        with pytest.raises(ConfigError):
            RunConfig(report_format="yaml").validate()
        with pytest.raises(ConfigError):
            RunConfig(mode="fiber").validate()
        assert RunConfig(selected_suites=("table1",)).validate().sieve_limit is None


class TestRun(unittest.TestCase):
    def test_table1_suite(self):
        result = run(RunConfig(selected_suites=("table1",)))
        assert result.status == 0
        assert result.first_failure is None
        assert result.summaries == ["table1: 17 reports, 51 checks, pass"]
        ids = [r.claim_id for r in result.reports]
        assert ids == sorted(ids)

    def test_workers_keep_order(self):
        serial = run(RunConfig(selected_suites=("table1", "ranges")))
        threaded = run(RunConfig(selected_suites=("table1", "ranges"), workers=2))
        assert [r.claim_id for r in threaded.reports] == [r.claim_id for r in serial.reports]
        assert threaded.summaries == serial.summaries

    def test_oracle_suite(self):
        result = run(RunConfig(selected_suites=("oracle",)))
        assert result.status == 0
        census = next(r for r in result.reports if r.claim_id == "oracle.census")
        assert [c.claim_id for c in census.checked_inequalities][-1] == "oracle.census.d_k"
        assert len(census.checked_inequalities) == 10
        assert "45 equalities delta_m(i) = c_m/modulus checked" in census.notes

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as folder:
            path = Path(folder) / "report.json"
            run(RunConfig(selected_suites=("ranges",), report_format="machine", output_path=path))
            document = json.loads(path.read_text())
        assert document["verdict"] == PASS
        assert [r["claim_id"] for r in document["reports"]] == ["ranges.A", "ranges.B"]

    def test_machine_output_is_reproducible(self):
        with tempfile.TemporaryDirectory() as folder:
            paths = [Path(folder) / name for name in ("first.json", "second.json")]
            for path in paths:
                run(RunConfig(
                    selected_suites=("table1", "ranges"), report_format="machine", output_path=path
                ))
            assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_events(self):
        seen = []
        events = Emitter()
        events.on(SUITE_STARTED, lambda name: seen.append(("start", name)))
        events.on(SUITE_FINISHED, lambda name, reports: seen.append(("done", name)))
        events.on(CLAIM_FAILED, lambda claimId: seen.append(("fail", claimId)))
        run(RunConfig(selected_suites=("ranges",)), events)
        assert seen == [("start", "ranges"), ("done", "ranges")]


class TestExplain(unittest.TestCase):
    def test_explain_check(self):
        text = explain("table1.r3.descent")
        assert "claim:    table1.r3.descent" in text
        assert "verdict:  pass" in text

    def test_unknown(self):
        with pytest.raises(UnknownClaimError):
            explain("nothing.here")
        with pytest.raises(UnknownClaimError):
            explain("table1.r2.descent")

    def test_crt_demo(self):
        report, artifact = crt_demo(13)
        assert report.passed
        assert "# P = 30030" in artifact


class TestPoolAndEvents(unittest.TestCase):
    def test_worker_modes(self):
        jobs = [(double, (n,)) for n in range(5)]
        assert Worker("thread", 3).map(jobs) == [0, 2, 4, 6, 8]
        assert Worker("thread", 1).map(jobs) == [0, 2, 4, 6, 8]
        assert Worker("process", 2).map(jobs) == [0, 2, 4, 6, 8]
        with pytest.raises(ConfigError):
            Worker("fiber")
        with pytest.raises(ConfigError):
            Worker("thread", 0)

    def test_emitter(self):
        seen = []
        events = Emitter()
        events.on("x", seen.append)
        events.on("x", lambda value: 1 / 0)
        events.emit("x", 1)
        events.disableEvents()
        events.emit("x", 2)
        events.enableEvents()
        events.clearEvent("x")
        events.emit("x", 3)
        assert seen == [1]
        events.on("y", seen.append)
        events.clearAllEvents()
        events.emit("y", 4)
        assert seen == [1]
