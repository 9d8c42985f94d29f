import json

import pytest
from click.testing import CliRunner

from dkverify import runner
from dkverify.cli import cli
from dkverify.errors import ConfigError
from dkverify.report import ReportBuilder
from dkverify.runner import Suite
from dkverify.settings import LazySettings, Settings, load, settings


def failing_suite(table, precision):
    builder = ReportBuilder("table1.r3", "small cases r = 3..19")
    builder.less("descent", "4 < 3", 4, 3)
    return [builder.build()]


@pytest.fixture
def invoke():
    def _invoke(*args):
        return CliRunner().invoke(cli, list(args))

    return _invoke


def test_verify_passes(invoke):
    result = invoke("verify", "table1")
    assert result.exit_code == 0, result.output
    assert "PASS table1.r3" in result.output
    assert "table1: 17 reports, 51 checks, pass" in result.output


def test_verify_machine_output(invoke, tmp_path):
    path = tmp_path / "ranges.json"
    result = invoke("verify", "ranges", "--format", "machine", "--out", str(path))
    assert result.exit_code == 0, result.output
    document = json.loads(path.read_text())
    assert document["verdict"] == "pass"
    assert document["reports"][0]["inequalities"][0]["claim_id"] == "ranges.A.gaps"


def test_verify_failure_exit_code(invoke, monkeypatch):
    monkeypatch.setitem(runner.SUITES, "table1", Suite("table1", 1153, failing_suite))
    result = invoke("verify", "table1")
    assert result.exit_code == 1
    assert "FAILED table1.r3.descent" in result.output


def test_verify_usage_errors(invoke):
    assert invoke("verify", "table1", "--sieve-limit", "100").exit_code == 2
    assert invoke("verify", "table1", "--precision", "abc").exit_code == 2
    assert invoke("verify", "table1", "--precision", "0").exit_code == 2
    assert invoke("verify", "table9").exit_code == 2


def test_verbose_progress(invoke):
    result = invoke("-v", "verify", "ranges")
    assert result.exit_code == 0
    assert "-> ranges :: started" in result.output


def test_explain(invoke):
    result = invoke("explain", "ranges.A.descent")
    assert result.exit_code == 0, result.output
    assert "claim:    ranges.A.descent" in result.output
    assert invoke("explain", "ranges.C.descent").exit_code == 2


def test_crt_demo(invoke, tmp_path):
    path = tmp_path / "block.txt"
    result = invoke("crt-demo", "--q", "13", "--out", str(path))
    assert result.exit_code == 0, result.output
    assert "PASS tail.crt.q13" in result.output
    assert path.read_text().startswith("# q = 13")
    assert invoke("crt-demo", "--q", "12").exit_code == 2
    assert invoke("crt-demo", "--q", "15").exit_code == 2


def test_settings_from_env_file(tmp_path, monkeypatch):
    (tmp_path / ".env").write_text("DKVERIFY_WORKERS=3\nDKVERIFY_PRECISION=1/1000\n")
    monkeypatch.delenv("DKVERIFY_WORKERS", raising=False)
    monkeypatch.delenv("DKVERIFY_PRECISION", raising=False)
    loaded = load(str(tmp_path))
    assert loaded.workers == 3
    assert loaded.precision * 1000 == 1
    assert loaded.override(workers=None, oracleMax=6) == Settings(
        workers=3, precision=loaded.precision, oracleMax=6
    )


def test_bad_settings(tmp_path, monkeypatch):
    monkeypatch.setenv("DKVERIFY_SIEVE_CAP", "lots")
    with pytest.raises(ConfigError):
        load(str(tmp_path))


def test_bad_environment_exits_with_usage_code(invoke, monkeypatch):
    monkeypatch.setenv("DKVERIFY_WORKERS", "many")
    monkeypatch.setattr(settings, "_loaded", None)
    result = invoke("verify", "table1")
    assert result.exit_code == 2
    assert "bad DKVERIFY_* setting" in result.output


def test_settings_load_lazily(monkeypatch):
    monkeypatch.setenv("DKVERIFY_ORACLE_MAX", "5")
    lazy = LazySettings()
    assert lazy._loaded is None
    assert lazy.oracleMax == 5
    assert lazy.get() is lazy.get()
