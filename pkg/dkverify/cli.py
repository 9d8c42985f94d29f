"""Command line: ``dkverify verify``, ``dkverify crt-demo`` and ``dkverify explain``."""
# System modules
import logging
import sys
from pathlib import Path

# Third-party modules
import click

# Custom modules
from .errors import ConfigError, ConsistencyError, DomainError, VerificationError
from .numerics import parse_decimal
from .report import render, write_report
from .runner import FORMATS, SUITE_ORDER, RunConfig, crt_demo, explain, run
from .settings import settings
from .sevent import CLAIM_FAILED, SUITE_FINISHED, SUITE_STARTED, Emitter

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


def _configure_logging(verbose: int):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("-> %(message)s"))
    root = logging.getLogger("dkverify")
    root.handlers[:] = [handler]
    root.setLevel(level)


def _precision(ctx, param, value):
    if value is None:
        return settings.precision
    try:
        precision = parse_decimal(value)
    except DomainError as e:
        raise click.BadParameter(str(e)) from e
    if precision <= 0:
        raise click.BadParameter("precision must be positive")
    return precision


def _fail(error: Exception):
    click.echo(f"error: {error}", err=True)
    code = EXIT_FAILURE if isinstance(error, ConsistencyError) else EXIT_USAGE
    sys.exit(code)


def _progress(verbose: int) -> Emitter:
    events = Emitter(emitterIsEnabled=verbose > 0)
    events.on(SUITE_STARTED, lambda name: click.echo(f"-> {name} :: started", err=True))
    events.on(
        SUITE_FINISHED,
        lambda name, reports: click.echo(f"-> {name} :: {len(reports)} reports", err=True),
    )
    events.on(CLAIM_FAILED, lambda claimId: click.echo(f"-> failed :: {claimId}", err=True))
    return events


@click.group()
@click.option("-v", "--verbose", count=True, help="More diagnostics on stderr (-vv for debug).")
@click.pass_context
def cli(ctx, verbose):
    """Re-derives and checks the finite claims behind the non-unimodality of d_k(p)."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    _configure_logging(verbose)
    try:
        settings.get()
    except ConfigError as e:
        _fail(e)


@cli.command()
@click.argument("suite", type=click.Choice(("all",) + SUITE_ORDER))
@click.option("--sieve-limit", type=click.IntRange(min=2), default=None,
              help="Prime table bound; defaults to what the suites need.")
@click.option("--precision", callback=_precision, default=None,
              help="Interval width for transcendental checks, e.g. 1e-9.")
@click.option("--format", "reportFormat", type=click.Choice(FORMATS), default="text",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the report here instead of stdout.")
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--mode", type=click.Choice(("thread", "process")), default=None)
@click.pass_context
def verify(ctx, suite, sieve_limit, precision, reportFormat, out, workers, mode):
    """Runs one suite, or all of them."""
    selected = SUITE_ORDER if suite == "all" else (suite,)
    config = RunConfig(
        sieve_limit=sieve_limit,
        precision=precision,
        report_format=reportFormat,
        output_path=out,
        selected_suites=selected,
        workers=workers or settings.workers,
        mode=mode or settings.workerMode,
    )
    logger.info("Verify :: %s with %d %s worker(s)", ", ".join(selected), config.workers, config.mode)
    try:
        result = run(config, _progress(ctx.obj["verbose"]))
    except VerificationError as e:
        _fail(e)
    if out is None:
        click.echo(render(result.reports, reportFormat), nl=False)
    for line in result.summaries:
        click.echo(line, err=True)
    if result.first_failure is not None:
        click.echo(f"FAILED {result.first_failure}", err=True)
        sys.exit(EXIT_FAILURE)


@cli.command("crt-demo")
@click.option("--q", "q", type=int, required=True, help="Prime q >= 13.")
@click.option("--scan/--no-scan", default=True, show_default=True,
              help="Scan (4P, 8P] for the smaller later gap when within the scan cap.")
@click.option("--format", "reportFormat", type=click.Choice(FORMATS), default="text",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the block listing here.")
def crt_demo_command(q, scan, reportFormat, out):
    """Builds and checks the CRT composite block for one prime q."""
    try:
        report, artifact = crt_demo(q, scan=scan)
    except VerificationError as e:
        _fail(e)
    click.echo(render([report], reportFormat), nl=False)
    if out is not None:
        write_report(artifact, out)
    if not report.passed:
        click.echo(f"FAILED {report.firstFailure()}", err=True)
        sys.exit(EXIT_FAILURE)


@cli.command("explain")
@click.argument("claim_id")
@click.option("--precision", callback=_precision, default=None)
def explain_command(claim_id, precision):
    """Shows the values, enclosures and margin behind one claim id."""
    try:
        text = explain(claim_id, RunConfig(precision=precision))
    except VerificationError as e:
        _fail(e)
    click.echo(text, nl=False)


def main():
    cli(prog_name="dkverify")
