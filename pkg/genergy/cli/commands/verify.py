import argparse
import csv
import io
from typing import Any

from genergy.cli.output import emit, tolerance_echo, tolerance_line
from genergy.core.exceptions import IntegrityError
from genergy.core.telemetry import get_logger
from genergy.models.cli import CliConfig, OutputFormat, VerifyOutput
from genergy.models.verify import VerifyReport
from genergy.services import verify
from genergy.services.census import trend_table
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)

SUITES = ("theorems", "lemma", "conjecture", "chain")


def register(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "verify",
        parents=parents,
        help="Run the family theorem, trigonometric sum, census trend and chain checks",
    )
    parser.add_argument("--theorems", action="store_true", help="Family predictions and closed forms")
    parser.add_argument("--lemma", action="store_true", help="Closed trigonometric sums")
    parser.add_argument("--conjecture", action="store_true", help="Census counts and ratio trend")
    parser.add_argument("--chain", action="store_true", help="Chain, threshold and tolerance properties")
    parser.add_argument("--max-n", type=int, help="Largest order (theorems: 200, census suites: 8)")
    parser.add_argument("--samples", type=int, default=1000, help="Random triples for --lemma")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed for --lemma")
    parser.add_argument("--jobs", type=int, help="Worker processes")
    parser.add_argument("--eigen-method", choices=["jacobi", "lapack"], help="Eigensolver for --theorems")
    parser.set_defaults(run=run, config_fields=config_fields)


def config_fields(args: argparse.Namespace) -> dict[str, Any]:
    return {"suites": tuple(name for name in SUITES if getattr(args, name))}


def _run_suite(name: str, config: CliConfig) -> VerifyReport:
    max_n = config.max_n_for(name)
    if name == "theorems":
        return verify.theorems(max_n, config.tol, config.eigen_method, config.jobs)
    if name == "lemma":
        return verify.lemma(config.samples, config.seed)
    if name == "conjecture":
        return verify.conjecture(max_n, config.jobs, config.tol)
    return verify.chain(max_n, config.jobs, config.tol)


def _table(reports: list[VerifyReport], config: CliConfig) -> str:
    out = []
    for report in reports:
        out.append(f"== {report.suite}")
        for item in report.items:
            status = "PASS" if item.passed else "FAIL"
            out.append(f"{status}  {item.name}" + (f"  {item.detail}" if item.detail else ""))
        if report.max_error is not None:
            out.append(f"max error {report.max_error:.3e}")
        if report.trend is not None:
            out.append(trend_table(report.trend).rstrip("\n"))
        out.append("")
    failed = sum(len(report.failures) for report in reports)
    out.append("all checks passed" if not failed else f"{failed} check(s) failed")
    return "\n".join(out) + "\n" + tolerance_line(config.tol)


def _csv(reports: list[VerifyReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["suite", "name", "passed", "detail"])
    for report in reports:
        for item in report.items:
            writer.writerow([report.suite, item.name, int(item.passed), item.detail or ""])
    return buf.getvalue()


def run(config: CliConfig) -> int:
    """Run the selected suites; exit 0 iff every check passed."""
    reports = [_run_suite(name, config) for name in config.suites]
    passed = all(report.passed for report in reports)
    for report in reports:
        for item in report.failures:
            logger.error(
                "Verification failed",
                extra={"suite": report.suite, "item": item.name, "detail": item.detail, **_trace_attrs()},
            )

    if config.fmt is OutputFormat.json:
        text = (
            VerifyOutput(passed=passed, tolerance=tolerance_echo(config.tol), reports=reports).model_dump_json(indent=2)
            + "\n"
        )
    elif config.fmt is OutputFormat.csv:
        text = _csv(reports)
    else:
        text = _table(reports, config)
    emit(text, config.out)
    return 0 if passed else IntegrityError.exit_code
