import argparse
from pathlib import Path
from typing import NoReturn

from pydantic import ValidationError

from genergy.cli.commands import census, classify, enumerate, verify
from genergy.core.config import settings
from genergy.core.exceptions import UsageError
from genergy.core.telemetry import get_logger
from genergy.models.classify import ToleranceConfig
from genergy.models.cli import CliConfig, OutputFormat
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)

COMMANDS = (classify, census, enumerate, verify)


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that reports usage errors as UsageError (exit 1)."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _common_options() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    common.add_argument("--log-format", choices=["text", "json"], help="Log format on stderr")
    common.add_argument("--tol-abs", type=float, default=settings.TOL_ABS, help="Absolute tolerance")
    common.add_argument("--tol-rel", type=float, default=settings.TOL_REL, help="Relative tolerance")
    common.add_argument(
        "--format",
        dest="fmt",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.table.value,
        help="Output format",
    )
    common.add_argument("--out", type=Path, help="Write output here instead of stdout")
    return common


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="genergy",
        description="Graph energy subclasses: classification, census and family theorems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    parents = [_common_options()]
    try:
        for command in COMMANDS:
            command.register(subparsers, parents)
    except Exception as exc:
        logger.exception("Failed to register commands", extra=_trace_attrs())
        raise RuntimeError("Command registration failed") from exc
    return parser


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    where = ".".join(str(part) for part in error.get("loc", ()))
    message = error["msg"].removeprefix("Value error, ")
    return f"{where}: {message}" if where else message


def to_config(args: argparse.Namespace) -> CliConfig:
    """Validate parsed arguments into a CliConfig.
    Raises:
        UsageError: If the combination of flags is invalid.
    """
    fields = {k: v for k, v in vars(args).items() if k in CliConfig.model_fields and v is not None}
    fields.update(args.config_fields(args))
    try:
        return CliConfig(
            tol=ToleranceConfig(eps_abs=args.tol_abs, eps_rel=args.tol_rel),
            verbosity=args.verbose,
            **fields,
        )
    except ValidationError as exc:
        raise UsageError(_first_error(exc)) from exc
