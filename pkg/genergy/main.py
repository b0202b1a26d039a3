import sys
from typing import Optional, Sequence

from genergy.cli.router import build_parser, to_config
from genergy.core.config import settings
from genergy.core.exceptions import GenergyError
from genergy.core.telemetry import configure_logging, get_logger
from genergy.utils.trace import _trace_attrs, traced_span

logger = get_logger(__name__)


def _level(verbosity: int) -> str:
    if verbosity >= 2:
        return "DEBUG"
    if verbosity == 1:
        return "INFO"
    return settings.LOG_LEVEL


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one command and map domain errors to exit codes.
    Exit codes: 0 success, 1 usage or parse error, 2 disconnected input,
    3 integrity failure.
    """
    try:
        args = build_parser().parse_args(argv)
        config = to_config(args)
        configure_logging(_level(config.verbosity), config.log_format)
        logger.info("Command started", extra={"command": config.command, **_trace_attrs()})
        with traced_span(f"cli.{config.command}"):
            return args.run(config)
    except GenergyError as exc:
        logger.debug(
            "Command failed",
            extra={"error": type(exc).__name__, "exit_code": exc.exit_code, **_trace_attrs()},
        )
        print(f"genergy: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
