import sys
from pathlib import Path
from typing import Optional

from genergy.core.exceptions import ExportError
from genergy.core.telemetry import get_logger
from genergy.models.census import ToleranceEcho
from genergy.models.classify import ToleranceConfig
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)


def emit(text: str, out: Optional[Path] = None) -> None:
    """Write command output to stdout, or to out when given.
    Raises:
        ExportError: If out cannot be written.
    """
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as exc:
        logger.exception("Output write failed", extra={"path": str(out), **_trace_attrs()})
        raise ExportError(str(out), exc.strerror or str(exc)) from exc
    logger.info("Output written", extra={"path": str(out), **_trace_attrs()})


def tolerance_echo(tol: ToleranceConfig) -> ToleranceEcho:
    return ToleranceEcho(abs=tol.eps_abs, rel=tol.eps_rel)


def tolerance_line(tol: ToleranceConfig) -> str:
    return f"tolerance: abs={tol.eps_abs:g} rel={tol.eps_rel:g}\n"
