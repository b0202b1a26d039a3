from contextlib import contextmanager
from typing import Any, Iterator

from opentelemetry.trace import Span, get_current_span

from genergy.core.telemetry import get_logger, tracer

logger = get_logger(__name__)


def _trace_attrs() -> dict[str, str]:
    """Get the current trace attributes.
    Returns:
        dict: A dictionary containing the trace ID and span ID.
    """
    ctx = get_current_span().get_span_context()
    if not ctx or not ctx.is_valid:
        return {"trace_id": "undefined", "span_id": "undefined"}
    return {
        "trace_id": format(ctx.trace_id, "032x"),
        "span_id": format(ctx.span_id, "016x"),
    }


@contextmanager
def traced_span(name: str, **attributes: Any) -> Iterator[Span]:
    """Run a block inside a named span and log its failure, if any.
    Attribute values must be OpenTelemetry-compatible scalars.
    """
    with tracer.start_as_current_span(name, attributes=attributes) as span:
        try:
            yield span
        except Exception as exc:
            span.record_exception(exc)
            logger.debug(
                "Span failed",
                extra={"span": name, "error": str(exc), **_trace_attrs()},
            )
            raise
