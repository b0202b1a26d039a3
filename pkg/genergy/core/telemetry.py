import logging
import sys
from typing import Annotated, Optional

from opentelemetry import metrics, trace
from opentelemetry.sdk.metrics import MeterProvider
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor
from pythonjsonlogger.json import JsonFormatter

from genergy.core.config import settings

TEXT_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(funcName)s - Line %(lineno)d - %(message)s"
JSON_FORMAT = "%(asctime)s %(levelname)s %(name)s %(funcName)s %(lineno)d %(message)s"

ROOT_LOGGER = "genergy"

# Declare resource once for all providers
resource = Resource(attributes={"service.name": settings.PROJECT_NAME})

_handler: Optional[logging.Handler] = None


def _otlp_url(signal: str) -> str:
    return f"{str(settings.OTLP_ENDPOINT).rstrip('/')}/v1/{signal}"


def _otlp_headers() -> dict[str, str]:
    if not settings.OTLP_TOKEN:
        return {}
    return {"Authorization": f"Basic {settings.OTLP_TOKEN}"}


def _init_tracing() -> None:
    provider = TracerProvider(resource=resource)
    if settings.OTLP_ENDPOINT:
        try:
            from opentelemetry.exporter.otlp.proto.http.trace_exporter import (
                OTLPSpanExporter,
            )

            provider.add_span_processor(
                BatchSpanProcessor(
                    OTLPSpanExporter(
                        endpoint=_otlp_url("traces"),
                        headers=_otlp_headers(),
                    )
                )
            )
        except Exception as exc:
            raise SystemExit("[OTel Tracing Init Failure]") from exc
    trace.set_tracer_provider(provider)


def _init_metrics() -> None:
    readers = []
    if settings.OTLP_ENDPOINT:
        try:
            from opentelemetry.exporter.otlp.proto.http.metric_exporter import (
                OTLPMetricExporter,
            )
            from opentelemetry.sdk.metrics.export import PeriodicExportingMetricReader

            readers.append(
                PeriodicExportingMetricReader(
                    OTLPMetricExporter(
                        endpoint=_otlp_url("metrics"),
                        headers=_otlp_headers(),
                    )
                )
            )
        except Exception as exc:
            raise SystemExit("[OTel Metrics Init Failure]") from exc
    metrics.set_meter_provider(MeterProvider(resource=resource, metric_readers=readers))


_init_tracing()
_init_metrics()

tracer = trace.get_tracer(ROOT_LOGGER)
meter = metrics.get_meter(ROOT_LOGGER)
graphs_classified = meter.create_counter(
    "genergy.graphs_classified",
    unit="1",
    description="Graphs classified by census runs",
)


def configure_logging(
    level: Annotated[Optional[str], "Level name"] = None,
    fmt: Annotated[Optional[str], "text or json"] = None,
) -> logging.Handler:
    """Install the stderr handler on the package logger.
    Calling it again replaces the previous handler, so CLI flags can override
    whatever was configured at import time.
    Args:
        level: Logging level name; defaults to settings.LOG_LEVEL.
        fmt: "text" or "json"; defaults to settings.LOG_FORMAT.
    Returns:
        logging.Handler: The installed handler.
    """
    global _handler
    level = (level or settings.LOG_LEVEL).upper()
    fmt = fmt or settings.LOG_FORMAT

    root = logging.getLogger(ROOT_LOGGER)
    if _handler is not None:
        root.removeHandler(_handler)

    handler = logging.StreamHandler(sys.stderr)
    if fmt == "json":
        handler.setFormatter(JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    root.addHandler(handler)
    root.setLevel(level)
    _handler = handler
    return handler


def get_logger(
    module_name: Optional[str] = None,
) -> Annotated[logging.Logger, "Logger instance for the specified module"]:
    """Get a logger instance for the specified module.
    If no module name is provided, it defaults to the package logger.
    """
    if _handler is None:
        configure_logging()
    return logging.getLogger(module_name or ROOT_LOGGER)
