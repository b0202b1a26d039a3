import argparse
import csv
import io
from pathlib import Path
from typing import Any, Optional

from genergy.cli.output import emit, tolerance_echo, tolerance_line
from genergy.core.exceptions import UsageError
from genergy.core.telemetry import get_logger
from genergy.models.classify import ClassifiedGraph
from genergy.models.cli import ClassifyOutput, CliConfig, OutputFormat
from genergy.models.closedform import Family, FamilyPrediction
from genergy.models.graph import Graph
from genergy.services.classify import classify_graph
from genergy.services.closedform import PREDICTION_MIN_ORDER, family_graph, predicted_subclass
from genergy.services.enumerate import read_graph6_stream
from genergy.services.graph6 import parse_graph6, to_graph6
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)

PROFILE_ROWS = (
    ("E", "energy"),
    ("LE", "laplacian_energy"),
    ("LEL", "lel"),
    ("IE", "ie"),
    ("pi", "pi"),
    ("pi*", "pi_star"),
)


def register(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "classify",
        parents=parents,
        help="Profile one connected graph and place it in G1..G4",
    )
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--graph6", help="graph6 string")
    source.add_argument("--file", dest="input_path", type=Path, help="graph6 file; its first graph is used")
    source.add_argument("--family", choices=[f.value for f in Family], help="Named family, with --n")
    parser.add_argument("--n", type=int, help="Order for --family")
    parser.set_defaults(run=run, config_fields=lambda args: {})


def _load(config: CliConfig) -> tuple[Graph, Optional[FamilyPrediction]]:
    if config.family is not None:
        g = family_graph(config.family, config.n)
        prediction = None
        if config.n >= PREDICTION_MIN_ORDER[config.family]:
            prediction = predicted_subclass(config.family, config.n)
        return g, prediction
    if config.graph6 is not None:
        return parse_graph6(config.graph6), None
    first = next(iter(read_graph6_stream(config.input_path)), None)
    if first is None:
        raise UsageError(f"no graph in {config.input_path}")
    return first, None


def _table(result: ClassifiedGraph, prediction: Optional[FamilyPrediction], config: CliConfig) -> str:
    p = result.profile
    lines = [
        f"{'graph6':<12}{result.graph6}",
        f"{'n':<12}{p.n}",
        f"{'m':<12}{p.m}",
    ]
    lines += [f"{label:<12}{getattr(p, field):.12f}" for label, field in PROFILE_ROWS]
    lines.append(f"{'subclass':<12}{result.subclass.value}")
    flags = ", ".join(flag.label for flag in result.boundary_flags)
    lines.append(f"{'boundary':<12}{flags or '-'}")
    lines.append(f"{'borderline':<12}{'yes' if result.borderline else 'no'}")
    if prediction is not None:
        lines.append(f"{'predicted':<12}{prediction.predicted.value}")
        if prediction.note:
            lines.append(f"{'note':<12}{prediction.note}")
    return "\n".join(lines) + "\n" + tolerance_line(config.tol)


def _csv(result: ClassifiedGraph) -> str:
    p = result.profile
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["graph6", "n", "m", *(field for _, field in PROFILE_ROWS), "subclass", "boundary", "borderline"])
    writer.writerow(
        [
            result.graph6,
            p.n,
            p.m,
            *(f"{getattr(p, field):.12f}" for _, field in PROFILE_ROWS),
            result.subclass.value,
            ";".join(flag.label for flag in result.boundary_flags),
            int(result.borderline),
        ]
    )
    return buf.getvalue()


def run(config: CliConfig) -> int:
    """Classify one graph and print its profile.
    Raises:
        DisconnectedGraphError: If the graph is disconnected (exit 2).
    """
    g, prediction = _load(config)
    result = classify_graph(g, config.tol, graph6=to_graph6(g))
    logger.info(
        "Graph classified",
        extra={"graph6": result.graph6, "subclass": result.subclass.value, **_trace_attrs()},
    )
    if prediction is not None and prediction.predicted is not result.subclass:
        logger.warning(
            "Class differs from family prediction",
            extra={"graph6": result.graph6, "predicted": prediction.predicted.value, **_trace_attrs()},
        )

    if config.fmt is OutputFormat.json:
        text = (
            ClassifyOutput(
                graph6=result.graph6,
                profile=result.profile,
                subclass=result.subclass,
                boundary_flags=[flag.label for flag in result.boundary_flags],
                borderline=result.borderline,
                tolerance=tolerance_echo(config.tol),
                prediction=prediction,
            ).model_dump_json(indent=2)
            + "\n"
        )
    elif config.fmt is OutputFormat.csv:
        text = _csv(result)
    else:
        text = _table(result, prediction, config)
    emit(text, config.out)
    return 0
