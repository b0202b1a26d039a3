import argparse
from pathlib import Path
from typing import Any

from genergy.cli.output import emit
from genergy.core.telemetry import get_logger
from genergy.models.census import ExportFormat, GraphSource
from genergy.models.cli import CliConfig, OutputFormat
from genergy.services.census import census, export, reference_mismatches, table_report
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)


def order_range(text: str) -> tuple[int, int]:
    """Parse "A..B" into (A, B)."""
    first, sep, last = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    try:
        return int(first), int(last)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from exc


def register(subparsers: Any, parents: list[argparse.ArgumentParser]) -> None:
    parser = subparsers.add_parser(
        "census",
        parents=parents,
        help="Count the connected graphs of each order in G1..G4",
    )
    orders = parser.add_mutually_exclusive_group()
    orders.add_argument("--n", type=int, help="Order")
    orders.add_argument("--n-range", type=order_range, help="Inclusive order range A..B")
    parser.add_argument("--source", default="builtin", help="builtin (default) or a graph6 file")
    parser.add_argument("--jobs", type=int, help="Worker processes (default: GENERGY_JOBS or CPU count)")
    parser.add_argument("--list-classes", type=Path, help="Write sorted per-class graph6 listings here")
    parser.add_argument("--ratios-out", type=Path, help="Also write the ratio CSV here")
    parser.add_argument("--progress", action="store_true", help="Progress bar on stderr")
    parser.set_defaults(run=run, config_fields=config_fields)


def config_fields(args: argparse.Namespace) -> dict[str, Any]:
    if args.source == "builtin":
        return {"source": GraphSource.builtin}
    return {"source": GraphSource.file, "input_path": Path(args.source)}


def run(config: CliConfig) -> int:
    """Run the census for every requested order and print the tables.
    Raises:
        CensusIntegrityError: If any graph broke an invariant (exit 3).
    """
    rows = []
    for n in config.orders:
        result = census(
            n,
            source=config.source,
            path=config.input_path,
            tol=config.tol,
            workers=config.jobs,
            listing_dir=config.list_classes,
            progress=config.progress,
        )
        rows.append(result.row)

    if config.source is GraphSource.builtin:
        mismatched = reference_mismatches(rows)
        if mismatched:
            logger.warning(
                "Counts differ from the reference census",
                extra={"orders": mismatched, "tol_abs": config.tol.eps_abs, **_trace_attrs()},
            )

    if config.ratios_out is not None:
        export(rows, ExportFormat.ratios_csv, config.ratios_out)

    if config.fmt is OutputFormat.json:
        text = export(rows, ExportFormat.json)
    elif config.fmt is OutputFormat.csv:
        text = export(rows, ExportFormat.csv)
    else:
        text = table_report(rows)
    emit(text, config.out)
    return 0
