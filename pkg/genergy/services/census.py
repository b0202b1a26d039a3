import csv
import io
import os
import sys
from fractions import Fraction
from functools import partial
from multiprocessing import Pool
from pathlib import Path
from typing import Annotated, Iterable, Optional, Sequence

from tqdm import tqdm

from genergy.core.config import settings
from genergy.core.exceptions import (
    CensusIntegrityError,
    ExportError,
    InsufficientTrendError,
    IntegrityError,
    UsageError,
)
from genergy.core.telemetry import get_logger, graphs_classified
from genergy.models.census import (
    CLASSES,
    CensusDocument,
    CensusResult,
    CensusRow,
    ChunkTally,
    ConjectureReport,
    ExportFormat,
    GraphSource,
    RatioRow,
    ToleranceEcho,
    TrendRow,
    empty_counts,
)
from genergy.models.classify import Subclass, ToleranceConfig
from genergy.services.classify import classify_graph, default_tolerance
from genergy.services.enumerate import canonical_form, connected_graph6, read_graph6_stream
from genergy.services.graph import is_connected
from genergy.services.graph6 import parse_graph6, to_graph6
from genergy.utils.trace import _trace_attrs, traced_span

logger = get_logger(__name__)

CONJECTURED_LIMITS: dict[Subclass, float] = {
    Subclass.G1: 0.5,
    Subclass.G2: 0.5,
    Subclass.G3: 0.0,
    Subclass.G4: 0.0,
}

# Known per-order counts: n -> (total, G1, G2, G3, G4).
REFERENCE_COUNTS: dict[int, tuple[int, int, int, int, int]] = {
    1: (1, 1, 0, 0, 0),
    2: (1, 0, 0, 0, 1),
    3: (2, 0, 0, 1, 1),
    4: (6, 4, 0, 1, 1),
    5: (21, 12, 4, 4, 1),
    6: (112, 58, 39, 12, 3),
    7: (853, 440, 381, 28, 4),
    8: (11117, 5586, 5463, 59, 9),
}

CENSUS_HEADER = ("n", "total", "g1", "g2", "g3", "g4", "borderline")
RATIO_HEADER = ("n", "r1", "r2", "r3", "r4")
RATIO_DECIMALS = 6


def _classify_chunk(forms: Sequence[str], tol: ToleranceConfig, canonicalize: bool) -> ChunkTally:
    """Classify one chunk of graph6 strings.
    Runs in worker processes, so it must stay importable at module level.
    """
    counts = empty_counts()
    members: dict[Subclass, list[str]] = {c: [] for c in CLASSES}
    borderline = 0
    violations = []
    with traced_span("census.classify_chunk", size=len(forms)):
        for text in forms:
            g = parse_graph6(text)
            form = canonical_form(g) if canonicalize else text
            try:
                result = classify_graph(g, tol, graph6=form)
            except IntegrityError as exc:
                violations.append((form, str(exc)))
                continue
            counts[result.subclass] += 1
            members[result.subclass].append(form)
            borderline += result.borderline
    logger.debug("Chunk classified", extra={"size": len(forms), **_trace_attrs()})
    return ChunkTally(
        counts=counts,
        borderline=borderline,
        members={c: tuple(v) for c, v in members.items()},
        violations=tuple(violations),
    )


def _chunks(items: Sequence[str], size: int) -> list[Sequence[str]]:
    return [items[i : i + size] for i in range(0, len(items), size)]


def _file_forms(n: int, path: str | Path) -> tuple[list[str], int, int]:
    """graph6 strings of the connected order-n graphs in a file, plus skip counts."""
    forms = []
    disconnected = other_order = 0
    for g in read_graph6_stream(path):
        if g.n != n:
            other_order += 1
        elif not is_connected(g):
            disconnected += 1
        else:
            forms.append(g)
    if other_order or disconnected:
        logger.warning(
            "Skipped graphs from census input",
            extra={
                "path": str(path),
                "n": n,
                "skipped_disconnected": disconnected,
                "skipped_other_order": other_order,
                **_trace_attrs(),
            },
        )
    return [to_graph6(g) for g in forms], disconnected, other_order


def _write_listings(n: int, listings: dict[Subclass, tuple[str, ...]], directory: str | Path) -> None:
    try:
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        for label, forms in listings.items():
            target = out / f"n{n}_{label.value.lower()}.g6"
            target.write_text("".join(f"{form}\n" for form in forms), encoding="ascii")
    except OSError as exc:
        logger.exception("Listing write failed", extra={"path": str(directory), **_trace_attrs()})
        raise ExportError(str(directory), exc.strerror or str(exc)) from exc


def census(
    n: Annotated[int, "Order"],
    source: GraphSource = GraphSource.builtin,
    path: Optional[str | Path] = None,
    tol: Optional[ToleranceConfig] = None,
    workers: Optional[int] = None,
    listing_dir: Optional[str | Path] = None,
    progress: bool = False,
) -> CensusResult:
    """Classify every connected graph of order n and tally the subclasses.
    Chunks are classified in parallel and merged in any order; listings are
    sorted afterwards, so the result does not depend on the worker count.
    Args:
        n: Order.
        source: Builtin enumerator or a graph6 file.
        path: graph6 file when source is file.
        tol: Classification tolerance; settings defaults when omitted.
        workers: Processes; settings.JOBS, then the CPU count, when omitted.
        listing_dir: Write one sorted graph6 file per subclass here.
        progress: Show a progress bar on stderr.
    Raises:
        CensusIntegrityError: If any graph broke the chain or a spectrum check.
    """
    tol = tol or default_tolerance()
    workers = workers or settings.JOBS or os.cpu_count() or 1
    disconnected = other_order = 0

    with traced_span("census.run", n=n, source=source.value, workers=workers):
        logger.info("Census started", extra={"n": n, "source": source.value, "workers": workers, **_trace_attrs()})
        if source is GraphSource.file:
            if path is None:
                raise UsageError("file census needs a graph6 path")
            forms, disconnected, other_order = _file_forms(n, path)
        else:
            forms = list(connected_graph6(n, workers))

        chunks = _chunks(forms, settings.CHUNK_SIZE)
        task = partial(_classify_chunk, tol=tol, canonicalize=source is GraphSource.file)
        tally = ChunkTally()
        if workers > 1 and len(chunks) > 1:
            with Pool(processes=workers) as pool:
                parts = pool.imap_unordered(task, chunks)
                for part in tqdm(parts, total=len(chunks), desc=f"census n={n}", file=sys.stderr, disable=not progress):
                    tally = tally.merge(part)
        else:
            for chunk in tqdm(chunks, desc=f"census n={n}", file=sys.stderr, disable=not progress):
                tally = tally.merge(task(chunk))

        if tally.violations:
            violations = sorted(tally.violations)
            logger.error(
                "Census integrity violations",
                extra={"n": n, "count": len(violations), "graphs": [g6 for g6, _ in violations[:10]], **_trace_attrs()},
            )
            raise CensusIntegrityError(n, violations)

        for label in CLASSES:
            graphs_classified.add(tally.counts[label], {"n": n, "subclass": label.value})

        row = CensusRow(
            n=n,
            total=sum(tally.counts.values()),
            counts=tally.counts,
            source=source,
            tol=tol,
            borderline_count=tally.borderline,
            skipped_disconnected=disconnected,
            skipped_other_order=other_order,
        )
        listings = {label: tuple(sorted(tally.members[label])) for label in CLASSES}
        if listing_dir is not None:
            _write_listings(n, listings, listing_dir)
        logger.info(
            "Census finished",
            extra={"n": n, "total": row.total, "counts": {k.value: v for k, v in row.counts.items()}, **_trace_attrs()},
        )
    return CensusResult(row=row, listings=listings)


def run_census(
    n: Annotated[int, "Order"],
    source: GraphSource = GraphSource.builtin,
    path: Optional[str | Path] = None,
    tol: Optional[ToleranceConfig] = None,
    workers: Optional[int] = None,
    listing_dir: Optional[str | Path] = None,
) -> CensusRow:
    """Census counts for order n; see census() for the arguments."""
    return census(n, source, path, tol, workers, listing_dir).row


def census_rows(orders: Iterable[int], **kwargs) -> list[CensusRow]:
    return [census(n, **kwargs).row for n in orders]


def ratios(row: Annotated[CensusRow, "Census row"]) -> RatioRow:
    """Share of each subclass in the row's total.
    Raises:
        IntegrityError: If the row holds no graphs.
    """
    if row.total == 0:
        raise IntegrityError(f"n={row.n}: no graphs to take ratios of", n=row.n)
    return RatioRow(n=row.n, ratios={c: row.counts[c] / row.total for c in CLASSES})


def conjecture_report(rows: Annotated[Sequence[CensusRow], "Census rows"]) -> ConjectureReport:
    """Trend of the class shares towards the conjectured limits (1/2, 1/2, 0, 0).
    Purely descriptive: per-row ratios, change from the previous row, distance
    from the limits and the tail mass r3 + r4.
    Raises:
        InsufficientTrendError: With fewer than two rows.
    """
    if len(rows) < 2:
        raise InsufficientTrendError(len(rows))

    trend: list[TrendRow] = []
    previous: Optional[RatioRow] = None
    for row in rows:
        current = ratios(row)
        distance = {c: abs(current.ratios[c] - CONJECTURED_LIMITS[c]) for c in CLASSES}
        trend.append(
            TrendRow(
                n=row.n,
                ratios=current.ratios,
                deltas=None
                if previous is None
                else {c: current.ratios[c] - previous.ratios[c] for c in CLASSES},
                distance=distance,
                distance_total=sum(distance.values()),
                tail_mass=current.ratios[Subclass.G3] + current.ratios[Subclass.G4],
            )
        )
        previous = current

    start = len(trend) - 1
    while start > 0 and trend[start - 1].tail_mass > trend[start].tail_mass:
        start -= 1
    return ConjectureReport(
        limits=CONJECTURED_LIMITS,
        rows=tuple(trend),
        tail_mass_decreasing_from=trend[start].n if start < len(trend) - 1 else None,
    )


def format_ratio(count: int, total: int, decimals: int = RATIO_DECIMALS) -> str:
    """count/total rounded half-even from the exact fraction."""
    scale = 10**decimals
    q = round(Fraction(count, total) * scale)
    return f"{q // scale}.{q % scale:0{decimals}d}"


def _census_csv(rows: Sequence[CensusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CENSUS_HEADER)
    for row in rows:
        writer.writerow([row.n, row.total, *(row.counts[c] for c in CLASSES), row.borderline_count])
    return buf.getvalue()


def _ratio_csv(rows: Sequence[CensusRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RATIO_HEADER)
    for row in rows:
        if row.total == 0:
            raise IntegrityError(f"n={row.n}: no graphs to take ratios of", n=row.n)
        writer.writerow([row.n, *(format_ratio(row.counts[c], row.total) for c in CLASSES)])
    return buf.getvalue()


def census_document(rows: Sequence[CensusRow]) -> CensusDocument:
    tol = rows[0].tol if rows else default_tolerance()
    return CensusDocument(tolerance=ToleranceEcho(abs=tol.eps_abs, rel=tol.eps_rel), rows=tuple(rows))


def export(
    rows: Annotated[Sequence[CensusRow], "Census rows"],
    fmt: Annotated[ExportFormat, "Output format"],
    path: Optional[str | Path] = None,
) -> str:
    """Serialize census rows and optionally write them to path.
    Returns:
        str: The serialized text, identical for identical rows.
    Raises:
        ExportError: If path cannot be written.
    """
    if fmt is ExportFormat.csv:
        text = _census_csv(rows)
    elif fmt is ExportFormat.ratios_csv:
        text = _ratio_csv(rows)
    else:
        text = census_document(rows).model_dump_json(indent=2) + "\n"

    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            logger.exception("Export failed", extra={"path": str(path), **_trace_attrs()})
            raise ExportError(str(path), exc.strerror or str(exc)) from exc
        logger.info("Exported census", extra={"path": str(path), "format": fmt.value, **_trace_attrs()})
    return text


def table_report(rows: Annotated[Sequence[CensusRow], "Census rows"]) -> str:
    """Human-readable counts and ratios with orders as columns."""
    if not rows:
        return ""
    width = max(8, *(len(str(row.total)) + 2 for row in rows))

    def line(label: str, cells: Iterable[str]) -> str:
        return f"{label:<8}" + "".join(f"{cell:>{width}}" for cell in cells)

    out = [line("n", (str(row.n) for row in rows))]
    out.append(line("|Gn|", (str(row.total) for row in rows)))
    for c in CLASSES:
        out.append(line(f"|{c.value}|", (str(row.counts[c]) for row in rows)))
    out.append("")
    for c in CLASSES:
        out.append(
            line(
                f"r{c.value[1]}",
                (format_ratio(row.counts[c], row.total, 5) if row.total else "-" for row in rows),
            )
        )
    out.append("")
    out.append(line("border", (str(row.borderline_count) for row in rows)))
    tol = rows[0].tol
    out.append(f"tolerance: abs={tol.eps_abs:g} rel={tol.eps_rel:g}")
    return "\n".join(out) + "\n"


def reference_mismatches(rows: Iterable[CensusRow]) -> list[int]:
    """Orders whose counts differ from REFERENCE_COUNTS (orders without a reference are ignored)."""
    bad = []
    for row in rows:
        expected = REFERENCE_COUNTS.get(row.n)
        if expected and expected != (row.total, *(row.counts[c] for c in CLASSES)):
            bad.append(row.n)
    return bad




def trend_table(report: Annotated[ConjectureReport, "Trend"]) -> str:
    """Ratio trend with distances from the conjectured limits, one order per line."""
    header = f"{'n':>3}" + "".join(f"{name:>10}" for name in ("r1", "r2", "r3", "r4", "distance", "r3+r4"))
    out = [header]
    for row in report.rows:
        cells = [*(row.ratios[c] for c in CLASSES), row.distance_total, row.tail_mass]
        out.append(f"{row.n:>3}" + "".join(f"{value:>10.5f}" for value in cells))
    limits = ", ".join(f"{c.value}={report.limits[c]:g}" for c in CLASSES)
    out.append(f"limits: {limits}")
    if report.tail_mass_decreasing_from is not None:
        out.append(f"r3+r4 strictly decreasing from n={report.tail_mass_decreasing_from}")
    return "\n".join(out) + "\n"
