from multiprocessing import Pool
from pathlib import Path
from typing import Annotated, Iterator, Optional, Sequence

from genergy.core.config import settings
from genergy.core.exceptions import (
    Graph6ParseError,
    Graph6StreamError,
    GraphValidationError,
    OrderLimitError,
    UsageError,
)
from genergy.core.telemetry import get_logger
from genergy.models.graph import Graph
from genergy.services.graph import is_connected, relabel
from genergy.services.graph6 import HEADER, MAX_ORDER, parse_graph6, to_graph6
from genergy.utils.trace import _trace_attrs, traced_span

logger = get_logger(__name__)

BRUTE_FORCE_MAX_ORDER = 6
# Below this order the pool start-up costs more than the augmentation itself.
PARALLEL_MIN_ORDER = 7

_forms_cache: dict[int, tuple[str, ...]] = {}


def _refine(nbrs: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Iterate neighbourhood colour refinement to a stable partition.
    Colours are ranks of (old colour, sorted neighbour colours), so cells keep
    their relative order and the result is labelling-invariant.
    """
    cells = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(len(colors))]
        rank = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        colors = [rank[sig] for sig in sigs]
        if len(rank) == cells:
            return colors
        cells = len(rank)


def _twins(rows: Sequence[int], u: int, v: int) -> bool:
    return (rows[u] & ~(1 << v)) == (rows[v] & ~(1 << u))


def _search(g: Graph, nbrs: Sequence[Sequence[int]], colors: list[int], best: list[str]) -> None:
    n = g.n
    if len(set(colors)) == n:
        form = to_graph6(relabel(g, colors))
        if not best or form < best[0]:
            best[:] = [form]
        return

    target = min(c for c in set(colors) if colors.count(c) > 1)
    chosen: list[int] = []
    for v in (w for w in range(n) if colors[w] == target):
        # Swapping twins is an automorphism fixing everything else: same leaves.
        if any(_twins(g.rows, u, v) for u in chosen):
            continue
        chosen.append(v)
        keys = [(colors[w], 0 if w == v else 1) for w in range(n)]
        rank = {key: i for i, key in enumerate(sorted(set(keys)))}
        _search(g, nbrs, _refine(nbrs, [rank[key] for key in keys]), best)


def canonical_form(g: Annotated[Graph, "Graph"]) -> str:
    """graph6 of the canonical relabelling of g.
    Individualisation-refinement: refine colours, branch on every vertex of
    the first non-singleton cell, and keep the lexicographically smallest
    adjacency string over all discrete leaves.
    """
    if g.n > MAX_ORDER:
        raise OrderLimitError("canonical_form", g.n, MAX_ORDER)
    nbrs = [g.neighbors(v) for v in range(g.n)]
    best: list[str] = []
    _search(g, nbrs, _refine(nbrs, [0] * g.n), best)
    return best[0]


def _extend(parent_forms: Sequence[str]) -> set[str]:
    """Canonical forms of every one-vertex connected extension of the parents."""
    forms: set[str] = set()
    for text in parent_forms:
        parent = parse_graph6(text)
        k = parent.n
        for mask in range(1, 1 << k):
            rows = [row | (mask >> v & 1) << k for v, row in enumerate(parent.rows)]
            rows.append(mask)
            forms.add(canonical_form(Graph.trusted(k + 1, rows)))
    return forms


def _chunks(items: Sequence[str], size: int) -> list[Sequence[str]]:
    return [items[i : i + size] for i in range(0, len(items), size)]


def connected_graph6(n: Annotated[int, "Order"], jobs: Optional[int] = None) -> tuple[str, ...]:
    """Sorted canonical graph6 strings of all connected graphs of order n.
    Every connected graph on n >= 2 vertices has a non-cut vertex, so joining
    a new vertex to each nonempty vertex subset of each connected
    (n-1)-graph reaches every isomorphism class.
    Raises:
        OrderLimitError: If n exceeds settings.MAX_ENUM_ORDER.
    """
    if n < 1:
        raise GraphValidationError(f"order must be at least 1, got {n}")
    if n > settings.MAX_ENUM_ORDER:
        raise OrderLimitError("connected_graphs", n, settings.MAX_ENUM_ORDER)
    if n in _forms_cache:
        return _forms_cache[n]
    if n == 1:
        _forms_cache[1] = (to_graph6(Graph.trusted(1, [0])),)
        return _forms_cache[1]

    parents = connected_graph6(n - 1, jobs)
    jobs = jobs or settings.JOBS
    with traced_span("enumerate.connected_graphs", n=n, parents=len(parents)):
        if jobs and jobs > 1 and n >= PARALLEL_MIN_ORDER:
            size = max(1, len(parents) // (jobs * 4))
            forms: set[str] = set()
            with Pool(processes=jobs) as pool:
                for part in pool.imap_unordered(_extend, _chunks(parents, size)):
                    forms |= part
        else:
            forms = _extend(parents)
        result = tuple(sorted(forms))
        logger.info(
            "Enumerated connected graphs",
            extra={"n": n, "count": len(result), "parents": len(parents), **_trace_attrs()},
        )
    _forms_cache[n] = result
    return result


def connected_graphs(n: Annotated[int, "Order"], jobs: Optional[int] = None) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, sorted by canonical form."""
    for text in connected_graph6(n, jobs):
        yield parse_graph6(text)


def brute_force_classes(n: Annotated[int, "Order"]) -> tuple[str, ...]:
    """Canonical forms of connected graphs found by trying every labelled graph.
    Independent of the augmentation; only feasible for small n.
    """
    if n > BRUTE_FORCE_MAX_ORDER:
        raise OrderLimitError("brute force enumeration", n, BRUTE_FORCE_MAX_ORDER)
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    forms: set[str] = set()
    for mask in range(1 << len(pairs)):
        rows = [0] * n
        for bit, (i, j) in enumerate(pairs):
            if mask >> bit & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        g = Graph.trusted(n, rows)
        if is_connected(g):
            forms.add(canonical_form(g))
    return tuple(sorted(forms))


def read_graph6_stream(
    path: Annotated[str | Path, "graph6 file"],
    fail_fast: bool = True,
    errors: Optional[list[Graph6StreamError]] = None,
) -> Iterator[Graph]:
    """Graphs of a one-per-line graph6 file, in file order.
    Blank lines and a ">>graph6<<" header are skipped. Disconnected graphs are
    passed through.
    Args:
        path: File to read.
        fail_fast: Raise on the first bad line; otherwise log it, append it
            to errors and continue.
        errors: Collector for bad lines when fail_fast is False.
    Raises:
        UsageError: If the file cannot be opened.
        Graph6StreamError: Naming the line number of a bad line.
    """
    try:
        handle = open(path, encoding="ascii", errors="surrogateescape")
    except OSError as exc:
        logger.error("Cannot open graph6 file", extra={"path": str(path), **_trace_attrs()})
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}", path=str(path)) from exc
    with handle:
        for line_no, line in enumerate(handle, start=1):
            text = line.rstrip("\r\n")
            if not text or text == HEADER:
                continue
            try:
                yield parse_graph6(text)
            except Graph6ParseError as exc:
                error = Graph6StreamError(line_no, exc, str(path))
                if fail_fast:
                    logger.error(
                        "Bad graph6 line",
                        extra={"path": str(path), "line": line_no, **_trace_attrs()},
                    )
                    raise error from exc
                logger.warning(
                    "Skipping bad graph6 line",
                    extra={"path": str(path), "line": line_no, "reason": exc.reason, **_trace_attrs()},
                )
                if errors is not None:
                    errors.append(error)
