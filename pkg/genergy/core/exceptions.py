from typing import Any, Optional


class GenergyError(Exception):
    """Base class for all domain errors.
    Attributes:
        exit_code (int): Process exit status the CLI reports for this error.
        detail (dict): Structured context, safe to log or serialize.
    """

    exit_code: int = 1

    def __init__(self, message: str, **detail: Any) -> None:
        super().__init__(message)
        self.detail = detail


class UsageError(GenergyError):
    """Invalid command-line usage."""


class GraphValidationError(GenergyError):
    """Adjacency data that does not describe a simple undirected graph."""


class Graph6ParseError(GenergyError):
    """Malformed graph6 text.
    Attributes:
        offset (int): Zero-based byte offset of the first offending byte.
    """

    def __init__(self, offset: int, reason: str) -> None:
        super().__init__(f"graph6 parse error at byte {offset}: {reason}", offset=offset)
        self.offset = offset
        self.reason = reason


class Graph6StreamError(GenergyError):
    """A graph6 file line that failed to parse.
    Attributes:
        line_no (int): One-based line number in the file.
    """

    def __init__(self, line_no: int, cause: Graph6ParseError, path: Optional[str] = None) -> None:
        where = f"{path}:" if path else "line "
        super().__init__(f"{where}{line_no}: {cause}", line_no=line_no, path=path)
        self.line_no = line_no
        self.cause = cause


class FamilyRangeError(GenergyError):
    """Order outside the range a graph family or theorem covers."""

    def __init__(self, family: str, n: int, minimum: int) -> None:
        super().__init__(
            f"{family} requires n >= {minimum}, got n={n}",
            family=family,
            n=n,
            minimum=minimum,
        )


class DisconnectedGraphError(GenergyError):
    """Classification requested for a disconnected graph."""

    exit_code = 2

    def __init__(self, graph6: str) -> None:
        super().__init__(
            f"graph {graph6!r} is disconnected; subclasses are defined for connected graphs only",
            graph6=graph6,
        )


class IntegrityError(GenergyError):
    """A computed result broke a proven mathematical invariant."""

    exit_code = 3


class SpectrumKindError(IntegrityError):
    def __init__(self, expected: str, actual: str) -> None:
        super().__init__(
            f"expected a {expected} spectrum, got {actual}",
            expected=expected,
            actual=actual,
        )


class ConvergenceError(IntegrityError):
    """Jacobi sweeps exhausted before the off-diagonal norm vanished."""

    def __init__(self, sweeps: int, off_norm: float, threshold: float) -> None:
        super().__init__(
            f"Jacobi did not converge in {sweeps} sweeps: off-diagonal norm {off_norm:.3e} > {threshold:.3e}",
            sweeps=sweeps,
            off_norm=off_norm,
            threshold=threshold,
        )
        self.off_norm = off_norm


class SpectrumIntegrityError(IntegrityError):
    def __init__(self, kind: str, check: str, value: float) -> None:
        super().__init__(
            f"{kind} spectrum failed {check} (value {value:.3e})",
            kind=kind,
            check=check,
            value=value,
        )


class ChainIntegrityError(IntegrityError):
    """The inequality chain pi* <= LEL <= IE <= pi, E <= pi does not hold."""

    def __init__(self, report: Any, graph6: Optional[str] = None) -> None:
        names = ", ".join(v.relation for v in report.violations)
        prefix = f"{graph6}: " if graph6 else ""
        super().__init__(f"{prefix}chain violated: {names}", graph6=graph6)
        self.report = report
        self.graph6 = graph6


class CensusIntegrityError(IntegrityError):
    """Census finished but some graphs broke an invariant."""

    def __init__(self, n: int, violations: list[tuple[str, str]]) -> None:
        forms = ", ".join(g6 for g6, _ in violations[:10])
        more = "" if len(violations) <= 10 else f" (+{len(violations) - 10} more)"
        super().__init__(
            f"census n={n}: {len(violations)} integrity violation(s): {forms}{more}",
            n=n,
            violations=violations,
        )
        self.violations = violations


class DegenerateDenominatorError(IntegrityError):
    """sin(alpha/2) vanishes, so the closed-form trigonometric sum is undefined."""

    def __init__(self, alpha: float) -> None:
        super().__init__(f"sin(alpha/2) ~ 0 for alpha={alpha!r}", alpha=alpha)
        self.alpha = alpha


class InsufficientTrendError(GenergyError):
    def __init__(self, rows: int) -> None:
        super().__init__(f"a trend needs at least 2 census rows, got {rows}", rows=rows)


class ExportError(GenergyError):
    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"cannot write {path}: {reason}", path=path)
        self.path = path


class OrderLimitError(GenergyError):
    """Order above what an exhaustive procedure is allowed to handle."""

    def __init__(self, what: str, n: int, maximum: int) -> None:
        super().__init__(
            f"{what} supports n <= {maximum}, got n={n}",
            what=what,
            n=n,
            maximum=maximum,
        )
