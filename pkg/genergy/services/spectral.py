from typing import Annotated, Optional

import numpy as np

from genergy.core.config import settings
from genergy.core.exceptions import ConvergenceError, SpectrumIntegrityError
from genergy.core.telemetry import get_logger
from genergy.models.graph import Graph
from genergy.models.spectral import Spectrum, SpectrumKind, SymmetricMatrix
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)


def _adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=float)
    for i, j in g.edges():
        a[i, j] = a[j, i] = 1.0
    return a


def adjacency_matrix(g: Annotated[Graph, "Graph"]) -> SymmetricMatrix:
    """A(G): 1 for adjacent pairs, 0 elsewhere, zero diagonal."""
    return SymmetricMatrix(kind=SpectrumKind.adjacency, entries=_adjacency(g))


def laplacian_matrix(g: Annotated[Graph, "Graph"]) -> SymmetricMatrix:
    """L(G) = D(G) - A(G)."""
    a = _adjacency(g)
    return SymmetricMatrix(kind=SpectrumKind.laplacian, entries=np.diag(a.sum(axis=1)) - a)


def signless_laplacian_matrix(g: Annotated[Graph, "Graph"]) -> SymmetricMatrix:
    """Q(G) = D(G) + A(G)."""
    a = _adjacency(g)
    return SymmetricMatrix(
        kind=SpectrumKind.signless_laplacian, entries=np.diag(a.sum(axis=1)) + a
    )


_BUILDERS = {
    SpectrumKind.adjacency: adjacency_matrix,
    SpectrumKind.laplacian: laplacian_matrix,
    SpectrumKind.signless_laplacian: signless_laplacian_matrix,
}


def _round_robin(m: int) -> list[np.ndarray]:
    """Layouts of 0..m-1 (m even) for one sweep.
    In every layout positions 2k and 2k+1 form a rotation pair. Circle
    method: player 0 stays put and the others rotate, so every pair meets
    exactly once per sweep.
    """
    players = list(range(m))
    layouts = []
    for _ in range(m - 1):
        layout = []
        for k in range(m // 2):
            layout += [players[k], players[m - 1 - k]]
        layouts.append(np.array(layout, dtype=int))
        players = [players[0], players[-1]] + players[1:-1]
    return layouts


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotation(app: np.ndarray, aqq: np.ndarray, apq: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cosines and sines that annihilate apq; the identity where apq is 0."""
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        theta = (aqq - app) / (2.0 * apq)
        t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
    t[theta == 0.0] = 1.0
    t[apq == 0.0] = 0.0
    c = 1.0 / np.sqrt(t * t + 1.0)
    return c, t * c


def jacobi_eigh(
    entries: Annotated[np.ndarray, "Symmetric matrix"],
    max_sweeps: Optional[int] = None,
    off_tol: Optional[float] = None,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi eigen-decomposition with parallel ordering.
    The working matrix is kept permuted so that the n/2 disjoint pairs of a
    round sit in adjacent rows and columns; a round is then a handful of
    contiguous 2x2 block updates. Odd orders are padded with an isolated
    dummy index that no rotation touches.
    Args:
        entries: Real symmetric matrix.
        max_sweeps: Sweep cap; defaults to settings.EIGEN_MAX_SWEEPS.
        off_tol: Stop once the off-diagonal Frobenius norm is at most
            off_tol * ||M||_F; defaults to settings.EIGEN_OFF_TOL.
    Returns:
        tuple: (eigenvalues in diagonal order, eigenvectors as columns, sweeps used).
    Raises:
        ConvergenceError: If the sweep cap is reached first.
    """
    max_sweeps = max_sweeps or settings.EIGEN_MAX_SWEEPS
    off_tol = off_tol or settings.EIGEN_OFF_TOL
    entries = np.asarray(entries, dtype=float)
    n = entries.shape[0]
    threshold = off_tol * float(np.linalg.norm(entries))
    off = _off_norm(entries)
    if n < 2 or off <= threshold:
        return np.diag(entries).copy(), np.eye(n), 0

    m = n + n % 2
    h = m // 2
    a = np.zeros((m, m))
    a[:n, :n] = entries
    v = np.eye(m)
    # current[i] is the original index held at position i
    current = np.arange(m)
    blocks = np.arange(h)
    layouts = _round_robin(m)

    for sweep in range(1, max_sweeps + 1):
        for layout in layouts:
            perm = np.argsort(current)[layout]
            a = a[np.ix_(perm, perm)]
            v = v[:, perm]
            current = layout

            a4 = a.reshape(h, 2, h, 2)
            apq = a4[blocks, 0, blocks, 1]
            if not apq.any():
                continue
            c, s = _rotation(a4[blocks, 0, blocks, 0], a4[blocks, 1, blocks, 1], apq)

            # A <- A J (columns), A <- J^T A (rows), V <- V J
            x, y = a4[..., 0], a4[..., 1]
            a4[..., 0], a4[..., 1] = c * x - s * y, s * x + c * y
            cr, sr = c[:, None, None], s[:, None, None]
            x, y = a4[:, 0], a4[:, 1]
            a4[:, 0], a4[:, 1] = cr * x - sr * y, sr * x + cr * y
            a4[blocks, 0, blocks, 1] = 0.0
            a4[blocks, 1, blocks, 0] = 0.0

            v3 = v.reshape(m, h, 2)
            x, y = v3[..., 0], v3[..., 1]
            v3[..., 0], v3[..., 1] = c * x - s * y, s * x + c * y

        off = _off_norm(a)
        if off <= threshold:
            keep = current < n
            return np.diag(a)[keep].copy(), v[:n][:, keep], sweep

    logger.error(
        "Jacobi iteration cap reached",
        extra={"order": n, "sweeps": max_sweeps, "off_norm": off, **_trace_attrs()},
    )
    raise ConvergenceError(max_sweeps, off, threshold)


def symmetric_eigenvalues(
    m: Annotated[SymmetricMatrix, "Symmetric matrix"],
    method: Optional[str] = None,
) -> Spectrum:
    """Real eigenvalues of m, sorted nonincreasing.
    Args:
        m: Matrix tagged with its spectrum kind.
        method: "jacobi" or "lapack"; defaults to settings.EIGEN_METHOD.
    Returns:
        Spectrum: Values plus the achieved reconstruction residual.
    Raises:
        ConvergenceError: If Jacobi does not converge.
        SpectrumIntegrityError: If the residual exceeds the configured bound.
    """
    method = method or settings.EIGEN_METHOD
    entries = m.entries
    if method == "lapack":
        values, vectors = np.linalg.eigh(entries)
        sweeps = 0
    else:
        values, vectors, sweeps = jacobi_eigh(entries)

    scale = max(1.0, float(np.max(np.abs(entries))) if entries.size else 1.0)
    residual = float(np.max(np.abs((vectors * values) @ vectors.T - entries))) if entries.size else 0.0
    if residual > settings.EIGEN_RESIDUAL_TOL * scale:
        raise SpectrumIntegrityError(m.kind.value, "reconstruction residual", residual)

    ordered = tuple(float(x) for x in sorted(values, reverse=True))
    return Spectrum(kind=m.kind, values=ordered, tolerance=residual, sweeps=sweeps)


def clamp(value: float) -> float:
    """Snap eigenvalues within settings.ZERO_CLAMP of zero to exactly zero."""
    return 0.0 if abs(value) <= settings.ZERO_CLAMP else value


def check_spectrum(spec: Annotated[Spectrum, "Spectrum"], m: Annotated[int, "Edge count"]) -> None:
    """Trace identities every spectrum of a graph with m edges must satisfy.
    Raises:
        SpectrumIntegrityError: On the first failed identity.
    """
    tol = 1e-8 * max(1.0, 2.0 * m)
    values = spec.values
    total = sum(values)
    kind = spec.kind.value
    if spec.kind is SpectrumKind.adjacency:
        if abs(total) > tol:
            raise SpectrumIntegrityError(kind, "trace = 0", total)
        squares = sum(x * x for x in values)
        if abs(squares - 2 * m) > tol:
            raise SpectrumIntegrityError(kind, "sum of squares = 2m", squares - 2 * m)
        return
    if abs(total - 2 * m) > tol:
        raise SpectrumIntegrityError(kind, "trace = 2m", total - 2 * m)
    if values and values[-1] < -settings.ZERO_CLAMP:
        raise SpectrumIntegrityError(kind, "positive semidefinite", values[-1])
    if spec.kind is SpectrumKind.laplacian and values and abs(values[-1]) > settings.ZERO_CLAMP:
        raise SpectrumIntegrityError(kind, "smallest eigenvalue = 0", values[-1])


def graph_spectrum(
    g: Annotated[Graph, "Graph"],
    kind: Annotated[SpectrumKind, "Matrix kind"],
    method: Optional[str] = None,
) -> Spectrum:
    """Build the matrix of the given kind, solve it and verify trace identities."""
    spec = symmetric_eigenvalues(_BUILDERS[kind](g), method=method)
    check_spectrum(spec, g.m)
    return spec
