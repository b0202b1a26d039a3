import numpy as np
import pytest
from hypothesis import given, settings as hsettings

from genergy.core.exceptions import ConvergenceError, GraphValidationError, SpectrumIntegrityError
from genergy.models.spectral import Spectrum, SpectrumKind, SymmetricMatrix
from genergy.services.enumerate import connected_graph6
from genergy.services.graph import cycle, path
from genergy.services.graph6 import parse_graph6
from genergy.services.spectral import (
    adjacency_matrix,
    check_spectrum,
    graph_spectrum,
    jacobi_eigh,
    laplacian_matrix,
    signless_laplacian_matrix,
    symmetric_eigenvalues,
)
from strategies import graphs, trees


def _random_symmetric(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    return a + a.T


@pytest.mark.parametrize("n, seed", [(1, 0), (2, 1), (5, 2), (8, 3), (13, 4), (30, 5)])
def test_jacobi_matches_lapack(n, seed):
    a = _random_symmetric(n, seed)
    values, vectors, _ = jacobi_eigh(a)
    np.testing.assert_allclose(np.sort(values), np.linalg.eigvalsh(a), atol=1e-10)
    np.testing.assert_allclose(vectors @ np.diag(values) @ vectors.T, a, atol=1e-10)


def test_jacobi_sweep_cap():
    with pytest.raises(ConvergenceError):
        jacobi_eigh(_random_symmetric(6, 7), max_sweeps=1, off_tol=1e-300)


def test_cycle_four_adjacency_spectrum():
    spec = symmetric_eigenvalues(adjacency_matrix(cycle(4)))
    np.testing.assert_allclose(spec.values, (2.0, 0.0, 0.0, -2.0), atol=1e-12)
    assert spec.kind is SpectrumKind.adjacency


def test_matrix_kinds():
    g = cycle(3)
    assert np.array_equal(laplacian_matrix(g).entries, 3 * np.eye(3) - np.ones((3, 3)))
    assert np.array_equal(signless_laplacian_matrix(g).entries, np.eye(3) + np.ones((3, 3)))


def test_asymmetric_matrix_rejected():
    with pytest.raises(GraphValidationError):
        SymmetricMatrix(kind=SpectrumKind.adjacency, entries=np.array([[0.0, 1.0], [0.0, 0.0]]))


@hsettings(deadline=None)
@given(graphs())
def test_spectra_match_numpy(g):
    for kind, build in (
        (SpectrumKind.adjacency, adjacency_matrix),
        (SpectrumKind.laplacian, laplacian_matrix),
        (SpectrumKind.signless_laplacian, signless_laplacian_matrix),
    ):
        spec = graph_spectrum(g, kind)
        expected = np.linalg.eigvalsh(build(g).entries)[::-1]
        np.testing.assert_allclose(spec.values, expected, atol=1e-9)


@pytest.mark.parametrize(
    "kind, values, m, check",
    [
        (SpectrumKind.adjacency, (1.0, 1.0), 1, "trace = 0"),
        (SpectrumKind.laplacian, (2.0, 1.0, 1.0), 2, "smallest eigenvalue = 0"),
        (SpectrumKind.signless_laplacian, (3.0, 0.0, -1.0), 1, "positive semidefinite"),
    ],
)
def test_trace_identities(kind, values, m, check):
    with pytest.raises(SpectrumIntegrityError) as info:
        check_spectrum(Spectrum(kind=kind, values=values), m)
    assert info.value.detail["check"] == check


@pytest.mark.filterwarnings("error::RuntimeWarning")
@pytest.mark.parametrize("n", [5, 6])
def test_jacobi_reconstructs_every_small_graph(n):
    for text in connected_graph6(n):
        g = parse_graph6(text)
        for build in (adjacency_matrix, laplacian_matrix, signless_laplacian_matrix):
            a = build(g).entries
            values, vectors, _ = jacobi_eigh(a)
            residual = np.max(np.abs((vectors * values) @ vectors.T - a))
            assert residual <= 1e-10, (text, build.__name__, residual)


@pytest.mark.filterwarnings("error::RuntimeWarning")
def test_jacobi_tiny_off_diagonal_does_not_overflow():
    a = np.array([[1.0, 1e-200], [1e-200, 2.0]])
    values, _, sweeps = jacobi_eigh(a, off_tol=1e-300)
    assert sweeps == 1
    np.testing.assert_allclose(np.sort(values), [1.0, 2.0], atol=1e-15)


@pytest.mark.parametrize("n, seed", [(7, 11), (31, 12), (64, 13)])
def test_jacobi_odd_and_even_orders(n, seed):
    a = _random_symmetric(n, seed)
    values, vectors, _ = jacobi_eigh(a)
    assert vectors.shape == (n, n)
    np.testing.assert_allclose(vectors.T @ vectors, np.eye(n), atol=1e-10)
    np.testing.assert_allclose(np.sort(values), np.linalg.eigvalsh(a), atol=1e-9)


def _closed_spectra(n):
    cases = [
        (adjacency_matrix, path, [2 * np.cos(np.pi * j / (n + 1)) for j in range(1, n + 1)]),
        (signless_laplacian_matrix, path, [2 + 2 * np.cos(np.pi * j / n) for j in range(1, n + 1)]),
    ]
    if n >= 3:
        cases += [
            (adjacency_matrix, cycle, [2 * np.cos(2 * np.pi * j / n) for j in range(n)]),
            (laplacian_matrix, cycle, [2 - 2 * np.cos(2 * np.pi * j / n) for j in range(n)]),
            (signless_laplacian_matrix, cycle, [2 + 2 * np.cos(2 * np.pi * j / n) for j in range(n)]),
        ]
    return cases


@pytest.mark.parametrize("n", range(2, 51))
def test_family_spectra_match_closed_forms(n):
    for build, family, expected in _closed_spectra(n):
        spec = symmetric_eigenvalues(build(family(n)))
        np.testing.assert_allclose(spec.values, sorted(expected, reverse=True), atol=1e-9)


def _same_laplacian_spectra(g):
    lap = graph_spectrum(g, SpectrumKind.laplacian)
    signless = graph_spectrum(g, SpectrumKind.signless_laplacian)
    np.testing.assert_allclose(lap.values, signless.values, atol=1e-9)


@pytest.mark.parametrize("n", [2, 3, 4, 9, 16])
def test_bipartite_families_have_equal_laplacian_spectra(n):
    _same_laplacian_spectra(path(n))
    _same_laplacian_spectra(cycle(2 * n))


@hsettings(deadline=None, max_examples=40)
@given(trees())
def test_trees_have_equal_laplacian_spectra(g):
    _same_laplacian_spectra(g)
