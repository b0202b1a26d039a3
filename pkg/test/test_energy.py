import math

import numpy as np
import pytest
from hypothesis import given, settings as hsettings

from genergy.core.exceptions import SpectrumKindError
from genergy.models.spectral import SpectrumKind
from genergy.services.energy import energy, profile
from genergy.services.graph import complete, cycle, relabel, star
from genergy.services.spectral import adjacency_matrix, graph_spectrum
from strategies import graphs, graphs_with_permutation


@pytest.mark.parametrize("n", range(2, 8))
def test_complete_graph_profile(n):
    p = profile(complete(n))
    assert p.energy == pytest.approx(2 * n - 2, abs=1e-10)
    assert p.laplacian_energy == pytest.approx(2 * n - 2, abs=1e-10)
    assert p.lel == pytest.approx((n - 1) * math.sqrt(n), abs=1e-10)
    assert p.ie == pytest.approx(math.sqrt(2 * n - 2) + (n - 1) * math.sqrt(n - 2), abs=1e-10)
    assert p.pi == pytest.approx(n * math.sqrt(n - 1), abs=1e-12)
    assert p.pi_star == pytest.approx((n - 1) * math.sqrt(n), abs=1e-12)


def test_star_is_threshold_with_pi_star_equal_lel():
    p = profile(star(5))
    assert p.energy == pytest.approx(4.0, abs=1e-10)
    assert p.lel == pytest.approx(math.sqrt(5) + 3, abs=1e-10)
    assert p.pi_star == pytest.approx(p.lel, abs=1e-10)
    assert p.ie == pytest.approx(p.lel, abs=1e-10)


def test_triangle_profile():
    p = profile(cycle(3))
    assert p.energy == pytest.approx(4.0, abs=1e-10)
    assert p.ie == pytest.approx(4.0, abs=1e-10)
    assert p.lel == pytest.approx(2 * math.sqrt(3), abs=1e-10)
    assert p.pi == pytest.approx(3 * math.sqrt(2), abs=1e-12)
    assert p.chain() == (p.pi_star, p.lel, p.ie, p.pi)


def test_single_vertex_is_all_zero():
    p = profile(complete(1))
    assert (p.energy, p.lel, p.ie, p.pi, p.pi_star) == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_wrong_spectrum_kind_rejected():
    with pytest.raises(SpectrumKindError):
        energy(graph_spectrum(cycle(4), SpectrumKind.laplacian))


@hsettings(deadline=None)
@given(graphs())
def test_energy_matches_numpy(g):
    expected = float(np.sum(np.abs(np.linalg.eigvalsh(adjacency_matrix(g).entries))))
    assert profile(g).energy == pytest.approx(expected, abs=1e-9)


@hsettings(deadline=None, max_examples=30)
@given(graphs())
def test_eigen_methods_agree(g):
    jacobi, lapack = profile(g, "jacobi"), profile(g, "lapack")
    for field in ("energy", "laplacian_energy", "lel", "ie"):
        assert getattr(jacobi, field) == pytest.approx(getattr(lapack, field), abs=1e-9)


@hsettings(deadline=None, max_examples=40)
@given(graphs_with_permutation(min_n=2))
def test_profile_is_label_invariant(case):
    g, perm = case
    before, after = profile(g), profile(relabel(g, perm))
    for field in ("energy", "laplacian_energy", "lel", "ie", "pi", "pi_star"):
        assert getattr(after, field) == pytest.approx(getattr(before, field), abs=1e-9)
