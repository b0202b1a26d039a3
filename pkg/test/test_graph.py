import networkx as nx
import pytest
from hypothesis import given
from networkx.algorithms.threshold import is_threshold_graph

from genergy.core.exceptions import FamilyRangeError, GraphValidationError
from genergy.models.graph import DegreeSequence, Graph
from genergy.services.graph import (
    conjugate,
    conjugate_degree_sequence,
    cycle,
    degree_sequence,
    is_connected,
    is_threshold,
    path,
    relabel,
    star,
)
from strategies import graphs, graphs_with_permutation, to_networkx


def test_from_edges_builds_symmetric_rows():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert g.rows == (0b010, 0b101, 0b010)
    assert g.m == 2
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.neighbors(1) == [0, 2]


@pytest.mark.parametrize(
    "n, rows",
    [
        (2, (0b01, 0b00)),  # loop
        (2, (0b10, 0b00)),  # asymmetric
        (2, (0b100, 0b000)),  # out of range
        (3, (0b10, 0b01)),  # row count
    ],
)
def test_invalid_adjacency_rejected(n, rows):
    with pytest.raises(GraphValidationError):
        Graph(n=n, rows=rows)


def test_from_edges_rejects_loop():
    with pytest.raises(GraphValidationError):
        Graph.from_edges(2, [(1, 1)])


def test_star_degree_and_conjugate():
    d = degree_sequence(star(5))
    assert d.values == (4, 1, 1, 1, 1)
    assert conjugate_degree_sequence(d).values == (5, 1, 1, 1, 0)


def test_conjugate_pads_with_zeros():
    assert conjugate((2, 2, 2), 3) == (3, 3, 0)
    assert conjugate((), 2) == (0, 0)


def test_degree_sequence_must_have_even_sum():
    with pytest.raises(GraphValidationError):
        DegreeSequence(values=(2, 1))


@given(graphs())
def test_conjugate_preserves_degree_sum(g):
    d = degree_sequence(g)
    assert sum(conjugate_degree_sequence(d).values) == sum(d.values) == 2 * g.m


@given(graphs())
def test_connectivity_matches_networkx(g):
    assert is_connected(g) == nx.is_connected(to_networkx(g))


@given(graphs())
def test_threshold_detection_matches_networkx(g):
    assert is_threshold(g) == is_threshold_graph(to_networkx(g))


@given(graphs_with_permutation())
def test_relabel_preserves_structure(case):
    g, perm = case
    h = relabel(g, perm)
    assert h.m == g.m
    assert degree_sequence(h) == degree_sequence(g)
    assert nx.is_isomorphic(to_networkx(g), to_networkx(h))
    for i, j in g.edges():
        assert h.has_edge(perm[i], perm[j])


def test_relabel_rejects_non_permutation():
    with pytest.raises(GraphValidationError):
        relabel(path(3), [0, 0, 1])


def test_family_ranges():
    assert path(1).m == 0
    assert cycle(3).m == 3
    with pytest.raises(FamilyRangeError):
        cycle(2)


@given(graphs())
def test_conjugate_of_conjugate_restores_degrees(g):
    d = degree_sequence(g)
    twice = conjugate(conjugate_degree_sequence(d).values, len(d))
    assert twice == d.values
