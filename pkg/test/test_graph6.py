import networkx as nx
import pytest
from hypothesis import given

from genergy.core.exceptions import Graph6ParseError
from genergy.services.enumerate import connected_graph6
from genergy.services.graph import complete
from genergy.services.graph6 import parse_graph6, to_graph6
from strategies import graphs, to_networkx


@pytest.mark.parametrize(
    "text, n, edges",
    [
        ("@", 1, []),
        ("A_", 2, [(0, 1)]),
        ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
        ("C~", 4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]),
    ],
)
def test_decode_known_strings(text, n, edges):
    g = parse_graph6(text)
    assert g.n == n
    assert g.edges() == edges


def test_encode_complete():
    assert to_graph6(complete(4)) == "C~"


def test_header_and_newline_accepted():
    assert parse_graph6(">>graph6<<A_\n").edges() == [(0, 1)]


def test_padding_bits_ignored():
    assert parse_graph6("A`").edges() == [(0, 1)]


@given(graphs(max_n=10))
def test_encoding_matches_networkx(g):
    expected = nx.to_graph6_bytes(to_networkx(g), header=False).decode("ascii").strip()
    assert to_graph6(g) == expected
    assert parse_graph6(expected) == g


@pytest.mark.parametrize(
    "text, offset",
    [
        ("", 0),
        ("?", 0),  # n = 0
        ("~??", 0),  # multi-byte size marker
        ("A", 1),  # truncated
        ("A_x", 2),  # trailing data
        ("C\x10", 1),  # byte below 63
        (">>graph6<<A", 11),
    ],
)
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(Graph6ParseError) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_round_trip_of_every_order_seven_graph():
    forms = connected_graph6(7)
    assert len(forms) == 853
    for text in forms:
        assert to_graph6(parse_graph6(text)) == text
