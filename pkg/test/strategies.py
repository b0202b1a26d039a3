import networkx as nx
from hypothesis import strategies as st

from genergy.models.graph import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, k in zip(pairs, keep) if k])


@st.composite
def graphs_with_permutation(draw, min_n: int = 1, max_n: int = 7) -> tuple[Graph, list[int]]:
    g = draw(graphs(min_n, max_n))
    return g, draw(st.permutations(range(g.n)))


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def trees(draw, min_n: int = 2, max_n: int = 12) -> Graph:
    n = draw(st.integers(min_n, max_n))
    return Graph.from_edges(n, [(draw(st.integers(0, v - 1)), v) for v in range(1, n)])
