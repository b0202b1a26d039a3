from typing import Annotated, Sequence

from genergy.core.exceptions import FamilyRangeError, GraphValidationError
from genergy.models.graph import ConjugateDegreeSequence, DegreeSequence, Graph


def degree_sequence(g: Annotated[Graph, "Graph"]) -> DegreeSequence:
    """Degrees of g sorted nonincreasing, independent of vertex labels."""
    return DegreeSequence(values=tuple(sorted((g.degree(v) for v in range(g.n)), reverse=True)))


def conjugate_degree_sequence(d: Annotated[DegreeSequence, "Degree sequence"]) -> ConjugateDegreeSequence:
    """Transpose of the degree partition's Ferrers diagram, length len(d).
    Entry i (1-based) counts the degrees that are at least i; entries past
    the largest degree are zero.
    """
    return ConjugateDegreeSequence(values=conjugate(d.values, len(d)))


def conjugate(values: Sequence[int], length: int) -> tuple[int, ...]:
    """Conjugate of an arbitrary nonincreasing sequence over a length window."""
    return tuple(sum(1 for v in values if v >= i) for i in range(1, length + 1))


def is_connected(g: Annotated[Graph, "Graph"]) -> bool:
    """True iff g has a single component; K1 is connected."""
    seen = 1
    frontier = 1
    while frontier:
        reach = 0
        rest = frontier
        while rest:
            low = rest & -rest
            reach |= g.rows[low.bit_length() - 1]
            rest ^= low
        frontier = reach & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def is_threshold(g: Annotated[Graph, "Graph"]) -> bool:
    """True iff peeling isolated or dominating vertices empties the graph."""
    alive = (1 << g.n) - 1
    while alive:
        peeled = False
        rest = alive
        count = alive.bit_count()
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            deg = (g.rows[v] & alive).bit_count()
            if deg == 0 or deg == count - 1:
                alive ^= low
                peeled = True
                break
            rest ^= low
        if not peeled:
            return False
    return True


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Copy of g with vertex v renamed to perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise GraphValidationError(f"not a permutation of 0..{g.n - 1}: {list(perm)}")
    rows = [0] * g.n
    for v in range(g.n):
        row = g.rows[v]
        image = 0
        for j in range(g.n):
            if row >> j & 1:
                image |= 1 << perm[j]
        rows[perm[v]] = image
    return Graph.trusted(g.n, rows)


def path(n: int) -> Graph:
    if n < 1:
        raise FamilyRangeError("path", n, 1)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise FamilyRangeError("cycle", n, 3)
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 1:
        raise FamilyRangeError("complete", n, 1)
    full = (1 << n) - 1
    return Graph.trusted(n, (full ^ (1 << v) for v in range(n)))


def star(n: int) -> Graph:
    """K_{1,n-1} with centre 0."""
    if n < 1:
        raise FamilyRangeError("star", n, 1)
    return Graph.from_edges(n, ((0, v) for v in range(1, n)))
