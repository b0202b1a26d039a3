from typing import Annotated, Iterable

from pydantic import BaseModel, ConfigDict, Field, model_validator

from genergy.core.exceptions import GraphValidationError


class Graph(BaseModel):
    """Simple undirected graph on vertices 0..n-1.
    Adjacency is stored as one bitmask per vertex: bit j of rows[i] is set iff
    i and j are adjacent.
    Attributes:
        n (int): Vertex count, at least 1.
        rows (tuple[int, ...]): Neighbourhood bitmask of every vertex.
    """

    model_config = ConfigDict(frozen=True)

    n: Annotated[int, Field(ge=1)]
    rows: tuple[int, ...]

    @model_validator(mode="after")
    def _check_adjacency(self) -> "Graph":
        if len(self.rows) != self.n:
            raise GraphValidationError(
                f"expected {self.n} adjacency rows, got {len(self.rows)}"
            )
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise GraphValidationError(f"row {i} names a vertex outside 0..{self.n - 1}")
            if row >> i & 1:
                raise GraphValidationError(f"loop at vertex {i}")
            rest = row
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                if not self.rows[j] >> i & 1:
                    raise GraphValidationError(f"edge {i}-{j} is not symmetric")
                rest ^= low
        return self

    @classmethod
    def trusted(cls, n: int, rows: Iterable[int]) -> "Graph":
        """Build without validation; for rows produced by this package."""
        return cls.model_construct(n=n, rows=tuple(rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphValidationError(f"edge ({i}, {j}) outside 0..{n - 1}")
            if i == j:
                raise GraphValidationError(f"loop at vertex {i}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n=n, rows=tuple(rows))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        row = self.rows[v]
        return [j for j in range(self.n) if row >> j & 1]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in range(j) if self.rows[i] >> j & 1]

    def __repr__(self) -> str:
        return f"<Graph n={self.n} m={self.m}>"


class DegreeSequence(BaseModel):
    """Vertex degrees sorted nonincreasing."""

    model_config = ConfigDict(frozen=True)

    values: tuple[int, ...]

    @model_validator(mode="after")
    def _check(self) -> "DegreeSequence":
        if any(d < 0 for d in self.values):
            raise GraphValidationError("degrees must be nonnegative")
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise GraphValidationError("degree sequence must be nonincreasing")
        if sum(self.values) % 2:
            raise GraphValidationError("degree sum must be even")
        return self

    def __len__(self) -> int:
        return len(self.values)


class ConjugateDegreeSequence(BaseModel):
    """Conjugate degree sequence d*_i = |{j : d_j >= i}|, padded to length n."""

    model_config = ConfigDict(frozen=True)

    values: tuple[int, ...]

    @model_validator(mode="after")
    def _check(self) -> "ConjugateDegreeSequence":
        if any(d < 0 for d in self.values):
            raise GraphValidationError("conjugate entries must be nonnegative")
        if any(a < b for a, b in zip(self.values, self.values[1:])):
            raise GraphValidationError("conjugate sequence must be nonincreasing")
        return self

    def __len__(self) -> int:
        return len(self.values)
