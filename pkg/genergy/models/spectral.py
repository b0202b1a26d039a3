import enum
from typing import Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from genergy.core.exceptions import GraphValidationError


class SpectrumKind(str, enum.Enum):
    """Characteristic matrix a spectrum belongs to.
    Attributes:
        adjacency: A(G).
        laplacian: L(G) = D(G) - A(G).
        signless_laplacian: Q(G) = D(G) + A(G).
    """

    adjacency = "adjacency"
    laplacian = "laplacian"
    signless_laplacian = "signless_laplacian"


class SymmetricMatrix(BaseModel):
    """Dense real symmetric matrix tagged with the spectrum kind it yields."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: SpectrumKind
    entries: np.ndarray

    @model_validator(mode="after")
    def _check_symmetric(self) -> "SymmetricMatrix":
        a = self.entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphValidationError(f"matrix must be square, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise GraphValidationError("matrix is not exactly symmetric")
        return self

    @property
    def order(self) -> int:
        return self.entries.shape[0]


class Spectrum(BaseModel):
    """Eigenvalues of one characteristic matrix, sorted nonincreasing.
    Attributes:
        kind (SpectrumKind): Which matrix produced the values.
        values (tuple[float, ...]): Eigenvalues, largest first.
        tolerance (float): Achieved reconstruction residual.
        sweeps (int): Jacobi sweeps used (0 for direct solvers).
    """

    model_config = ConfigDict(frozen=True)

    kind: SpectrumKind
    values: tuple[float, ...]
    tolerance: Annotated[float, Field(ge=0.0)] = 0.0
    sweeps: Annotated[int, Field(ge=0)] = 0

    @property
    def n(self) -> int:
        return len(self.values)
