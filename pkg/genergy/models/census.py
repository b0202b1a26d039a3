import enum
from typing import Annotated, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from genergy.core.exceptions import IntegrityError
from genergy.models.classify import Subclass, ToleranceConfig

CLASSES: tuple[Subclass, ...] = (Subclass.G1, Subclass.G2, Subclass.G3, Subclass.G4)


def empty_counts() -> dict[Subclass, int]:
    return {label: 0 for label in CLASSES}


class GraphSource(str, enum.Enum):
    """Where census graphs come from.
    Attributes:
        builtin: The isomorph-free enumerator.
        file: A graph6 file.
    """

    builtin = "builtin"
    file = "file"


class CensusRow(BaseModel):
    """Per-order class counts.
    Attributes:
        n (int): Order.
        total (int): Connected graphs classified.
        counts (dict[Subclass, int]): Graphs per subclass.
        source (GraphSource): Input used.
        tol (ToleranceConfig): Tolerance used.
        borderline_count (int): Graphs with a margin in the tolerance-sensitive band.
        skipped_disconnected (int): File graphs skipped as disconnected.
        skipped_other_order (int): File graphs skipped for having another order.
    """

    model_config = ConfigDict(frozen=True)

    n: Annotated[int, Field(ge=1)]
    total: Annotated[int, Field(ge=0)]
    counts: dict[Subclass, int]
    source: GraphSource = GraphSource.builtin
    tol: ToleranceConfig = ToleranceConfig()
    borderline_count: Annotated[int, Field(ge=0)] = 0
    skipped_disconnected: Annotated[int, Field(ge=0)] = 0
    skipped_other_order: Annotated[int, Field(ge=0)] = 0

    @model_validator(mode="after")
    def _check_partition(self) -> "CensusRow":
        if set(self.counts) != set(CLASSES):
            raise IntegrityError(f"counts must name exactly {[c.value for c in CLASSES]}")
        if sum(self.counts.values()) != self.total:
            raise IntegrityError(
                f"n={self.n}: class counts sum to {sum(self.counts.values())}, total is {self.total}"
            )
        return self

    def count(self, label: Subclass) -> int:
        return self.counts[label]


class ChunkTally(BaseModel):
    """Partial census of one chunk of graphs.
    Tallies merge associatively and commutatively, so chunk results can be
    combined in whatever order workers finish.
    Attributes:
        counts (dict[Subclass, int]): Graphs per subclass.
        borderline (int): Borderline graphs.
        members (dict[Subclass, tuple[str, ...]]): Canonical forms per subclass.
        violations (tuple[tuple[str, str], ...]): (graph6, reason) of graphs
            that broke an invariant.
    """

    model_config = ConfigDict(frozen=True)

    counts: dict[Subclass, int] = Field(default_factory=empty_counts)
    borderline: int = 0
    members: dict[Subclass, tuple[str, ...]] = Field(default_factory=lambda: {c: () for c in CLASSES})
    violations: tuple[tuple[str, str], ...] = ()

    def merge(self, other: "ChunkTally") -> "ChunkTally":
        return ChunkTally(
            counts={c: self.counts[c] + other.counts[c] for c in CLASSES},
            borderline=self.borderline + other.borderline,
            members={c: self.members[c] + other.members[c] for c in CLASSES},
            violations=self.violations + other.violations,
        )


class CensusResult(BaseModel):
    """A census row with the per-class listings behind it.
    Attributes:
        row (CensusRow): Counts.
        listings (dict[Subclass, tuple[str, ...]]): Sorted canonical forms per class.
    """

    model_config = ConfigDict(frozen=True)

    row: CensusRow
    listings: dict[Subclass, tuple[str, ...]]


class RatioRow(BaseModel):
    """Share of each subclass among all connected graphs of order n."""

    model_config = ConfigDict(frozen=True)

    n: int
    ratios: dict[Subclass, float]

    @model_validator(mode="after")
    def _check_sum(self) -> "RatioRow":
        if abs(sum(self.ratios.values()) - 1.0) > 1e-12:
            raise IntegrityError(f"n={self.n}: ratios sum to {sum(self.ratios.values())!r}")
        return self


class TrendRow(BaseModel):
    """One order in the limit-ratio trend table.
    Attributes:
        n (int): Order.
        ratios (dict[Subclass, float]): Class shares.
        deltas (Optional[dict[Subclass, float]]): Change from the previous row.
        distance (dict[Subclass, float]): |ratio - conjectured limit| per class.
        distance_total (float): Sum of the per-class distances.
        tail_mass (float): r3 + r4.
    """

    model_config = ConfigDict(frozen=True)

    n: int
    ratios: dict[Subclass, float]
    deltas: Optional[dict[Subclass, float]] = None
    distance: dict[Subclass, float]
    distance_total: float
    tail_mass: float


class ConjectureReport(BaseModel):
    """Descriptive trend of class shares against the conjectured limits."""

    model_config = ConfigDict(frozen=True)

    limits: dict[Subclass, float]
    rows: tuple[TrendRow, ...]
    tail_mass_decreasing_from: Optional[int] = None


class ToleranceEcho(BaseModel):
    model_config = ConfigDict(frozen=True)

    abs: float
    rel: float


class CensusDocument(BaseModel):
    """JSON export envelope."""

    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1] = 1
    tolerance: ToleranceEcho
    rows: tuple[CensusRow, ...] = ()


class ExportFormat(str, enum.Enum):
    """Serializations understood by export().
    Attributes:
        csv: Census counts CSV.
        ratios_csv: Ratio CSV with 6 decimals.
        json: CensusDocument.
    """

    csv = "csv"
    ratios_csv = "ratios_csv"
    json = "json"
