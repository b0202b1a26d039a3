import enum
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat

from genergy.models.energy import EnergyProfile


class Subclass(str, enum.Enum):
    """Where E(G) falls in the chain pi* <= LEL <= IE <= pi.
    Attributes:
        G1: E <= pi*.
        G2: pi* < E <= LEL.
        G3: LEL < E <= IE.
        G4: IE < E <= pi.
    """

    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    G4 = "G4"


class Threshold(str, enum.Enum):
    """Invariants E(G) is compared against, in chain order."""

    pi_star = "pi_star"
    lel = "lel"
    ie = "ie"
    pi = "pi"

    @property
    def label(self) -> str:
        return _THRESHOLD_LABELS[self]

    def of(self, profile: EnergyProfile) -> float:
        return getattr(profile, self.value)


_THRESHOLD_LABELS = {
    Threshold.pi_star: "E=pi*",
    Threshold.lel: "E=LEL",
    Threshold.ie: "E=IE",
    Threshold.pi: "E=pi",
}

# Threshold that closes each subclass from the right.
CHAIN: tuple[tuple[Threshold, Subclass], ...] = (
    (Threshold.pi_star, Subclass.G1),
    (Threshold.lel, Subclass.G2),
    (Threshold.ie, Subclass.G3),
    (Threshold.pi, Subclass.G4),
)


class ToleranceConfig(BaseModel):
    """Comparison tolerance for boundary decisions.
    Attributes:
        eps_abs (float): Absolute tolerance.
        eps_rel (float): Tolerance relative to max(1, |value|).
    """

    model_config = ConfigDict(frozen=True)

    eps_abs: PositiveFloat = 1e-9
    eps_rel: PositiveFloat = 1e-12

    def epsilon(self, value: float) -> float:
        return max(self.eps_abs, self.eps_rel * max(1.0, abs(value)))


class BoundaryFlag(BaseModel):
    """E(G) equals a threshold within tolerance.
    Attributes:
        threshold (Threshold): The invariant E(G) matched.
        margin (float): E - threshold.
    """

    model_config = ConfigDict(frozen=True)

    threshold: Threshold
    margin: float

    @property
    def label(self) -> str:
        return self.threshold.label


class Classification(BaseModel):
    model_config = ConfigDict(frozen=True)

    subclass: Subclass
    boundary_flags: tuple[BoundaryFlag, ...] = ()
    borderline: bool = False


class ClassifiedGraph(BaseModel):
    """A connected graph with its profile and subclass.
    Attributes:
        graph6 (str): Canonical graph6 string.
        profile (EnergyProfile): Invariants.
        subclass (Subclass): Assigned class.
        boundary_flags (tuple[BoundaryFlag, ...]): Equalities detected.
        borderline (bool): Some margin lies in the tolerance-sensitive band.
    """

    model_config = ConfigDict(frozen=True)

    graph6: str
    profile: EnergyProfile
    subclass: Subclass
    boundary_flags: tuple[BoundaryFlag, ...] = ()
    borderline: bool = False


class ChainViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    relation: str
    margin: float


class ChainReport(BaseModel):
    """Outcome of checking pi* <= LEL <= IE <= pi and E <= pi.
    Attributes:
        margins (dict[str, float]): right - left for every relation.
        violations (tuple[ChainViolation, ...]): Relations below -epsilon.
    """

    model_config = ConfigDict(frozen=True)

    margins: dict[str, float]
    violations: tuple[ChainViolation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


class ClassificationFlip(BaseModel):
    """A graph whose class differs between tolerance settings."""

    model_config = ConfigDict(frozen=True)

    graph6: str
    labels: Annotated[dict[str, Subclass], Field(description="eps_abs -> class")]
