import enum
from typing import Optional

from pydantic import BaseModel, ConfigDict

from genergy.models.classify import Subclass, Threshold


class Family(str, enum.Enum):
    """Named graph families with closed-form invariants.
    Attributes:
        path: P_n.
        cycle: C_n.
        complete: K_n.
    """

    path = "path"
    cycle = "cycle"
    complete = "complete"


class FamilyPrediction(BaseModel):
    """Subclass a family member is proven (or measured) to fall into.
    Attributes:
        family (Family): Graph family.
        n (int): Order.
        predicted (Subclass): Expected class.
        equality_expected (bool): E = IE holds exactly (odd cycles).
        boundary_expected (Optional[Threshold]): Threshold E is expected to
            meet with equality, if any.
        note (Optional[str]): Deviation between the theorem text and the
            measured class, if any.
    """

    model_config = ConfigDict(frozen=True)

    family: Family
    n: int
    predicted: Subclass
    equality_expected: bool = False
    boundary_expected: Optional[Threshold] = None
    note: Optional[str] = None


class PathClosedForm(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    energy: float
    ie: float
    pi: float


class CycleClosedForm(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    energy: float
    lel: float
    ie: float
    pi: float
    pi_star: float


class CompleteClosedForm(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    energy: float
    pi_star: float


class FormulaDeviation(BaseModel):
    """A closed form that disagrees with the eigensolver beyond tolerance."""

    model_config = ConfigDict(frozen=True)

    family: Family
    n: int
    quantity: str
    closed_form: float
    numeric: float

    @property
    def difference(self) -> float:
        return self.closed_form - self.numeric
