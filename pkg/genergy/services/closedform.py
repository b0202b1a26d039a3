import math
from typing import Annotated, Optional

from genergy.core.exceptions import DegenerateDenominatorError, FamilyRangeError
from genergy.core.telemetry import get_logger
from genergy.models.classify import Subclass, Threshold
from genergy.models.closedform import (
    CompleteClosedForm,
    CycleClosedForm,
    Family,
    FamilyPrediction,
    FormulaDeviation,
    PathClosedForm,
)
from genergy.models.energy import EnergyProfile
from genergy.models.graph import DegreeSequence, Graph
from genergy.services import graph as families
from genergy.services.energy import pi_star_sum, pi_sum, profile
from genergy.services.graph import conjugate_degree_sequence
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)

DENOMINATOR_EPS = 1e-12
FORMULA_TOL = 1e-8

# Smallest order each family theorem covers.
PREDICTION_MIN_ORDER = {Family.path: 2, Family.cycle: 3, Family.complete: 4}


def _denominator(alpha: float) -> float:
    half = math.sin(alpha / 2.0)
    if abs(half) <= DENOMINATOR_EPS:
        raise DegenerateDenominatorError(alpha)
    return half


def trig_sum_cos(theta: float, alpha: float, n: int) -> float:
    """sum_{j=0}^{n} cos(theta + alpha*j) in closed form.
    Raises:
        DegenerateDenominatorError: If sin(alpha/2) ~ 0; the sum is then
            (n+1)*cos(theta).
    """
    half = _denominator(alpha)
    return math.sin((n + 1) * alpha / 2.0) * math.cos(theta + n * alpha / 2.0) / half


def trig_sum_sin(theta: float, alpha: float, n: int) -> float:
    """sum_{j=0}^{n} sin(theta + alpha*j) in closed form."""
    half = _denominator(alpha)
    return math.sin((n + 1) * alpha / 2.0) * math.sin(theta + n * alpha / 2.0) / half


def direct_sum_cos(theta: float, alpha: float, n: int) -> float:
    return math.fsum(math.cos(theta + alpha * j) for j in range(n + 1))


def direct_sum_sin(theta: float, alpha: float, n: int) -> float:
    return math.fsum(math.sin(theta + alpha * j) for j in range(n + 1))


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def _csc(x: float) -> float:
    return 1.0 / math.sin(x)


def _regular_pi(n: int, degree: int) -> tuple[float, float]:
    d = DegreeSequence(values=(degree,) * n)
    return pi_sum(d), pi_star_sum(conjugate_degree_sequence(d))


def path_closed(n: Annotated[int, "Order"]) -> PathClosedForm:
    """E, IE and pi of P_n.
    E(P_n) = -2 + 2csc(pi/(2(n+1))) for even n and -2 + 2cot(pi/(2(n+1)))
    for odd n; both parities checked against the eigensolver.
    """
    if n < 2:
        raise FamilyRangeError("path", n, 2)
    x = math.pi / (2 * (n + 1))
    e = -2.0 + 2.0 * (_csc(x) if n % 2 == 0 else _cot(x))
    return PathClosedForm(
        n=n,
        energy=e,
        ie=-1.0 + _cot(math.pi / (4 * n)),
        pi=2.0 + (n - 2) * math.sqrt(2.0),
    )


def cycle_closed(n: Annotated[int, "Order"]) -> CycleClosedForm:
    """E, LEL, IE, pi and pi* of C_n by residue of n mod 4.
    IE for n = 0 mod 4 uses 2cot(pi/2n): even cycles are bipartite, so Q and
    L share a spectrum and IE = LEL.
    """
    if n < 3:
        raise FamilyRangeError("cycle", n, 3)
    if n % 4 == 0:
        e = 4.0 * _cot(math.pi / n)
    elif n % 2 == 1:
        e = 2.0 * _csc(math.pi / (2 * n))
    else:
        e = 4.0 * _csc(math.pi / n)
    lel = 2.0 * _cot(math.pi / (2 * n))
    ie = 2.0 * _csc(math.pi / (2 * n)) if n % 2 else lel
    pi, pi_star = _regular_pi(n, 2)
    return CycleClosedForm(n=n, energy=e, lel=lel, ie=ie, pi=pi, pi_star=pi_star)


def complete_closed(n: Annotated[int, "Order"]) -> CompleteClosedForm:
    """E(K_n) = 2n - 2 (0 for K_1) and pi*(K_n) = (n - 1)sqrt(n)."""
    if n < 1:
        raise FamilyRangeError("complete", n, 1)
    return CompleteClosedForm(
        n=n,
        energy=float(2 * n - 2) if n >= 2 else 0.0,
        pi_star=(n - 1) * math.sqrt(n),
    )


def family_graph(family: Family, n: int) -> Graph:
    builder = {
        Family.path: families.path,
        Family.cycle: families.cycle,
        Family.complete: families.complete,
    }[family]
    return builder(n)


def predicted_subclass(family: Annotated[Family, "Family"], n: Annotated[int, "Order"]) -> FamilyPrediction:
    """Subclass the family theorems assign to the n-th member.
    C_4 and K_4 meet pi* exactly, so the weak right inequality puts them in
    G1; P_2 = K_2 meets pi exactly.
    Raises:
        FamilyRangeError: Outside the orders the theorems cover.
    """
    minimum = PREDICTION_MIN_ORDER[family]
    if n < minimum:
        raise FamilyRangeError(family.value, n, minimum)

    if family is Family.path:
        return FamilyPrediction(
            family=family,
            n=n,
            predicted=Subclass.G4,
            boundary_expected=Threshold.pi if n == 2 else None,
        )
    if family is Family.complete:
        return FamilyPrediction(
            family=family,
            n=n,
            predicted=Subclass.G1,
            boundary_expected=Threshold.pi_star if n == 4 else None,
            note="theorem statement labels K_n as G2 while proving E <= pi*; classified by the inequality",
        )
    if n % 2 == 1:
        return FamilyPrediction(
            family=family,
            n=n,
            predicted=Subclass.G3,
            equality_expected=True,
            boundary_expected=Threshold.ie,
        )
    if n % 4 == 2:
        return FamilyPrediction(family=family, n=n, predicted=Subclass.G4)
    if n == 4:
        return FamilyPrediction(
            family=family,
            n=n,
            predicted=Subclass.G1,
            boundary_expected=Threshold.pi_star,
            note="E(C_4) = pi*(C_4) = 4, so C_4 is in G1, not G2 as for n = 4k >= 8",
        )
    return FamilyPrediction(family=family, n=n, predicted=Subclass.G2)


def closed_values(family: Family, n: int) -> dict[str, float]:
    """Closed-form invariants of one family member, keyed by profile field."""
    if family is Family.path:
        return path_closed(n).model_dump(exclude={"n"})
    if family is Family.cycle:
        return cycle_closed(n).model_dump(exclude={"n"})
    return complete_closed(n).model_dump(exclude={"n"})


def compare_with_profile(
    family: Annotated[Family, "Family"],
    n: Annotated[int, "Order"],
    measured: Optional[EnergyProfile] = None,
    tol: float = FORMULA_TOL,
) -> list[FormulaDeviation]:
    """Closed forms that differ from the eigensolver by more than tol.
    The numeric value is authoritative; every deviation is logged.
    """
    measured = measured or profile(family_graph(family, n))
    deviations = []
    for quantity, value in closed_values(family, n).items():
        numeric = getattr(measured, quantity)
        if abs(value - numeric) > tol:
            deviation = FormulaDeviation(
                family=family,
                n=n,
                quantity=quantity,
                closed_form=value,
                numeric=numeric,
            )
            logger.warning(
                "Closed form deviates from eigensolve",
                extra={
                    "family": family.value,
                    "n": n,
                    "quantity": quantity,
                    "difference": deviation.difference,
                    **_trace_attrs(),
                },
            )
            deviations.append(deviation)
    return deviations
