from typing import Annotated, Iterable, Optional, Sequence

from genergy.core.config import settings
from genergy.core.exceptions import ChainIntegrityError, DisconnectedGraphError
from genergy.core.telemetry import get_logger
from genergy.models.classify import (
    CHAIN,
    BoundaryFlag,
    ChainReport,
    ChainViolation,
    Classification,
    ClassificationFlip,
    ClassifiedGraph,
    Subclass,
    ToleranceConfig,
)
from genergy.models.energy import EnergyProfile
from genergy.models.graph import Graph
from genergy.services.energy import profile as energy_profile
from genergy.services.graph import is_connected
from genergy.services.graph6 import to_graph6
from genergy.utils.trace import _trace_attrs

logger = get_logger(__name__)


def default_tolerance() -> ToleranceConfig:
    return ToleranceConfig(eps_abs=settings.TOL_ABS, eps_rel=settings.TOL_REL)


def verify_chain(
    p: Annotated[EnergyProfile, "Profile"],
    tol: Optional[ToleranceConfig] = None,
) -> ChainReport:
    """Check pi* <= LEL <= IE <= pi and E <= pi within tolerance.
    Returns:
        ChainReport: Margins (right minus left) and the relations below -epsilon.
    """
    tol = tol or default_tolerance()
    relations = (
        ("pi*<=LEL", p.pi_star, p.lel),
        ("LEL<=IE", p.lel, p.ie),
        ("IE<=pi", p.ie, p.pi),
        ("E<=pi", p.energy, p.pi),
    )
    margins = {}
    violations = []
    for name, left, right in relations:
        margin = right - left
        margins[name] = margin
        if margin < -tol.epsilon(right):
            violations.append(ChainViolation(relation=name, margin=margin))
    return ChainReport(margins=margins, violations=tuple(violations))


def is_borderline(
    p: Annotated[EnergyProfile, "Profile"],
    tol: ToleranceConfig,
    band: Optional[float] = None,
) -> bool:
    """True when some |E - threshold| lies in (eps/band, eps*band].
    Such a margin is too large to be a rounding artefact of an exact
    equality yet small enough that another tolerance could move the class.
    """
    band = band or settings.BORDERLINE_BAND
    eps = tol.epsilon(p.energy)
    return any(eps / band < abs(p.energy - t) <= eps * band for t in p.chain())


def classify(
    p: Annotated[EnergyProfile, "Profile"],
    tol: Optional[ToleranceConfig] = None,
) -> Classification:
    """Place a profile into G1..G4 by walking the chain left to right.
    A value within epsilon of a threshold belongs to the earlier class and is
    flagged as a boundary case.
    Raises:
        ChainIntegrityError: If the chain itself is violated.
    """
    tol = tol or default_tolerance()
    report = verify_chain(p, tol)
    if not report.ok:
        raise ChainIntegrityError(report)

    eps = tol.epsilon(p.energy)
    flags = tuple(
        BoundaryFlag(threshold=threshold, margin=p.energy - threshold.of(p))
        for threshold, _ in CHAIN
        if abs(p.energy - threshold.of(p)) <= eps
    )
    label = Subclass.G4
    for threshold, subclass in CHAIN:
        if p.energy <= threshold.of(p) + eps:
            label = subclass
            break
    return Classification(
        subclass=label,
        boundary_flags=flags,
        borderline=is_borderline(p, tol),
    )


def classify_graph(
    g: Annotated[Graph, "Graph"],
    tol: Optional[ToleranceConfig] = None,
    graph6: Optional[str] = None,
) -> ClassifiedGraph:
    """Profile and classify one connected graph.
    Raises:
        DisconnectedGraphError: If g is not connected.
        ChainIntegrityError: If the profile violates the chain.
    """
    graph6 = graph6 or to_graph6(g)
    if not is_connected(g):
        raise DisconnectedGraphError(graph6)
    p = energy_profile(g)
    try:
        result = classify(p, tol)
    except ChainIntegrityError as exc:
        logger.error(
            "Chain violated",
            extra={"graph6": graph6, "margins": exc.report.margins, **_trace_attrs()},
        )
        raise ChainIntegrityError(exc.report, graph6=graph6) from exc
    return ClassifiedGraph(
        graph6=graph6,
        profile=p,
        subclass=result.subclass,
        boundary_flags=result.boundary_flags,
        borderline=result.borderline,
    )


def classification_flips(
    profiles: Iterable[tuple[str, EnergyProfile]],
    tolerances: Sequence[ToleranceConfig],
) -> list[ClassificationFlip]:
    """Graphs whose class is not the same under every tolerance."""
    flips = []
    for graph6, p in profiles:
        labels = {f"{tol.eps_abs:g}": classify(p, tol).subclass for tol in tolerances}
        if len(set(labels.values())) > 1:
            logger.warning(
                "Class depends on tolerance",
                extra={"graph6": graph6, "labels": {k: v.value for k, v in labels.items()}, **_trace_attrs()},
            )
            flips.append(ClassificationFlip(graph6=graph6, labels=labels))
    return flips
