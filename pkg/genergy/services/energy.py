import math
from typing import Annotated, Optional

from genergy.core.exceptions import SpectrumKindError
from genergy.models.energy import EnergyProfile
from genergy.models.graph import ConjugateDegreeSequence, DegreeSequence, Graph
from genergy.models.spectral import Spectrum, SpectrumKind
from genergy.services.graph import conjugate_degree_sequence, degree_sequence
from genergy.services.spectral import clamp, graph_spectrum


def _require(spec: Spectrum, kind: SpectrumKind) -> None:
    if spec.kind is not kind:
        raise SpectrumKindError(kind.value, spec.kind.value)


def _root_sum(values) -> float:
    return math.fsum(math.sqrt(max(clamp(x), 0.0)) for x in values)


def energy(spec: Annotated[Spectrum, "Adjacency spectrum"]) -> float:
    """E(G) = sum |lambda_i|."""
    _require(spec, SpectrumKind.adjacency)
    return math.fsum(abs(clamp(x)) for x in spec.values)


def laplacian_energy(
    spec: Annotated[Spectrum, "Laplacian spectrum"],
    n: int,
    m: int,
) -> float:
    """LE(G) = sum |mu_i - 2m/n|."""
    _require(spec, SpectrumKind.laplacian)
    mean = 2.0 * m / n
    return math.fsum(abs(clamp(x) - mean) for x in spec.values)


def lel(spec: Annotated[Spectrum, "Laplacian spectrum"]) -> float:
    """LEL(G) = sum sqrt(mu_i)."""
    _require(spec, SpectrumKind.laplacian)
    return _root_sum(spec.values)


def incidence_energy(spec: Annotated[Spectrum, "Signless Laplacian spectrum"]) -> float:
    """IE(G) = sum sqrt(q_i), the singular values of the incidence matrix."""
    _require(spec, SpectrumKind.signless_laplacian)
    return _root_sum(spec.values)


def pi_sum(d: Annotated[DegreeSequence, "Degree sequence"]) -> float:
    return math.fsum(math.sqrt(x) for x in d.values)


def pi_star_sum(dstar: Annotated[ConjugateDegreeSequence, "Conjugate degree sequence"]) -> float:
    return math.fsum(math.sqrt(x) for x in dstar.values)


def profile(g: Annotated[Graph, "Graph"], method: Optional[str] = None) -> EnergyProfile:
    """All six invariants of g from one set of spectra.
    Raises:
        ConvergenceError: If an eigensolve fails.
        SpectrumIntegrityError: If a spectrum breaks its trace identities.
    """
    d = degree_sequence(g)
    lap = graph_spectrum(g, SpectrumKind.laplacian, method)
    return EnergyProfile(
        n=g.n,
        m=g.m,
        energy=energy(graph_spectrum(g, SpectrumKind.adjacency, method)),
        laplacian_energy=laplacian_energy(lap, g.n, g.m),
        lel=lel(lap),
        ie=incidence_energy(graph_spectrum(g, SpectrumKind.signless_laplacian, method)),
        pi=pi_sum(d),
        pi_star=pi_star_sum(conjugate_degree_sequence(d)),
    )
