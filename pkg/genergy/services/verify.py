"""Property suites behind the ``verify`` command.

Each suite returns a VerifyReport; a suite never raises for a failed
property, it records the failing case so the caller can list all of them.
"""

import math
import os
import random
from functools import partial
from multiprocessing import Pool
from typing import Annotated, Optional, Sequence

from genergy.core.config import settings
from genergy.core.exceptions import IntegrityError
from genergy.core.telemetry import get_logger
from genergy.models.classify import ToleranceConfig
from genergy.models.closedform import Family
from genergy.models.verify import ChainTally, VerifyItem, VerifyReport
from genergy.services.census import REFERENCE_COUNTS, census_rows, conjecture_report
from genergy.services.classify import classification_flips, classify, default_tolerance, verify_chain
from genergy.services.closedform import (
    PREDICTION_MIN_ORDER,
    closed_values,
    direct_sum_cos,
    direct_sum_sin,
    family_graph,
    predicted_subclass,
    trig_sum_cos,
    trig_sum_sin,
)
from genergy.services.energy import profile
from genergy.services.enumerate import connected_graph6
from genergy.services.graph import is_threshold
from genergy.services.graph6 import parse_graph6
from genergy.utils.trace import _trace_attrs, traced_span

logger = get_logger(__name__)

EQUALITY_TOL = 1e-9
FORMULA_TOL = 1e-8
LEMMA_TOL = 1e-9
THRESHOLD_TOL = 1e-9
ROBUSTNESS_EPS = (1e-8, 1e-9, 1e-10)


def _theorem_item(
    case: tuple[Family, int],
    tol: ToleranceConfig,
    method: Optional[str],
) -> tuple[Family, int, VerifyItem, float]:
    """Check one family member; runs in worker processes."""
    family, n = case
    name = f"{family.value} n={n}"
    prediction = predicted_subclass(family, n)
    p = profile(family_graph(family, n), method)
    try:
        result = classify(p, tol)
    except IntegrityError as exc:
        return family, n, VerifyItem(name=name, passed=False, detail=str(exc)), 0.0

    problems = []
    worst = 0.0
    if result.subclass is not prediction.predicted:
        problems.append(f"class {result.subclass.value}, predicted {prediction.predicted.value}")
    flagged = {flag.threshold for flag in result.boundary_flags}
    if prediction.boundary_expected and prediction.boundary_expected not in flagged:
        problems.append(f"missing boundary {prediction.boundary_expected.label}")
    if prediction.equality_expected and abs(p.energy - p.ie) > EQUALITY_TOL:
        problems.append(f"|E - IE| = {abs(p.energy - p.ie):.3e}")
    for quantity, value in closed_values(family, n).items():
        error = abs(value - getattr(p, quantity))
        worst = max(worst, error)
        if error > FORMULA_TOL:
            problems.append(f"{quantity} closed form off by {error:.3e}")
    item = VerifyItem(name=name, passed=not problems, detail="; ".join(problems) or result.subclass.value)
    return family, n, item, worst


def theorems(
    max_n: Annotated[int, "Largest order"] = 200,
    tol: Optional[ToleranceConfig] = None,
    method: Optional[str] = None,
    jobs: Optional[int] = None,
) -> VerifyReport:
    """Check the family theorems for every covered order up to max_n.
    For each family member: the measured class equals the predicted one,
    expected boundary equalities are flagged, odd cycles have E = IE, and
    the closed forms agree with the eigensolver within 1e-8. Members are
    spread over worker processes, largest orders first.
    """
    tol = tol or default_tolerance()
    jobs = jobs or settings.JOBS or os.cpu_count() or 1
    cases = [(family, n) for family in Family for n in range(PREDICTION_MIN_ORDER[family], max_n + 1)]
    task = partial(_theorem_item, tol=tol, method=method)
    results = {}
    with traced_span("verify.theorems", max_n=max_n, jobs=jobs):
        if jobs > 1 and len(cases) > 1:
            with Pool(processes=jobs) as pool:
                for family, n, item, error in pool.imap_unordered(task, sorted(cases, key=lambda c: -c[1])):
                    results[family, n] = (item, error)
        else:
            for case in cases:
                family, n, item, error = task(case)
                results[family, n] = (item, error)
        items = tuple(results[case][0] for case in cases)
        max_error = max((results[case][1] for case in cases), default=0.0)
        logger.info(
            "Theorem suite finished",
            extra={"max_n": max_n, "items": len(items), "max_error": max_error, **_trace_attrs()},
        )
    return VerifyReport(suite="theorems", items=items, max_error=max_error)


def lemma(
    samples: Annotated[int, "Random triples"] = 1000,
    seed: Annotated[int, "RNG seed"] = 0,
) -> VerifyReport:
    """Compare the closed trigonometric sums with direct summation.
    theta is drawn from [0, 2pi), alpha from [0.01, 2pi - 0.01] and n from 0..500.
    """
    rng = random.Random(seed)
    failures = []
    max_error = 0.0
    with traced_span("verify.lemma", samples=samples, seed=seed):
        for _ in range(samples):
            theta = rng.uniform(0.0, 2.0 * math.pi)
            alpha = rng.uniform(0.01, 2.0 * math.pi - 0.01)
            n = rng.randint(0, 500)
            error = max(
                abs(trig_sum_cos(theta, alpha, n) - direct_sum_cos(theta, alpha, n)),
                abs(trig_sum_sin(theta, alpha, n) - direct_sum_sin(theta, alpha, n)),
            )
            max_error = max(max_error, error)
            if error > LEMMA_TOL:
                failures.append(
                    VerifyItem(
                        name=f"theta={theta!r} alpha={alpha!r} n={n}",
                        passed=False,
                        detail=f"error {error:.3e}",
                    )
                )
    summary = VerifyItem(
        name=f"{samples} random sums (seed {seed})",
        passed=not failures,
        detail=f"max error {max_error:.3e}",
    )
    return VerifyReport(suite="lemma", items=(summary, *failures), max_error=max_error)


def conjecture(
    max_n: Annotated[int, "Largest order"] = 8,
    jobs: Optional[int] = None,
    tol: Optional[ToleranceConfig] = None,
) -> VerifyReport:
    """Census orders 1..max_n, compare with the reference counts and attach the ratio trend."""
    with traced_span("verify.conjecture", max_n=max_n):
        rows = census_rows(range(1, max_n + 1), tol=tol, workers=jobs)
        items = []
        for row in rows:
            expected = REFERENCE_COUNTS.get(row.n)
            if expected is None:
                continue
            got = (row.total, *row.counts.values())
            items.append(
                VerifyItem(
                    name=f"census n={row.n}",
                    passed=got == expected,
                    detail=",".join(map(str, got)),
                )
            )
        trend = conjecture_report(rows) if len(rows) >= 2 else None
    return VerifyReport(suite="conjecture", items=tuple(items), trend=trend)


def _chain_chunk(forms: Sequence[str], tol: ToleranceConfig) -> ChainTally:
    tally = ChainTally()
    tolerances = [ToleranceConfig(eps_abs=eps, eps_rel=tol.eps_rel) for eps in ROBUSTNESS_EPS]
    profiles = []
    for text in forms:
        g = parse_graph6(text)
        p = profile(g)
        report = verify_chain(p, tol)
        threshold = is_threshold(g)
        tally = tally.merge(
            ChainTally(
                checked=1,
                min_margin=min(report.margins.values()),
                chain_failures=() if report.ok else (text,),
                threshold_graphs=int(threshold),
                threshold_failures=(text,) if threshold and abs(p.pi_star - p.lel) > THRESHOLD_TOL else (),
            )
        )
        if report.ok:
            profiles.append((text, p))
    flips = classification_flips(profiles, tolerances)
    return tally.merge(ChainTally(flips=tuple(flip.graph6 for flip in flips)))


def chain(
    max_n: Annotated[int, "Largest order"] = 8,
    jobs: Optional[int] = None,
    tol: Optional[ToleranceConfig] = None,
) -> VerifyReport:
    """Chain, threshold and tolerance-robustness properties over every connected graph.
    For each order: pi* <= LEL <= IE <= pi and E <= pi hold within tolerance,
    threshold graphs have pi* = LEL, and the class is the same for
    eps_abs in {1e-8, 1e-9, 1e-10}.
    """
    tol = tol or default_tolerance()
    jobs = jobs or settings.JOBS or os.cpu_count() or 1
    items = []
    worst = math.inf
    with traced_span("verify.chain", max_n=max_n, jobs=jobs):
        for n in range(1, max_n + 1):
            forms = connected_graph6(n, jobs)
            chunks = [forms[i : i + settings.CHUNK_SIZE] for i in range(0, len(forms), settings.CHUNK_SIZE)]
            task = partial(_chain_chunk, tol=tol)
            tally = ChainTally()
            if jobs > 1 and len(chunks) > 1:
                with Pool(processes=jobs) as pool:
                    for part in pool.imap_unordered(task, chunks):
                        tally = tally.merge(part)
            else:
                for chunk in chunks:
                    tally = tally.merge(task(chunk))
            worst = min(worst, tally.min_margin)
            items.extend(
                [
                    VerifyItem(
                        name=f"chain n={n}",
                        passed=not tally.chain_failures,
                        detail=", ".join(sorted(tally.chain_failures))
                        or f"{tally.checked} graphs, min margin {tally.min_margin:.3e}",
                    ),
                    VerifyItem(
                        name=f"threshold n={n}",
                        passed=not tally.threshold_failures,
                        detail=", ".join(sorted(tally.threshold_failures))
                        or f"{tally.threshold_graphs} threshold graphs",
                    ),
                    VerifyItem(
                        name=f"tolerance n={n}",
                        passed=not tally.flips,
                        detail=", ".join(sorted(tally.flips)) or "stable",
                    ),
                ]
            )
            logger.info(
                "Chain suite order done",
                extra={"n": n, "graphs": tally.checked, "min_margin": tally.min_margin, **_trace_attrs()},
            )
    return VerifyReport(suite="chain", items=tuple(items), max_error=max(0.0, -worst))
