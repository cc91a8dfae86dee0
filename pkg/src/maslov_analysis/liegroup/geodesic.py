"""Conjugate points along geodesics t -> exp(tX) of a bi-invariant metric.

Jacobi fields along the geodesic satisfy Y'' = (1/4) ad_X^2 Y, a second
order system symmetric for h, so the closed forms of the core modules apply
directly with g = h and A = (1/4) ad_X^2.
"""

import math
from dataclasses import replace
from typing import List, Optional, Sequence

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..conjugate import conjugate_instants
from ..errors import BiInvarianceError, ConsistencyError, SymmetryError
from ..forms import inertia, restrict
from ..jordan import decompose, make_system
from ..maslov import instant_contribution, maslov_index
from ..models import ConjugateInstant, GSymmetricSystem
from .algebra import (
    ad_operator,
    change_basis,
    char_poly_minors,
    char_poly_pfaffian,
    check_identities,
    eigenplane,
    imaginary_ad_spectrum,
    orthonormal_frame_for,
    validate_algebra,
)
from .models import GeodesicInstant, GeodesicReport, LieAlgebraSpec

_ROUTE_TOLERANCE = 1e-6
_POLY_TOLERANCE = 1e-9


def jacobi_system(
    spec: LieAlgebraSpec,
    direction: Sequence[float],
    T: float,
    tolerances: Optional[Tolerances] = None,
) -> GSymmetricSystem:
    """The Jacobi equation along exp(tX) as (g = h, A = ad_X^2 / 4, T).

    Raises:
        BiInvarianceError: If A fails to be h-symmetric
    """
    tol = tolerances or DEFAULT_TOLERANCES
    ad = ad_operator(spec, direction)
    try:
        return make_system(spec.metric, 0.25 * ad @ ad, T, tol)
    except SymmetryError as exc:
        raise BiInvarianceError(
            "bi_invariance", f"Jacobi operator is not h-symmetric: {exc.message}", exc.details
        ) from exc


def spectral_instants(
    ad: np.ndarray, T: float, tolerances: Optional[Tolerances] = None
) -> List[float]:
    """t0 in (0, T] with 2 k i pi / t0 an eigenvalue of ad_X."""
    tol = tolerances or DEFAULT_TOLERANCES
    times = []
    for beta in imaginary_ad_spectrum(ad):
        k_max = int(math.floor(T * (1.0 + tol.tol_merge) * beta / (2.0 * math.pi)))
        times.extend(2.0 * k * math.pi / beta for k in range(1, k_max + 1))
    times.sort()
    merged: List[float] = []
    for t in times:
        if not merged or t - merged[-1] > tol.tol_merge * T:
            merged.append(t)
    return merged


def _check_spectral_route(
    instants: Sequence[ConjugateInstant], spectral: Sequence[float], T: float
) -> None:
    from_a = [i.t for i in instants]
    band = _ROUTE_TOLERANCE * T
    if len(from_a) != len(spectral) or any(abs(x - y) > band for x, y in zip(from_a, spectral)):
        raise ConsistencyError(
            "spectral_route",
            "instants from ad_X^2 / 4 and from the imaginary ad-spectrum differ",
            {"from_jacobi_operator": from_a, "from_ad_spectrum": list(spectral)},
        )


def _check_poly(name: str, computed: np.ndarray, direct: np.ndarray) -> None:
    scale = max(1.0, float(np.max(np.abs(direct))))
    gap = float(np.max(np.abs(computed - direct)))
    if gap > _POLY_TOLERANCE * scale:
        raise ConsistencyError(
            name,
            f"characteristic polynomial differs from numpy.poly(ad) by {gap:.2e}",
            {"computed": computed, "direct": direct},
        )


def geodesic_report(
    spec: LieAlgebraSpec,
    direction: Sequence[float],
    T: float,
    tolerances: Optional[Tolerances] = None,
) -> GeodesicReport:
    """Conjugate instants, multiplicities and Maslov contributions along exp(tX).

    Every multiplicity must be even, and the instants must match the
    imaginary spectrum of ad_X. For a non-null X the basis is rotated so
    that X / |X| is its last vector; the sub-Pfaffian expansion of the
    characteristic polynomial is compared to numpy.poly, and when the
    quadratic identities hold so is the closed form. If in addition the
    pair +-i alpha is nonzero, every instant must be nondegenerate with
    multiplicity 2 and contribution +-2, and h must be definite on the
    eigenplane.

    Raises:
        ConsistencyError: If any of these checks fails
    """
    tol = tolerances or DEFAULT_TOLERANCES
    validate_algebra(spec, tol)
    x = np.asarray(direction, dtype=float)
    ad = ad_operator(spec, x)
    system = jacobi_system(spec, x, T, tol)
    decomposition = decompose(system, tol)
    instants = conjugate_instants(system, decomposition.spectrum, tol)
    maslov = maslov_index(system, decomposition, instants, tol)

    geodesic_instants = []
    for instant in instants:
        # sigma(h | W~) even when the instant is final
        sigma = instant_contribution(decomposition, replace(instant, is_final=False))
        geodesic_instants.append(
            GeodesicInstant(
                t=instant.t,
                multiplicity=instant.multiplicity,
                degenerate=instant.degenerate,
                contribution=sigma,
                local_injectivity_broken=sigma != 0,
            )
        )
    odd = [i.t for i in geodesic_instants if i.multiplicity % 2]
    if odd:
        raise ConsistencyError(
            "even_multiplicity", f"odd multiplicity at t = {odd}", {"instants": odd}
        )
    spectral = spectral_instants(ad, T, tol)
    _check_spectral_route(instants, spectral, T)

    report = GeodesicReport(
        direction=x,
        ad_matrix=ad,
        system=system,
        decomposition=decomposition,
        maslov=maslov,
        instants=geodesic_instants,
        spectral_instants=spectral,
    )

    norm = float(x @ spec.metric @ x)
    if abs(norm) <= tol.tol_rank * max(1.0, float(x @ x)):
        return report

    rotated = change_basis(spec, orthonormal_frame_for(spec, x, tol), tol)
    unit = np.zeros(spec.dim)
    unit[-1] = 1.0
    direct = np.real(np.poly(ad_operator(rotated, unit)))
    minors = char_poly_minors(rotated)
    _check_poly("char_poly_minors", minors, direct)
    report.identities_hold = check_identities(rotated, tolerances=tol)
    if not report.identities_hold:
        report.char_poly = minors.tolist()
        return report

    closed = char_poly_pfaffian(rotated, tolerances=tol)
    _check_poly("char_poly_pfaffian", closed, direct)
    report.char_poly = closed.tolist()
    if closed[2] <= tol.tol_eig * max(1.0, float(np.max(np.abs(closed)))):
        return report

    plane = eigenplane(spec, x, tol)
    plane_inertia = inertia(restrict(spec.metric, plane, tol.tol_rank), tol.tol_inertia)
    report.eigenplane_inertia = plane_inertia.to_dict()
    if plane_inertia.nullity or abs(plane_inertia.signature) != plane.shape[1]:
        raise ConsistencyError(
            "eigenplane_definite",
            f"h is not definite on the eigenplane: {plane_inertia.to_dict()}",
        )
    for instant in geodesic_instants:
        if instant.degenerate or instant.multiplicity != 2 or abs(instant.contribution) != 2:
            raise ConsistencyError(
                "low_dimension_refinement",
                f"instant t={instant.t:.6g} should be nondegenerate with multiplicity 2 "
                f"and contribution +-2, got {instant.to_dict()}",
            )
    return report
