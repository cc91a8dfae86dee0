"""Conjugate instants of v'' = A v on (0, T]."""

import math
from typing import List, Optional, Sequence, Tuple

from .config import DEFAULT_TOLERANCES, Tolerances
from .models import ConjugateInstant, Contributor, EigenvalueRecord, GSymmetricSystem


def negative_eigenvalues(
    spectrum: Sequence[EigenvalueRecord], tol_eig: float = DEFAULT_TOLERANCES.tol_eig
) -> List[EigenvalueRecord]:
    """Real eigenvalues below -tol_eig * max(1, rho)."""
    rho = spectral_radius(spectrum)
    cutoff = -tol_eig * max(1.0, rho)
    return [r for r in spectrum if r.is_real and r.value < cutoff]


def spectral_radius(spectrum: Sequence[EigenvalueRecord]) -> float:
    return max((abs(r.value) for r in spectrum), default=0.0)


def _instant_count(T: float, eigenvalue: float, tol_merge: float) -> int:
    return int(math.floor(T * (1.0 + tol_merge) * math.sqrt(-eigenvalue) / math.pi))


def conjugate_instants(
    system: GSymmetricSystem,
    spectrum: Sequence[EigenvalueRecord],
    tolerances: Optional[Tolerances] = None,
) -> List[ConjugateInstant]:
    """All t = k pi / sqrt(|lambda|) in (0, T] for real negative lambda.

    Instants closer than tol_merge * T are merged and their contributors
    concatenated. An instant within the same band of T is final.
    """
    tol = tolerances or DEFAULT_TOLERANCES
    T = system.T
    band = tol.tol_merge * T
    candidates: List[Tuple[float, EigenvalueRecord, int]] = []
    for record in negative_eigenvalues(spectrum, tol.tol_eig):
        alpha = math.sqrt(-record.value)
        for k in range(1, _instant_count(T, record.value, tol.tol_merge) + 1):
            candidates.append((k * math.pi / alpha, record, k))
    candidates.sort(key=lambda item: (item[0], item[1].value))

    groups: List[List[Tuple[float, EigenvalueRecord, int]]] = []
    for item in candidates:
        if groups and item[0] - groups[-1][0][0] <= band:
            groups[-1].append(item)
        else:
            groups.append([item])

    instants = []
    for group in groups:
        t = sum(item[0] for item in group) / len(group)
        instants.append(
            ConjugateInstant(
                t=t,
                contributors=tuple(Contributor(r.value, k) for _, r, k in group),
                multiplicity=sum(r.geometric_multiplicity for _, r, _ in group),
                degenerate=any(
                    r.algebraic_multiplicity != r.geometric_multiplicity for _, r, _ in group
                ),
                is_final=abs(t - T) <= band,
            )
        )
    return instants


def count_formula(
    spectrum: Sequence[EigenvalueRecord],
    T: float,
    tolerances: Optional[Tolerances] = None,
) -> int:
    """Sum over real negative lambda of dim Ker(A - lambda) * [T sqrt|lambda| / pi]."""
    tol = tolerances or DEFAULT_TOLERANCES
    return sum(
        r.geometric_multiplicity * _instant_count(T, r.value, tol.tol_merge)
        for r in negative_eigenvalues(spectrum, tol.tol_eig)
    )


def no_accumulation_margin(
    instants: Sequence[ConjugateInstant], spectrum: Sequence[EigenvalueRecord]
) -> Optional[float]:
    """Distance of the first instant above pi / sqrt(rho); None without instants."""
    if not instants:
        return None
    return instants[0].t - math.pi / math.sqrt(spectral_radius(spectrum))
