"""Closed form Conley-Zehnder index i_CZ(g, A, T).

The generalized kernel W = Ker(A^n) is split off first. On its
g-orthogonal complement A is invertible and the graph of Phi(t) meets the
diagonal only at t = 2 k pi / sqrt(|lambda|). The kernel part contributes a
fixed correction computed from the lambda = 0 canonical blocks.
"""

import math
from typing import List, Optional, Sequence, Tuple

from .config import DEFAULT_TOLERANCES, Tolerances
from .conjugate import negative_eigenvalues, spectral_radius
from .errors import ConsistencyError
from .forms import inertia
from .models import (
    CanonicalBlock,
    CanonicalPairDecomposition,
    CZBreakdown,
    EigenvalueRecord,
    GSymmetricSystem,
    NontransversalInstant,
    NontransversalSet,
)
from .signatures import block_varsigma, generalized_signature, jordan_signatures


def zero_eigenvalue(
    spectrum: Sequence[EigenvalueRecord], tol_eig: float = DEFAULT_TOLERANCES.tol_eig
) -> Optional[EigenvalueRecord]:
    """The clustered record of lambda = 0, if A is singular."""
    band = tol_eig * max(1.0, spectral_radius(spectrum))
    for record in spectrum:
        if record.is_real and abs(record.value) <= band:
            return record
    return None


def _diagonal_instants(
    spectrum: Sequence[EigenvalueRecord], T: float, tol: Tolerances
) -> List[NontransversalInstant]:
    instants = []
    for record in negative_eigenvalues(spectrum, tol.tol_eig):
        alpha = math.sqrt(-record.value)
        k_max = int(math.floor(T * (1.0 + tol.tol_merge) * alpha / (2.0 * math.pi)))
        for k in range(1, k_max + 1):
            instants.append(NontransversalInstant(2.0 * k * math.pi / alpha, record.value, k))
    instants.sort(key=lambda i: (i.t, i.eigenvalue))
    return instants


def nontransversal_instants(
    spectrum: Sequence[EigenvalueRecord], T: float, tolerances: Optional[Tolerances] = None
) -> NontransversalSet:
    """Instants in (0, T] where Gr(Phi(t)) is not transversal to the diagonal.

    When 0 is an eigenvalue every instant is nontransversal; the result is
    then flagged ``continuum`` and lists nothing. Callers reduce first.
    """
    tol = tolerances or DEFAULT_TOLERANCES
    if zero_eigenvalue(spectrum, tol.tol_eig) is not None:
        return NontransversalSet(continuum=True)
    return NontransversalSet(continuum=False, instants=tuple(_diagonal_instants(spectrum, T, tol)))


def _group_by_instant(
    instants: Sequence[NontransversalInstant], band: float
) -> List[List[NontransversalInstant]]:
    groups: List[List[NontransversalInstant]] = []
    for instant in instants:
        if groups and instant.t - groups[-1][0].t <= band:
            groups[-1].append(instant)
        else:
            groups.append([instant])
    return groups


def kernel_positive_index(blocks: Sequence[CanonicalBlock]) -> int:
    """n_plus(g | Ker A^n) from the lambda = 0 blocks."""
    return sum(b.size - block_varsigma(b.size, b.epsilon) for b in blocks)


def kernel_correction(
    blocks: Sequence[CanonicalBlock], geometric_multiplicity: int
) -> int:
    """-varrho(g, A, 0) - n_plus(g | Ker A^n).

    Also evaluates the equivalent form dim Ker A - dim Ker A^n - tau(g, A, 0)
    and raises ConsistencyError if the two differ.
    """
    if not blocks:
        return 0
    signatures = jordan_signatures(blocks)
    correction = -signatures.varrho - kernel_positive_index(blocks)
    algebraic = sum(b.size for b in blocks)
    alternative = geometric_multiplicity - algebraic - signatures.tau
    if correction != alternative:
        raise ConsistencyError(
            "kernel_correction_forms",
            f"-varrho - n_plus = {correction} but dim Ker A - dim Ker A^n - tau = {alternative}",
            {"first_form": correction, "second_form": alternative},
        )
    return correction


def cz_index(
    system: GSymmetricSystem,
    decomposition: CanonicalPairDecomposition,
    tolerances: Optional[Tolerances] = None,
) -> CZBreakdown:
    """Conley-Zehnder index with the generalized kernel split off.

    Args:
        system: Validated system
        decomposition: Its canonical pair decomposition

    Returns:
        CZBreakdown whose initial_contribution already holds the kernel
        correction
    """
    tol = tolerances or DEFAULT_TOLERANCES
    spectrum = decomposition.spectrum
    T = system.T
    band = tol.tol_merge * T

    zero = zero_eigenvalue(spectrum, tol.tol_eig)
    zero_blocks = decomposition.blocks_for(zero.value) if zero is not None else []
    correction = kernel_correction(zero_blocks, zero.geometric_multiplicity if zero else 0)

    # n_plus of g on the complement of the generalized kernel
    reduced_positive = inertia(system.g, tol.tol_inertia).n_plus - kernel_positive_index(zero_blocks)
    positive_signature = sum(
        generalized_signature(decomposition.blocks_for(value))
        for value in decomposition.real_eigenvalues
        if value > 0 and (zero is None or value != zero.value)
    )
    initial = -2 * reduced_positive + positive_signature + correction

    instants = _diagonal_instants(spectrum, T, tol)
    interior: List[Tuple[float, int]] = []
    final = 0
    for group in _group_by_instant(instants, band):
        t = sum(i.t for i in group) / len(group)
        if abs(t - T) <= band:
            for instant in group:
                blocks = decomposition.blocks_for(instant.eigenvalue)
                geometric = decomposition.record_for(instant.eigenvalue).geometric_multiplicity
                final += 2 * (geometric - jordan_signatures(blocks).tau)
        else:
            interior.append(
                (t, -2 * sum(generalized_signature(decomposition.blocks_for(i.eigenvalue)) for i in group))
            )

    total = initial + sum(c for _, c in interior) + final
    return CZBreakdown(
        nontransversal_set=tuple(instants),
        initial_contribution=initial,
        interior_contributions=tuple(interior),
        final_contribution=final,
        kernel_correction=correction,
        total=total,
    )
