"""Closed form Maslov index mu(g, A, T).

Interior instants contribute the signature of g on the generalized
eigenspaces of their eigenvalues; an instant at T contributes tau instead.
The path starts on the Maslov cycle, which costs n_minus(g).
"""

from typing import Optional, Sequence

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ConsistencyError, ValidationError
from .forms import inertia
from .models import (
    CanonicalPairDecomposition,
    ConjugateInstant,
    GSymmetricSystem,
    InstantContribution,
    MaslovBreakdown,
)
from .signatures import generalized_signature, jordan_signatures


def instant_contribution(
    decomposition: CanonicalPairDecomposition, instant: ConjugateInstant
) -> int:
    """Contribution mu_t of one conjugate instant.

    Args:
        decomposition: Canonical pairs of the system the instant came from
        instant: A conjugate instant

    Returns:
        Sum over contributors of sigma(g | Ker(A - lambda)^n), or of
        tau(g, A, lambda) when the instant is final

    Raises:
        ValidationError: If a contributor has no canonical blocks in the
            decomposition
    """
    total = 0
    for contributor in instant.contributors:
        blocks = decomposition.blocks_for(contributor.eigenvalue)
        if not blocks:
            raise ValidationError(
                "instant_system_match",
                f"contributor lambda={contributor.eigenvalue:.6g} of t={instant.t:.6g} "
                "has no canonical blocks in this decomposition",
            )
        if instant.is_final:
            total += jordan_signatures(blocks).tau
        else:
            total += generalized_signature(blocks)
    return total


def maslov_index(
    system: GSymmetricSystem,
    decomposition: CanonicalPairDecomposition,
    instants: Sequence[ConjugateInstant],
    tolerances: Optional[Tolerances] = None,
) -> MaslovBreakdown:
    tol = tolerances or DEFAULT_TOLERANCES
    per_instant = []
    for instant in instants:
        contribution = instant_contribution(decomposition, instant)
        if abs(contribution) > instant.multiplicity:
            raise ConsistencyError(
                "contribution_bound",
                f"|contribution| = {abs(contribution)} at t={instant.t:.6g} exceeds "
                f"multiplicity {instant.multiplicity}",
            )
        per_instant.append(InstantContribution(instant, contribution))

    initial = -inertia(system.g, tol.tol_inertia).n_minus
    total = sum(c.contribution for c in per_instant) + initial
    final_multiplicity = sum(i.multiplicity for i in instants if i.is_final)
    return MaslovBreakdown(
        per_instant=tuple(per_instant),
        initial_correction=initial,
        total=total,
        rs_value=total + system.dim / 2.0 - final_multiplicity / 2.0,
    )


def alternative_convention(breakdown: MaslovBreakdown) -> int:
    """Index of the path restricted to [epsilon, T]: mu(g, A, T) + n_minus(g)."""
    return breakdown.total - breakdown.initial_correction
