"""Spectrum and canonical pair decomposition of g-symmetric operators.

For every real eigenvalue the generalized eigenspace is split into blocks on
which A is a Jordan block J(lambda) and g is epsilon * Sip. The blocks are
built one at a time: pick a1 with g(N^(s-1) a1, a1) = epsilon, correct it
along its own Jordan chain so that the chain is g-isotropic except on the
anti-diagonal, then recurse on the g-orthogonal complement.
"""

from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg
from scipy.cluster import hierarchy

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConsistencyError,
    DegenerateFormError,
    HorizonError,
    IllConditionedError,
    SpectrumError,
    SymmetryError,
    ValidationError,
)
from .forms import as_form, inertia, restrict, sip_matrix
from .linalg import g_orthogonal_complement, kernel_chain, smallest_right_singular
from .models import (
    CanonicalBlock,
    CanonicalPairDecomposition,
    EigenvalueRecord,
    GSymmetricSystem,
)

_RADIUS_LADDER = 7


def validate(system: GSymmetricSystem, tolerances: Optional[Tolerances] = None) -> GSymmetricSystem:
    """Check that g is nondegenerate, A is g-symmetric and T is positive.

    Returns:
        The same system, for chaining

    Raises:
        DegenerateFormError, SymmetryError, HorizonError, ValidationError
    """
    tol = tolerances or DEFAULT_TOLERANCES
    g = as_form(system.G, tol.tol_sym)
    A = system.A
    if A.ndim != 2 or A.shape != (g.dim, g.dim):
        raise ValidationError(
            "dimension_match", f"A has shape {A.shape} but g has dimension {g.dim}"
        )
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(g.entries))):
        raise ValidationError("finite_entries", "g and A must have finite entries")

    g_inertia = inertia(g, tol.tol_inertia)
    if g_inertia.nullity:
        raise DegenerateFormError(
            "g_nondegenerate",
            f"g has nullity {g_inertia.nullity}",
            {"inertia": g_inertia.to_dict()},
        )

    gA = g.entries @ A
    residual = float(np.max(np.abs(gA - A.T @ g.entries)))
    scale = float(np.max(np.abs(gA)))
    if residual > tol.tol_sym * max(scale, 1e-300):
        raise SymmetryError(
            "g_symmetry",
            f"max|gA - A^T g| = {residual:.3e} exceeds {tol.tol_sym:.1e} * {scale:.3e}",
            {"residual": residual, "scale": scale},
        )

    if not (np.isfinite(system.T) and system.T > 0):
        raise HorizonError("horizon_positive", f"T must be positive and finite, got {system.T}")
    return system


def make_system(g, A, T: float, tolerances: Optional[Tolerances] = None) -> GSymmetricSystem:
    """Build and validate a system from plain matrices."""
    tol = tolerances or DEFAULT_TOLERANCES
    return validate(GSymmetricSystem(as_form(g, tol.tol_sym), A, T), tol)


def real_spectrum(
    system: GSymmetricSystem, tolerances: Optional[Tolerances] = None
) -> List[EigenvalueRecord]:
    """Clustered eigenvalues with algebraic and geometric multiplicities.

    Eigenvalues are grouped by single linkage at radii tol_eig * max(1, rho)
    widened by decades. A grouping is consistent if, at every cluster mean mu,
    the kernel chain of A - mu stabilizes at exactly the cluster size. The
    coarsest consistent grouping wins: rounding sprays a Jordan block into
    nearby simple eigenvalues that each pass the kernel check on their own,
    and only the merged cluster recovers the block.

    Returns:
        Real eigenvalues ascending, then non-real pairs (positive imaginary
        member) ordered by real then imaginary part.

    Raises:
        SpectrumError: If no radius yields a consistent clustering
    """
    tol = tolerances or DEFAULT_TOLERANCES
    A = system.A
    try:
        eigenvalues = linalg.eigvals(A)
    except (linalg.LinAlgError, ValueError) as exc:
        raise SpectrumError("eigen_solver", f"eigenvalue computation failed: {exc}")

    rho = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    base = tol.tol_eig * max(1.0, rho)
    accepted: Optional[List[EigenvalueRecord]] = None
    for step in range(_RADIUS_LADDER):
        records = _clustered_records(A, eigenvalues, base * 10.0 ** step, tol.tol_rank)
        if records is not None and (accepted is None or len(records) < len(accepted)):
            accepted = records
    if accepted is not None:
        return accepted

    try:
        _, vectors = linalg.eig(A)
        condition = float(np.linalg.cond(vectors))
    except linalg.LinAlgError:
        condition = float("inf")
    raise SpectrumError(
        "eigenvalue_clustering",
        "no clustering radius gives multiplicities consistent with kernel ranks",
        {"eigenvalues": eigenvalues, "eigenvector_condition": condition},
    )


def _clustered_records(
    A: np.ndarray, eigenvalues: np.ndarray, radius: float, tol_rank: float
) -> Optional[List[EigenvalueRecord]]:
    labels = _cluster_labels(eigenvalues, radius)
    real_records: List[EigenvalueRecord] = []
    complex_records: List[EigenvalueRecord] = []
    for label in np.unique(labels):
        members = eigenvalues[labels == label]
        mean = complex(np.mean(members))
        if abs(mean.imag) <= radius:
            value = mean.real
            shifted = A - value * np.eye(A.shape[0])
        elif mean.imag > 0:
            value = mean
            shifted = A.astype(complex) - value * np.eye(A.shape[0])
        else:
            continue
        dims, _ = kernel_chain(shifted, tol_rank)
        if not dims or dims[-1] != members.size:
            return None
        record = EigenvalueRecord(
            value=value,
            algebraic_multiplicity=int(members.size),
            geometric_multiplicity=int(dims[0]),
            is_real=not isinstance(value, complex),
        )
        (real_records if record.is_real else complex_records).append(record)

    total = sum(r.algebraic_multiplicity for r in real_records)
    total += 2 * sum(r.algebraic_multiplicity for r in complex_records)
    if total != A.shape[0]:
        return None
    real_records.sort(key=lambda r: r.value)
    complex_records.sort(key=lambda r: (r.value.real, r.value.imag))
    return real_records + complex_records


def _cluster_labels(eigenvalues: np.ndarray, radius: float) -> np.ndarray:
    if eigenvalues.size == 1:
        return np.ones(1, dtype=int)
    if eigenvalues.size == 2:
        # linkage mistakes a 2 x 2 observation matrix for a distance matrix
        return np.array([1, 1 if abs(eigenvalues[0] - eigenvalues[1]) <= radius else 2])
    points = np.column_stack([eigenvalues.real, eigenvalues.imag])
    tree = hierarchy.linkage(points, method="single")
    return hierarchy.fcluster(tree, t=radius, criterion="distance")


def generalized_eigenspace(
    system: GSymmetricSystem, eigenvalue: float, tolerances: Optional[Tolerances] = None
) -> Tuple[np.ndarray, List[int]]:
    """Orthonormal basis of Ker(A - lambda)^n and the kernel dimension chain."""
    tol = tolerances or DEFAULT_TOLERANCES
    shifted = system.A - eigenvalue * np.eye(system.dim)
    dims, bases = kernel_chain(shifted, tol.tol_rank)
    if not dims or dims[-1] == 0:
        return np.zeros((system.dim, 0)), [0]
    return bases[-1], dims


def eigenspace(
    system: GSymmetricSystem, eigenvalue: float, tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """Orthonormal basis of Ker(A - lambda)."""
    tol = tolerances or DEFAULT_TOLERANCES
    shifted = system.A - eigenvalue * np.eye(system.dim)
    dims, bases = kernel_chain(shifted, tol.tol_rank)
    if not dims or dims[0] == 0:
        return np.zeros((system.dim, 0))
    return bases[0]


def canonical_pair(
    system: GSymmetricSystem, eigenvalue: float, tolerances: Optional[Tolerances] = None
) -> List[CanonicalBlock]:
    """Canonical blocks of a real eigenvalue.

    Args:
        system: Validated system
        eigenvalue: Real eigenvalue of A (a clustered value from real_spectrum)
        tolerances: Rank and reconstruction tolerances

    Returns:
        Blocks sorted by descending size then descending epsilon

    Raises:
        ValidationError: If lambda is not an eigenvalue
        IllConditionedError: If every candidate a1 is nearly g-isotropic for
            g(N^(s-1) ., .), or the blocks fail their reconstruction checks
    """
    tol = tolerances or DEFAULT_TOLERANCES
    G = system.G
    n = system.dim
    shifted = system.A - eigenvalue * np.eye(n)
    scale = float(np.linalg.norm(shifted, 2))
    dims, bases = kernel_chain(shifted, tol.tol_rank, scale)
    if not dims or dims[0] == 0:
        raise ValidationError(
            "eigenvalue_membership", f"{eigenvalue!r} is not an eigenvalue of A"
        )
    geometric = dims[0]
    current = bases[-1]
    blocks: List[CanonicalBlock] = []

    while current.shape[1] > 0:
        local_n = current.T @ shifted @ current
        local_g = current.T @ G @ current
        chain_dims, _ = kernel_chain(local_n, tol.tol_rank, scale)
        if chain_dims[-1] != current.shape[1]:
            raise IllConditionedError(
                "nilpotent_restriction",
                f"A - lambda is not nilpotent on the remaining generalized eigenspace of "
                f"lambda={eigenvalue:.6g}; adjust tol_rank",
            )
        s = len(chain_dims)
        top = np.linalg.matrix_power(local_n, s - 1)

        pairing = top.T @ local_g
        pairing = (pairing + pairing.T) / 2.0
        values, vectors = linalg.eigh(pairing)
        pick = int(np.argmax(np.abs(values)))
        threshold = tol.tol_rank * max(1.0, float(np.max(np.abs(local_g)))) * max(1.0, scale) ** (s - 1)
        if abs(values[pick]) <= threshold:
            raise IllConditionedError(
                "canonical_normalization",
                f"all candidates for lambda={eigenvalue:.6g} are nearly isotropic "
                f"(max |B(a,a)| = {abs(values[pick]):.3e}); adjust tol_eig or tol_rank",
                {"eigenvalue": eigenvalue, "max_pairing": float(abs(values[pick]))},
            )
        epsilon = 1 if values[pick] > 0 else -1
        a1 = vectors[:, pick] / np.sqrt(abs(values[pick]))

        powers = [np.linalg.matrix_power(local_n, j) for j in range(s)]
        chain = [p @ a1 for p in powers]
        alpha = np.zeros(s + 1)
        for j in range(s - 1, 0, -1):
            index = s - j + 1
            b1 = a1 + sum(alpha[k] * chain[k - 1] for k in range(2, s + 1))
            residual = float(b1 @ local_g @ (powers[j - 1] @ b1))
            alpha[index] = -residual / (2.0 * epsilon)
        b1 = a1 + sum(alpha[k] * chain[k - 1] for k in range(2, s + 1))
        local_basis = np.column_stack([powers[s - j] @ b1 for j in range(1, s + 1)])

        blocks.append(CanonicalBlock(eigenvalue, s, epsilon, current @ local_basis))
        remaining = current.shape[1] - s
        complement = smallest_right_singular(local_basis.T @ local_g, remaining)
        current = current @ complement

    if len(blocks) != geometric:
        raise IllConditionedError(
            "block_count",
            f"{len(blocks)} blocks built for lambda={eigenvalue:.6g} with geometric "
            f"multiplicity {geometric}; adjust tol_rank",
        )
    blocks.sort(key=lambda b: (-b.size, -b.epsilon))
    for block in blocks:
        _check_block(system, block, tol.tol_recon)
    return blocks


def jordan_block(eigenvalue: float, size: int) -> np.ndarray:
    """J_size(lambda) with ones on the superdiagonal."""
    return eigenvalue * np.eye(size) + np.eye(size, k=1)


def _check_block(system: GSymmetricSystem, block: CanonicalBlock, tol_recon: float) -> None:
    basis = block.basis
    width = max(1.0, float(np.linalg.norm(basis, 2)))
    action = system.A @ basis - basis @ jordan_block(block.eigenvalue, block.size)
    action_error = float(np.max(np.abs(action))) / (max(1.0, float(np.linalg.norm(system.A, 2))) * width)
    gram = basis.T @ system.G @ basis - block.epsilon * sip_matrix(block.size).entries
    gram_error = float(np.max(np.abs(gram))) / width ** 2
    if action_error > tol_recon or gram_error > tol_recon:
        raise IllConditionedError(
            "canonical_reconstruction",
            f"block (lambda={block.eigenvalue:.6g}, size={block.size}) residuals "
            f"{action_error:.2e}/{gram_error:.2e} exceed {tol_recon:.1e}",
            {"action_error": action_error, "gram_error": gram_error},
        )


def decompose(
    system: GSymmetricSystem, tolerances: Optional[Tolerances] = None
) -> CanonicalPairDecomposition:
    """Canonical pairs for every real eigenvalue plus the complex remainder."""
    tol = tolerances or DEFAULT_TOLERANCES
    spectrum = real_spectrum(system, tol)
    real_blocks: List[CanonicalBlock] = []
    for record in spectrum:
        if not record.is_real:
            continue
        blocks = canonical_pair(system, record.value, tol)
        total_size = sum(b.size for b in blocks)
        if total_size != record.algebraic_multiplicity:
            raise IllConditionedError(
                "block_sizes",
                f"blocks of lambda={record.value:.6g} cover {total_size} dimensions, "
                f"algebraic multiplicity is {record.algebraic_multiplicity}",
            )
        odd_signature = sum(b.epsilon for b in blocks if b.size % 2)
        if abs(odd_signature) > record.geometric_multiplicity:
            raise ConsistencyError(
                "signature_bound",
                f"|sigma| = {abs(odd_signature)} exceeds geometric multiplicity "
                f"{record.geometric_multiplicity}",
            )
        real_blocks.extend(blocks)

    if real_blocks:
        block_columns = np.column_stack([b.basis for b in real_blocks])
    else:
        block_columns = np.zeros((system.dim, 0))
    complement = g_orthogonal_complement(system.G, block_columns)
    return CanonicalPairDecomposition(
        spectrum=spectrum,
        real_blocks=real_blocks,
        complex_summary=[r for r in spectrum if not r.is_real],
        complement_basis=complement,
    )


def reconstruction_residuals(
    system: GSymmetricSystem, decomposition: CanonicalPairDecomposition
) -> Tuple[float, float]:
    """Residuals of P^-1 A P and P^T G P against the canonical shape.

    Only the real-block part is compared; the complement block of P^-1 A P is
    whatever A does there.
    """
    blocks = decomposition.real_blocks
    if not blocks:
        return 0.0, 0.0
    P = np.column_stack([b.basis for b in blocks] + [decomposition.complement_basis])
    k = sum(b.size for b in blocks)
    expected_a = linalg.block_diag(*[jordan_block(b.eigenvalue, b.size) for b in blocks])
    expected_g = linalg.block_diag(*[b.epsilon * sip_matrix(b.size).entries for b in blocks])
    conjugated = np.linalg.solve(P, system.A @ P)
    gram = P.T @ system.G @ P
    action = float(np.max(np.abs(conjugated[:, :k] - np.vstack([expected_a, np.zeros((P.shape[1] - k, k))]))))
    form = float(np.max(np.abs(gram[:k, :] - np.hstack([expected_g, np.zeros((k, P.shape[1] - k))]))))
    return action, form


def eigenspace_form(system: GSymmetricSystem, eigenvalue: float, tolerances: Optional[Tolerances] = None):
    """g restricted to Ker(A - lambda)."""
    return restrict(system.g, eigenspace(system, eigenvalue, tolerances))
