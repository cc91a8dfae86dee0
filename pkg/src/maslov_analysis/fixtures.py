"""Named and random g-symmetric systems and symplectic coefficients.

Random systems are assembled from canonical blocks (epsilon * Sip, J(lambda))
and 2 x 2 complex pairs, then conjugated by a well conditioned random
matrix. Eigenvalues stay in [-6, 2], horizons in [1, 8], and distinct
conjugate instants stay at least 0.05 apart from each other and from T so
that grid based crossing detection resolves them. The final instant
generator puts T on an instant on purpose.
"""

import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .forms import sip_matrix
from .jordan import jordan_block
from .models import GSymmetricSystem, SymplecticCoefficient

# (eigenvalue, size, epsilon)
BlockData = Tuple[float, int, int]
# (real part, positive imaginary part)
PairData = Tuple[float, float]

MIN_EIGENVALUE = -6.0
MAX_EIGENVALUE = 2.0
MAX_HORIZON = 8.0
MIN_SEPARATION = 0.05
_MAX_TRIES = 200


def canonical_system(
    blocks: Sequence[BlockData], pairs: Sequence[PairData] = (), T: float = 1.0
) -> GSymmetricSystem:
    """Block diagonal system in canonical form."""
    g_parts: List[np.ndarray] = []
    a_parts: List[np.ndarray] = []
    for eigenvalue, size, epsilon in blocks:
        g_parts.append(epsilon * sip_matrix(size).entries)
        a_parts.append(jordan_block(eigenvalue, size))
    for re, im in pairs:
        g_parts.append(np.diag([1.0, -1.0]))
        a_parts.append(np.array([[re, im], [-im, re]]))
    return GSymmetricSystem(linalg.block_diag(*g_parts), linalg.block_diag(*a_parts), T)


def conjugate_system(system: GSymmetricSystem, basis: np.ndarray) -> GSymmetricSystem:
    """(P^T g P, P^-1 A P); the canonical data is unchanged."""
    P = np.asarray(basis, dtype=float)
    g = P.T @ system.G @ P
    return GSymmetricSystem((g + g.T) / 2.0, np.linalg.solve(P, system.A @ P), system.T)


def random_basis(rng: np.random.Generator, n: int, spread: Tuple[float, float] = (0.6, 1.6)) -> np.ndarray:
    """Q1 diag(s) Q2 with orthogonal Q1, Q2 and singular values in ``spread``."""
    q1, _ = np.linalg.qr(rng.standard_normal((n, n)))
    q2, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return q1 @ np.diag(rng.uniform(*spread, size=n)) @ q2


def instant_times(eigenvalues: Sequence[float], T: float) -> List[Tuple[float, float]]:
    """(t, lambda) for k pi / sqrt|lambda| in (0, T], every distinct negative lambda."""
    times = []
    for value in sorted(set(eigenvalues)):
        if value >= 0:
            continue
        alpha = math.sqrt(-value)
        k = 1
        while k * math.pi / alpha <= T:
            times.append((k * math.pi / alpha, value))
            k += 1
    times.sort()
    return times


def resolvable(
    eigenvalues: Sequence[float],
    T: float,
    gap: float = MIN_SEPARATION,
    final: Optional[float] = None,
) -> bool:
    """Whether distinct instants, and T, are at least ``gap`` apart.

    Instants of the eigenvalue ``final`` are allowed to sit at T.
    """
    times = instant_times(eigenvalues, T)
    if any(T - t < gap for t, value in times if value != final):
        return False
    return all(
        b[0] - a[0] >= gap for a, b in zip(times, times[1:]) if a[1] != b[1]
    )


def _random_eigenvalue(rng: np.random.Generator, used: Sequence[float]) -> float:
    if used and rng.random() < 0.25:
        return float(rng.choice(used))
    while True:
        value = float(rng.uniform(MIN_EIGENVALUE, MAX_EIGENVALUE))
        if abs(value) >= 0.1 and all(abs(value - u) >= 0.05 for u in used):
            return value


def random_canonical_data(
    rng: np.random.Generator,
    dim: int,
    max_block: int = 2,
    with_pairs: bool = True,
    singular: bool = False,
    definite: bool = False,
) -> Tuple[List[BlockData], List[PairData]]:
    blocks: List[BlockData] = []
    pairs: List[PairData] = []
    remaining = dim
    if singular:
        size = int(rng.integers(1, min(max_block, remaining) + 1))
        blocks.append((0.0, size, int(rng.choice([-1, 1]))))
        remaining -= size
    used: List[float] = []
    while remaining:
        if with_pairs and not definite and remaining >= 2 and rng.random() < 0.2:
            pairs.append((float(rng.uniform(-2.0, 2.0)), float(rng.uniform(0.3, 3.0))))
            remaining -= 2
            continue
        size = 1 if definite else int(rng.integers(1, min(max_block, remaining) + 1))
        value = _random_eigenvalue(rng, used)
        used.append(value)
        epsilon = 1 if definite else int(rng.choice([-1, 1]))
        blocks.append((value, size, epsilon))
        remaining -= size
    return blocks, pairs


def random_canonical_system(
    rng: np.random.Generator,
    dim: Optional[int] = None,
    T: Optional[float] = None,
    max_block: int = 2,
    with_pairs: bool = True,
    singular: bool = False,
) -> GSymmetricSystem:
    """Random g-symmetric system of dimension 2 to 6 with mixed signature.

    Args:
        rng: numpy Generator
        dim: Fixed dimension, random in [2, 6] when None
        T: Fixed horizon, random in [1, 8] when None
        max_block: Largest Jordan block size
        with_pairs: Allow non-real eigenvalue pairs
        singular: Include a lambda = 0 block
    """
    for _ in range(_MAX_TRIES):
        n = dim or int(rng.integers(2, 7))
        horizon = T or float(rng.uniform(1.0, MAX_HORIZON))
        blocks, pairs = random_canonical_data(rng, n, max_block, with_pairs, singular)
        if resolvable([b[0] for b in blocks], horizon):
            break
    else:
        raise ValueError(f"no resolvable random system after {_MAX_TRIES} draws")
    system = canonical_system(blocks, pairs, horizon)
    return conjugate_system(system, random_basis(rng, n))


def random_riemannian_system(
    rng: np.random.Generator, dim: Optional[int] = None, T: Optional[float] = None
) -> GSymmetricSystem:
    """Random system with positive definite g (A is then diagonalizable)."""
    for _ in range(_MAX_TRIES):
        n = dim or int(rng.integers(2, 7))
        horizon = T or float(rng.uniform(1.0, MAX_HORIZON))
        blocks, _ = random_canonical_data(rng, n, definite=True)
        if resolvable([b[0] for b in blocks], horizon):
            break
    else:
        raise ValueError(f"no resolvable random system after {_MAX_TRIES} draws")
    return conjugate_system(canonical_system(blocks, (), horizon), random_basis(rng, n))


def random_final_instant_system(
    rng: np.random.Generator, dim: Optional[int] = None, max_block: int = 2
) -> GSymmetricSystem:
    """Random system whose horizon is a conjugate instant.

    T = m pi / sqrt|lambda| for a drawn negative eigenvalue lambda and m in
    {1, 2}; with m = 2 the horizon is also a nontransversal instant of the
    Conley-Zehnder path. Every other instant stays resolvable.
    """
    for _ in range(_MAX_TRIES):
        n = dim or int(rng.integers(2, 7))
        blocks, pairs = random_canonical_data(rng, n, max_block)
        negative = [b[0] for b in blocks if b[0] < 0]
        if not negative:
            continue
        value = negative[int(rng.integers(len(negative)))]
        horizon = int(rng.integers(1, 3)) * math.pi / math.sqrt(-value)
        if horizon <= MAX_HORIZON and resolvable([b[0] for b in blocks], horizon, final=value):
            break
    else:
        raise ValueError(f"no final instant system after {_MAX_TRIES} draws")
    return conjugate_system(canonical_system(blocks, pairs, horizon), random_basis(rng, n))


def coefficient_for(
    system: GSymmetricSystem, shear: np.ndarray
) -> SymplecticCoefficient:
    """A reducible coefficient whose reduction is ``system``.

    With b = g^-1, a = b S for symmetric S and c = gA - S b S, the reduction
    g = b^-1, A = b (a^T g a + c) gives back (g, A).
    """
    S = np.asarray(shear, dtype=float)
    S = (S + S.T) / 2.0
    b = np.linalg.inv(system.G)
    b = (b + b.T) / 2.0
    c = system.G @ system.A - S @ b @ S
    return SymplecticCoefficient(b @ S, b, (c + c.T) / 2.0)


def random_reducible_coefficient(
    rng: np.random.Generator, dim: Optional[int] = None, T: Optional[float] = None
) -> Tuple[SymplecticCoefficient, GSymmetricSystem]:
    """Random reducible coefficient together with its expected reduction."""
    system = random_canonical_system(rng, dim, T)
    n = system.dim
    shear = 0.5 * rng.standard_normal((n, n))
    return coefficient_for(system, shear), system


def random_degenerate_coefficient(
    rng: np.random.Generator, dim: Optional[int] = None
) -> SymplecticCoefficient:
    """Coefficient with a common kernel vector of a^T and b."""
    n = dim or int(rng.integers(2, 5))
    k = rng.standard_normal(n)
    k /= np.linalg.norm(k)
    projector = np.eye(n) - np.outer(k, k)
    b = rng.standard_normal((n, n))
    c = rng.standard_normal((n, n))
    return SymplecticCoefficient(
        projector @ rng.standard_normal((n, n)),
        projector @ (b + b.T) @ projector,
        c + c.T,
    )


def riemannian() -> GSymmetricSystem:
    return GSymmetricSystem(np.eye(2), -np.eye(2), 3.5)


def sip_degenerate() -> GSymmetricSystem:
    """Sip_2 with a Jordan block at -1 over [0, pi]; the instant at pi is final."""
    return GSymmetricSystem(sip_matrix(2), jordan_block(-1.0, 2), math.pi)


def split_signature() -> GSymmetricSystem:
    return GSymmetricSystem(np.diag([1.0, -1.0]), np.diag([-1.0, -4.0]), 3.2)


def harmonic() -> GSymmetricSystem:
    return GSymmetricSystem(np.eye(1), -np.eye(1), 7.0)


def hyperbolic() -> GSymmetricSystem:
    return GSymmetricSystem(np.eye(1), np.eye(1), 10.0)


def nilpotent_kernel() -> GSymmetricSystem:
    """Sip_2 with a nilpotent Jordan block at 0."""
    return GSymmetricSystem(sip_matrix(2), jordan_block(0.0, 2), 2.0)


def conjugated_jordan() -> GSymmetricSystem:
    """A degenerate block at -1 and a negative block at -9/4, in a skewed basis."""
    system = canonical_system([(-1.0, 2, 1), (-2.25, 1, -1)], T=4.0)
    basis = np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.3], [0.2, 0.0, 1.0]])
    return conjugate_system(system, basis)


NAMED_FIXTURES: Dict[str, Callable[[], GSymmetricSystem]] = {
    "riemannian": riemannian,
    "sip_degenerate": sip_degenerate,
    "split_signature": split_signature,
    "harmonic": harmonic,
    "hyperbolic": hyperbolic,
    "nilpotent_kernel": nilpotent_kernel,
    "conjugated_jordan": conjugated_jordan,
}
