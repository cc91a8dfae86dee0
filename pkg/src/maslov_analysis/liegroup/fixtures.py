"""Library of Lie algebras with bi-invariant metrics."""

from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from .algebra import change_basis
from .models import LieAlgebraSpec

Bracket = Dict[Tuple[int, int], Sequence[float]]


def from_brackets(dim: int, brackets: Bracket, metric_signs: Sequence[int], name: str = "") -> LieAlgebraSpec:
    """Build structure constants from [X_i, X_j] for i < j; the rest follows by antisymmetry."""
    structure = np.zeros((dim, dim, dim))
    for (i, j), value in brackets.items():
        structure[:, i, j] = value
        structure[:, j, i] = -np.asarray(value, dtype=float)
    return LieAlgebraSpec(structure, tuple(metric_signs), name)


def so3() -> LieAlgebraSpec:
    """so(3) with the Killing-type positive definite metric; C^k_ij = eps_ijk."""
    return from_brackets(
        3,
        {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (0, 2): [0, -1, 0]},
        (1, 1, 1),
        "so3",
    )


def so21() -> LieAlgebraSpec:
    """Lorentzian so(2,1): [e1, e2] = -e3, [e2, e3] = e1, [e3, e1] = e2."""
    return from_brackets(
        3,
        {(0, 1): [0, 0, -1], (1, 2): [1, 0, 0], (0, 2): [0, -1, 0]},
        (1, 1, -1),
        "so21",
    )


def oscillator() -> LieAlgebraSpec:
    """Four dimensional oscillator algebra on P, Q, U, V with a Lorentzian metric.

    [P, Q] = (U + V) / sqrt 2, U and V act on span(P, Q) as opposite
    rotations and commute with each other.
    """
    r = 1.0 / np.sqrt(2.0)
    return from_brackets(
        4,
        {
            (0, 1): [0, 0, r, r],
            (0, 2): [0, -r, 0, 0],
            (1, 2): [r, 0, 0, 0],
            (0, 3): [0, r, 0, 0],
            (1, 3): [-r, 0, 0, 0],
        },
        (1, 1, 1, -1),
        "oscillator",
    )


def abelian(dim: int = 3) -> LieAlgebraSpec:
    return LieAlgebraSpec(np.zeros((dim, dim, dim)), (1,) * dim, "abelian")


def s3xs3(rapidity: float = 0.5) -> LieAlgebraSpec:
    """so(3) + so(3) with h0 + (-h0), rotated so the quadratic identities fail.

    The last vector of each factor is mixed by a hyperbolic rotation, which
    keeps the basis orthonormal for the split metric.
    """
    structure = np.zeros((6, 6, 6))
    base = so3().structure
    structure[:3, :3, :3] = base
    structure[3:, 3:, 3:] = base
    product = LieAlgebraSpec(structure, (1, 1, 1, -1, -1, -1), "s3xs3")
    basis = np.eye(6)
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    basis[np.ix_([2, 5], [2, 5])] = [[c, s], [s, c]]
    return change_basis(product, basis)


LIE_FIXTURES: Dict[str, Callable[[], LieAlgebraSpec]] = {
    "so3": so3,
    "so21": so21,
    "oscillator": oscillator,
    "abelian": abelian,
    "s3xs3": s3xs3,
}
