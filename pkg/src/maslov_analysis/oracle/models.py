"""Data models for the definitional oracle."""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..linalg import canonical_omega


@dataclass(frozen=True, eq=False)
class SymplecticPathSample:
    """The fundamental solution at one instant.

    Attributes:
        t: Instant
        phi: 2n x 2n value of Phi(t)
        lagrangian_frame: 2n x n frame spanning l(t) = Phi(t)(L0)
        intersection_dim: dim(l(t) intersected with L0)
    """
    t: float
    phi: np.ndarray
    lagrangian_frame: np.ndarray
    intersection_dim: int

    @property
    def symplectic_residual(self) -> float:
        """max|phi^T Omega phi - Omega| relative to max(1, |phi|^2)."""
        omega = canonical_omega(self.phi.shape[0] // 2)
        residual = float(np.max(np.abs(self.phi.T @ omega @ self.phi - omega)))
        return residual / max(1.0, float(np.linalg.norm(self.phi, 2)) ** 2)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": float(self.t),
            "phi": self.phi.tolist(),
            "intersection_dim": self.intersection_dim,
        }


@dataclass(frozen=True)
class Crossing:
    """A numerically detected intersection of a Lagrangian path with the base.

    Attributes:
        t: Refined instant
        deficiency: Dimension of the intersection
        min_sine: Smallest sine of the principal angles at t
    """
    t: float
    deficiency: int
    min_sine: float

    def to_dict(self) -> Dict[str, Any]:
        return {"t": float(self.t), "deficiency": self.deficiency}
