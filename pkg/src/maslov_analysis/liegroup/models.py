"""Data models for Lie algebras with bi-invariant metrics and their geodesics."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..models import CanonicalPairDecomposition, GSymmetricSystem, MaslovBreakdown, _frozen


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    """Structure constants in an h-orthonormal basis.

    Attributes:
        structure: n x n x n array with structure[k, i, j] = C^k_ij, so that
            [X_i, X_j] = sum_k C^k_ij X_k
        metric_signs: epsilon_i = h(X_i, X_i), each +1 or -1
        name: Optional label
    """
    structure: np.ndarray
    metric_signs: Tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "structure", _frozen(self.structure))
        object.__setattr__(self, "metric_signs", tuple(int(s) for s in self.metric_signs))

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    @property
    def metric(self) -> np.ndarray:
        return np.diag(np.array(self.metric_signs, dtype=float))

    def to_dict(self) -> Dict[str, Any]:
        result = {"structure": self.structure.tolist(), "metric_signs": list(self.metric_signs)}
        if self.name:
            result["name"] = self.name
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LieAlgebraSpec":
        return cls(
            structure=data["structure"],
            metric_signs=tuple(data["metric_signs"]),
            name=data.get("name", ""),
        )


@dataclass(frozen=True)
class GeodesicInstant:
    """A conjugate instant along t -> exp(tX).

    Attributes:
        t: Instant
        multiplicity: Dimension of the Jacobi fields vanishing at 0 and t (even)
        degenerate: Whether the instant is degenerate
        contribution: Maslov contribution, the signature of h on the
            corresponding eigenspace
        local_injectivity_broken: contribution != 0, so the exponential map
            is not locally injective around tX
    """
    t: float
    multiplicity: int
    degenerate: bool
    contribution: int
    local_injectivity_broken: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": float(self.t),
            "multiplicity": self.multiplicity,
            "degenerate": self.degenerate,
            "contribution": self.contribution,
            "local_injectivity_broken": self.local_injectivity_broken,
        }


@dataclass
class GeodesicReport:
    """Conjugate point analysis of one geodesic.

    ``char_poly`` and ``identities_hold`` are set only when the direction is
    not null, so that it can be made the last vector of an orthonormal basis.
    """
    direction: np.ndarray
    ad_matrix: np.ndarray
    system: GSymmetricSystem
    decomposition: CanonicalPairDecomposition
    maslov: MaslovBreakdown
    instants: List[GeodesicInstant]
    spectral_instants: List[float]
    identities_hold: Optional[bool] = None
    char_poly: Optional[List[float]] = None
    eigenplane_inertia: Optional[Dict[str, int]] = None
    oracle: Optional[Dict[str, Any]] = None
    agreement: Optional[Dict[str, bool]] = None
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def all_agree(self) -> bool:
        return self.agreement is None or all(self.agreement.values())

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "direction": [float(x) for x in self.direction],
            "ad_matrix": self.ad_matrix.tolist(),
            "jacobi_system": self.system.to_dict(),
            "instants": [i.to_dict() for i in self.instants],
            "spectral_instants": [float(t) for t in self.spectral_instants],
            "identities_hold": self.identities_hold,
            "char_poly": self.char_poly,
            "eigenplane_inertia": self.eigenplane_inertia,
            "maslov_total": self.maslov.total,
        }
        if self.oracle is not None:
            result["oracle"] = self.oracle
            result["agreement"] = dict(self.agreement or {})
        if self.timing:
            result["timing"] = dict(self.timing)
        return result
