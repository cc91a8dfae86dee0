"""Data models for spectral analysis of constant symplectic systems."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from .config import DEFAULT_TOLERANCES
from .linalg import symmetric_entries


def _frozen(matrix: Any) -> np.ndarray:
    """Copy to a read-only float array."""
    array = np.array(matrix, dtype=float)
    array.setflags(write=False)
    return array


def _number(value: Union[float, complex]) -> Union[float, List[float]]:
    if isinstance(value, complex) or np.iscomplexobj(value):
        return [float(np.real(value)), float(np.imag(value))]
    return float(value)


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """Symmetric bilinear form on R^n stored as a symmetric matrix.

    Construction stores (M + M^T) / 2 and rejects non-square or asymmetric
    matrices at the default tol_sym; forms.as_form takes another tolerance.

    Attributes:
        entries: dim x dim symmetric matrix
    """
    entries: np.ndarray

    def __post_init__(self):
        entries = symmetric_entries(self.entries, DEFAULT_TOLERANCES.tol_sym)
        object.__setattr__(self, "entries", _frozen(entries))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __call__(self, v: np.ndarray, w: np.ndarray) -> float:
        return float(np.asarray(v) @ self.entries @ np.asarray(w))

    def to_dict(self) -> Dict[str, Any]:
        return {"dim": self.dim, "entries": self.entries.tolist()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BilinearForm":
        return cls(entries=data["entries"])


@dataclass(frozen=True)
class Inertia:
    """Sylvester inertia of a symmetric bilinear form."""
    n_plus: int
    n_minus: int
    nullity: int

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_minus + self.nullity

    @property
    def signature(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def extended_coindex(self) -> int:
        return self.n_plus + self.nullity

    def to_dict(self) -> Dict[str, int]:
        return {"n_plus": self.n_plus, "n_minus": self.n_minus, "nullity": self.nullity}


@dataclass(frozen=True, eq=False)
class GSymmetricSystem:
    """The second order system v'' = A v on [0, T] with g-symmetric A.

    Attributes:
        g: Nondegenerate symmetric bilinear form
        A: dim x dim real matrix with gA = A^T g
        T: Positive horizon
    """
    g: BilinearForm
    A: np.ndarray
    T: float

    def __post_init__(self):
        if not isinstance(self.g, BilinearForm):
            object.__setattr__(self, "g", BilinearForm(self.g))
        object.__setattr__(self, "A", _frozen(self.A))
        object.__setattr__(self, "T", float(self.T))

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def G(self) -> np.ndarray:
        return self.g.entries

    def with_horizon(self, T: float) -> "GSymmetricSystem":
        return GSymmetricSystem(self.g, self.A, T)

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.G.tolist(), "A": self.A.tolist(), "T": self.T}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GSymmetricSystem":
        return cls(g=BilinearForm(data["g"]), A=data["A"], T=data["T"])


@dataclass(frozen=True)
class EigenvalueRecord:
    """A clustered eigenvalue with its multiplicities.

    For a non-real pair, ``value`` is the member with positive imaginary part
    and the multiplicities refer to that member alone.
    """
    value: Union[float, complex]
    algebraic_multiplicity: int
    geometric_multiplicity: int
    is_real: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": _number(self.value),
            "algebraic_multiplicity": self.algebraic_multiplicity,
            "geometric_multiplicity": self.geometric_multiplicity,
            "is_real": self.is_real,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EigenvalueRecord":
        value = data["value"]
        if isinstance(value, list):
            value = complex(value[0], value[1])
        return cls(
            value=value,
            algebraic_multiplicity=data["algebraic_multiplicity"],
            geometric_multiplicity=data["geometric_multiplicity"],
            is_real=data["is_real"],
        )


@dataclass(frozen=True, eq=False)
class CanonicalBlock:
    """One Jordan block of a real eigenvalue paired with epsilon * Sip.

    Attributes:
        eigenvalue: Real eigenvalue lambda
        size: Block size n_i
        epsilon: Sign +1 or -1
        basis: dim x size matrix whose columns v_1..v_size satisfy
            A v_1 = lambda v_1 and A v_j = lambda v_j + v_(j-1)
    """
    eigenvalue: float
    size: int
    epsilon: int
    basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", _frozen(self.basis))

    def to_dict(self, include_basis: bool = False) -> Dict[str, Any]:
        result = {"eigenvalue": float(self.eigenvalue), "size": self.size, "epsilon": self.epsilon}
        if include_basis:
            result["basis"] = self.basis.tolist()
        return result


@dataclass(frozen=True, eq=False)
class CanonicalPairDecomposition:
    """Canonical pair decomposition of (g, A) on the real spectrum.

    Attributes:
        spectrum: All clustered eigenvalues
        real_blocks: Blocks grouped by eigenvalue (ascending), each group ordered
            by descending size then descending epsilon
        complex_summary: Non-real eigenvalues (positive imaginary member of each pair)
        complement_basis: Basis of the g-orthogonal complement of all real blocks
    """
    spectrum: List[EigenvalueRecord]
    real_blocks: List[CanonicalBlock]
    complex_summary: List[EigenvalueRecord]
    complement_basis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "complement_basis", _frozen(self.complement_basis))

    @property
    def real_eigenvalues(self) -> List[float]:
        seen: List[float] = []
        for block in self.real_blocks:
            if not seen or block.eigenvalue != seen[-1]:
                seen.append(block.eigenvalue)
        return seen

    def blocks_for(self, eigenvalue: float) -> List[CanonicalBlock]:
        return [b for b in self.real_blocks if b.eigenvalue == eigenvalue]

    def record_for(self, eigenvalue: float) -> EigenvalueRecord:
        for record in self.spectrum:
            if record.is_real and record.value == eigenvalue:
                return record
        raise KeyError(eigenvalue)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "spectrum": [r.to_dict() for r in self.spectrum],
            "real_blocks": [b.to_dict() for b in self.real_blocks],
            "complex_summary": [r.to_dict() for r in self.complex_summary],
            "complement_dim": int(self.complement_basis.shape[1]),
        }


@dataclass(frozen=True)
class BlockSignature:
    size: int
    epsilon: int
    varsigma: int
    varrho: int
    tau: int

    def to_dict(self) -> Dict[str, int]:
        return {
            "size": self.size,
            "epsilon": self.epsilon,
            "varsigma": self.varsigma,
            "varrho": self.varrho,
            "tau": self.tau,
        }


@dataclass(frozen=True)
class JordanSignatures:
    """Jordan signatures of (g, A, lambda) for one real eigenvalue."""
    eigenvalue: float
    varsigma: int
    varrho: int
    tau: int
    per_block: Tuple[BlockSignature, ...]

    @property
    def block_count(self) -> int:
        return len(self.per_block)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eigenvalue": float(self.eigenvalue),
            "varsigma": self.varsigma,
            "varrho": self.varrho,
            "tau": self.tau,
            "per_block": [b.to_dict() for b in self.per_block],
        }


@dataclass(frozen=True)
class Contributor:
    """A negative eigenvalue lambda whose k-th instant k*pi/sqrt(|lambda|) is t."""
    eigenvalue: float
    k: int

    def to_dict(self) -> Dict[str, Any]:
        return {"eigenvalue": float(self.eigenvalue), "k": self.k}


@dataclass(frozen=True)
class ConjugateInstant:
    t: float
    contributors: Tuple[Contributor, ...]
    multiplicity: int
    degenerate: bool
    is_final: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": float(self.t),
            "contributors": [c.to_dict() for c in self.contributors],
            "multiplicity": self.multiplicity,
            "degenerate": self.degenerate,
            "is_final": self.is_final,
        }


@dataclass(frozen=True)
class InstantContribution:
    instant: ConjugateInstant
    contribution: int

    def to_dict(self) -> Dict[str, Any]:
        result = self.instant.to_dict()
        result["contribution"] = self.contribution
        return result


@dataclass(frozen=True)
class MaslovBreakdown:
    """Closed form Maslov index with per-instant contributions.

    Attributes:
        per_instant: Contribution of every conjugate instant in (0, T]
        initial_correction: -n_minus(g)
        total: Sum of contributions plus the initial correction
        rs_value: Robbin-Salamon convention value (a half-integer)
    """
    per_instant: Tuple[InstantContribution, ...]
    initial_correction: int
    total: int
    rs_value: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "per_instant": [c.to_dict() for c in self.per_instant],
            "initial_correction": self.initial_correction,
            "total": self.total,
            "rs_value": self.rs_value,
        }


@dataclass(frozen=True)
class NontransversalInstant:
    """An instant t with -4k^2 pi^2 / t^2 in the spectrum."""
    t: float
    eigenvalue: float
    k: int

    def to_dict(self) -> Dict[str, Any]:
        return {"t": float(self.t), "eigenvalue": float(self.eigenvalue), "k": self.k}


@dataclass(frozen=True)
class NontransversalSet:
    """Instants where Gr(Phi(t)) meets the diagonal.

    ``continuum`` is set when 0 is an eigenvalue: then every instant is
    nontransversal and ``instants`` is empty.
    """
    continuum: bool
    instants: Tuple[NontransversalInstant, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {"continuum": self.continuum, "instants": [i.to_dict() for i in self.instants]}


@dataclass(frozen=True)
class CZBreakdown:
    """Closed form Conley-Zehnder index.

    ``initial_contribution`` already includes ``kernel_correction``, so
    total = initial + sum(interior) + final.
    """
    nontransversal_set: Tuple[NontransversalInstant, ...]
    initial_contribution: int
    interior_contributions: Tuple[Tuple[float, int], ...]
    final_contribution: int
    kernel_correction: int
    total: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nontransversal_set": [i.to_dict() for i in self.nontransversal_set],
            "initial_contribution": self.initial_contribution,
            "interior_contributions": [
                {"t": float(t), "contribution": c} for t, c in self.interior_contributions
            ],
            "final_contribution": self.final_contribution,
            "kernel_correction": self.kernel_correction,
            "total": self.total,
        }


@dataclass(frozen=True, eq=False)
class SymplecticCoefficient:
    """Constant coefficient X = [[a, b], [c, -a^T]] of a symplectic system.

    Attributes:
        block_a: n x n real matrix
        block_b: n x n symmetric matrix
        block_c: n x n symmetric matrix
    """
    block_a: np.ndarray
    block_b: np.ndarray
    block_c: np.ndarray

    def __post_init__(self):
        for name in ("block_a", "block_b", "block_c"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def dim(self) -> int:
        return self.block_a.shape[0]

    def matrix(self) -> np.ndarray:
        """The 2n x 2n Hamiltonian matrix X."""
        return np.block([[self.block_a, self.block_b], [self.block_c, -self.block_a.T]])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "block_a": self.block_a.tolist(),
            "block_b": self.block_b.tolist(),
            "block_c": self.block_c.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SymplecticCoefficient":
        return cls(data["block_a"], data["block_b"], data["block_c"])


@dataclass
class SpectralReport:
    """Everything the analyzer computes for one system.

    Oracle fields stay ``None`` when the oracle is switched off.
    """
    system: GSymmetricSystem
    decomposition: CanonicalPairDecomposition
    signatures: List[JordanSignatures]
    instants: List[ConjugateInstant]
    count: int
    maslov: Optional[MaslovBreakdown] = None
    cz: Optional[CZBreakdown] = None
    nontransversal: Optional[NontransversalSet] = None
    riemannian: bool = False
    no_accumulation_margin: Optional[float] = None
    oracle: Optional[Dict[str, Any]] = None
    agreement: Optional[Dict[str, bool]] = None
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def all_agree(self) -> bool:
        return self.agreement is None or all(self.agreement.values())

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "spectrum": [r.to_dict() for r in self.decomposition.spectrum],
            "canonical_blocks": [b.to_dict() for b in self.decomposition.real_blocks],
            "jordan_signatures": [s.to_dict() for s in self.signatures],
            "conjugate_instants": (
                [c.to_dict() for c in self.maslov.per_instant]
                if self.maslov is not None
                else [i.to_dict() for i in self.instants]
            ),
            "conjugate_count": self.count,
            "riemannian": self.riemannian,
            "no_accumulation_margin": self.no_accumulation_margin,
        }
        if self.maslov is not None:
            result["maslov"] = {
                "total": self.maslov.total,
                "initial_correction": self.maslov.initial_correction,
                "rs_value": self.maslov.rs_value,
            }
        if self.cz is not None:
            result["conley_zehnder"] = self.cz.to_dict()
            if self.nontransversal is not None:
                result["conley_zehnder"]["continuum"] = self.nontransversal.continuum
        if self.oracle is not None:
            result["oracle"] = self.oracle
            result["agreement"] = dict(self.agreement or {})
        if self.timing:
            result["timing"] = dict(self.timing)
        return result


@dataclass
class SymplecticReport:
    """Analysis of a constant coefficient z' = X z.

    ``reduced`` holds the report of the equivalent second order system when
    the coefficient is reducible. ``second_order`` holds the damping and
    stiffness matrices whenever b is nonsingular.
    """
    classification: str
    coefficient: SymplecticCoefficient
    T: float
    reduced: Optional[SpectralReport] = None
    second_order: Optional[Dict[str, List[List[float]]]] = None
    oracle: Optional[Dict[str, Any]] = None
    agreement: Optional[Dict[str, bool]] = None
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def all_agree(self) -> bool:
        own = self.agreement is None or all(self.agreement.values())
        return own and (self.reduced is None or self.reduced.all_agree)

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"classification": self.classification}
        if self.second_order is not None:
            result["second_order"] = self.second_order
        if self.reduced is not None:
            result["reduced_system"] = self.reduced.system.to_dict()
            result["reduced"] = self.reduced.to_dict()
        if self.oracle is not None:
            result["oracle"] = self.oracle
            result["agreement"] = dict(self.agreement or {})
        if self.timing:
            result["timing"] = dict(self.timing)
        return result
