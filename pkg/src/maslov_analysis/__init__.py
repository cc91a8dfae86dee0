"""Maslov Analysis SDK for conjugate points and indices of constant symplectic systems."""

from .config import Tolerances, DEFAULT_TOLERANCES
from .errors import (
    MaslovAnalysisError,
    SchemaError,
    ValidationError,
    NumericError,
    ConsistencyError,
)
from .models import (
    BilinearForm,
    Inertia,
    GSymmetricSystem,
    EigenvalueRecord,
    CanonicalBlock,
    CanonicalPairDecomposition,
    JordanSignatures,
    ConjugateInstant,
    MaslovBreakdown,
    CZBreakdown,
    NontransversalSet,
    SymplecticCoefficient,
    SpectralReport,
    SymplecticReport,
)
from .forms import as_form, inertia, signature, is_nondegenerate, restrict, sip_matrix
from .jordan import validate, make_system, real_spectrum, canonical_pair, decompose
from .signatures import jordan_signatures, generalized_signature
from .conjugate import conjugate_instants, count_formula
from .maslov import maslov_index, instant_contribution
from .conley_zehnder import cz_index, nontransversal_instants, zero_eigenvalue
from .symplectic import classify, reduce, second_order_form
from .analysis import SpectralAnalyzer, analyze_problem
from .problem import ProblemFile, ProblemLoader, validate_problem, PROBLEM_SCHEMA
from .export import ReportExporter, BatchRunner
from .liegroup import LieAlgebraSpec, GeodesicReport, geodesic_report, jacobi_system

__version__ = "0.1.0"

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "MaslovAnalysisError",
    "SchemaError",
    "ValidationError",
    "NumericError",
    "ConsistencyError",
    "BilinearForm",
    "Inertia",
    "GSymmetricSystem",
    "EigenvalueRecord",
    "CanonicalBlock",
    "CanonicalPairDecomposition",
    "JordanSignatures",
    "ConjugateInstant",
    "MaslovBreakdown",
    "CZBreakdown",
    "NontransversalSet",
    "SymplecticCoefficient",
    "SpectralReport",
    "SymplecticReport",
    "as_form",
    "inertia",
    "signature",
    "is_nondegenerate",
    "restrict",
    "sip_matrix",
    "validate",
    "make_system",
    "real_spectrum",
    "canonical_pair",
    "decompose",
    "jordan_signatures",
    "generalized_signature",
    "conjugate_instants",
    "count_formula",
    "maslov_index",
    "instant_contribution",
    "cz_index",
    "nontransversal_instants",
    "zero_eigenvalue",
    "classify",
    "reduce",
    "second_order_form",
    "SpectralAnalyzer",
    "analyze_problem",
    "ProblemFile",
    "ProblemLoader",
    "validate_problem",
    "PROBLEM_SCHEMA",
    "ReportExporter",
    "BatchRunner",
    "LieAlgebraSpec",
    "GeodesicReport",
    "geodesic_report",
    "jacobi_system",
]
