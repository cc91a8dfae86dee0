"""Conjugate points of geodesics in Lie groups with bi-invariant metrics."""

from .models import LieAlgebraSpec, GeodesicInstant, GeodesicReport
from .algebra import (
    validate_algebra,
    ad_operator,
    bracket,
    covariant_derivative,
    curvature,
    check_identities,
    pfaffian,
    char_poly_pfaffian,
    char_poly_minors,
    change_basis,
    orthonormal_frame_for,
    eigenplane,
)
from .geodesic import jacobi_system, geodesic_report, spectral_instants
from .fixtures import LIE_FIXTURES, so3, so21, oscillator, abelian, s3xs3

__all__ = [
    "LieAlgebraSpec",
    "GeodesicInstant",
    "GeodesicReport",
    "validate_algebra",
    "ad_operator",
    "bracket",
    "covariant_derivative",
    "curvature",
    "check_identities",
    "pfaffian",
    "char_poly_pfaffian",
    "char_poly_minors",
    "change_basis",
    "orthonormal_frame_for",
    "eigenplane",
    "jacobi_system",
    "geodesic_report",
    "spectral_instants",
    "LIE_FIXTURES",
    "so3",
    "so21",
    "oscillator",
    "abelian",
    "s3xs3",
]
