"""Tests for Lie algebras with bi-invariant metrics and their geodesics."""

import math

import numpy as np
import pytest
from maslov_analysis.errors import (
    AntisymmetryError,
    BiInvarianceError,
    IdentityRefusal,
    JacobiIdentityError,
    ValidationError,
)
from maslov_analysis.liegroup import (
    LIE_FIXTURES,
    LieAlgebraSpec,
    abelian,
    ad_operator,
    bracket,
    change_basis,
    char_poly_minors,
    char_poly_pfaffian,
    check_identities,
    covariant_derivative,
    curvature,
    eigenplane,
    geodesic_report,
    jacobi_system,
    orthonormal_frame_for,
    oscillator,
    pfaffian,
    s3xs3,
    so3,
    so21,
    spectral_instants,
    validate_algebra,
)
from maslov_analysis.liegroup.fixtures import from_brackets
from maslov_analysis.oracle import maslov_definitional


def test_fixtures_are_valid():
    """Test every library algebra passes validation."""
    for name, factory in LIE_FIXTURES.items():
        assert validate_algebra(factory()).dim >= 3, name


def test_so3_brackets():
    """Test [e1, e2] = e3 in so(3)."""
    e1, e2, e3 = np.eye(3)

    assert np.allclose(bracket(so3(), e1, e2), e3)
    assert np.allclose(bracket(so3(), e2, e3), e1)


def test_so21_adjoint_and_jacobi_operator():
    """Test ad_e3 and A = ad^2 / 4 for so(2,1)."""
    ad = ad_operator(so21(), [0, 0, 1])
    system = jacobi_system(so21(), [0, 0, 1], 7.0)

    assert np.allclose(ad, [[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    assert np.allclose(system.A, np.diag([-0.25, -0.25, 0.0]))


def test_antisymmetry_violation():
    """Test a structure array with C^k_ij != -C^k_ji."""
    structure = so3().structure.copy()
    structure[2, 1, 0] = 0.0

    with pytest.raises(AntisymmetryError):
        validate_algebra(LieAlgebraSpec(structure, (1, 1, 1)))


def test_jacobi_identity_violation():
    """Test brackets that fail the Jacobi identity."""
    spec = from_brackets(3, {(0, 1): [0, 0, 1], (1, 2): [0, 0, 1], (0, 2): [1, 0, 0]}, (1, 1, 1))

    with pytest.raises((JacobiIdentityError, BiInvarianceError)):
        validate_algebra(spec)


def test_bi_invariance_violation():
    """Test the Heisenberg algebra, which has no bi-invariant metric of this form."""
    spec = from_brackets(3, {(0, 1): [0, 0, 1]}, (1, 1, 1))

    with pytest.raises(BiInvarianceError):
        validate_algebra(spec)


def test_metric_sign_validation():
    """Test that metric signs must be +1 or -1."""
    with pytest.raises(ValidationError) as info:
        validate_algebra(LieAlgebraSpec(so3().structure, (1, 0, 1)))
    assert info.value.invariant == "metric_signs"


def test_connection_and_curvature():
    """Test nabla_X Y = [X, Y] / 2 and A Y = -R(Y, X) X."""
    rng = np.random.default_rng(0)
    spec = so3()
    x, y = rng.standard_normal(3), rng.standard_normal(3)
    system = jacobi_system(spec, x, 1.0)

    assert np.allclose(covariant_derivative(spec, x, y), 0.5 * bracket(spec, x, y))
    assert np.allclose(system.A @ y, -curvature(spec, y, x, x))


def test_pfaffian_small_cases():
    """Test Pf of 2 x 2 and 4 x 4 skew matrices."""
    two = np.array([[0.0, 3.0], [-3.0, 0.0]])
    a, b, c, d, e, f = 1.0, 2.0, 3.0, 4.0, 5.0, 6.0
    four = np.array([[0, a, b, c], [-a, 0, d, e], [-b, -d, 0, f], [-c, -e, -f, 0]])

    assert pfaffian(two) == 3.0
    assert pfaffian(four) == pytest.approx(a * f - b * e + c * d)
    assert pfaffian(four) ** 2 == pytest.approx(np.linalg.det(four))


def test_pfaffian_rejects_odd_size():
    """Test that odd sizes are rejected."""
    with pytest.raises(ValidationError):
        pfaffian(np.zeros((3, 3)))


def test_pfaffian_squares_to_determinant():
    """Test Pf(M)^2 = det(M) on random 6 x 6 skew matrices."""
    rng = np.random.default_rng(10)
    for _ in range(20):
        m = rng.standard_normal((6, 6))
        skew = m - m.T
        assert pfaffian(skew) ** 2 == pytest.approx(np.linalg.det(skew), rel=1e-9)


def test_so3_geodesic_instants():
    """Test so(3) along e3: instants 2 k pi, multiplicity 2, contribution +2."""
    report = geodesic_report(so3(), [0, 0, 1], 7.0)

    assert [i.t for i in report.instants] == pytest.approx([2 * math.pi])
    instant = report.instants[0]
    assert instant.multiplicity == 2
    assert not instant.degenerate
    assert instant.contribution == 2
    assert instant.local_injectivity_broken
    assert report.maslov.total == 2
    assert report.spectral_instants == pytest.approx([2 * math.pi])


def test_so3_geodesic_matches_oracle():
    """Test the so(3) Jacobi system against the definitional oracle."""
    report = geodesic_report(so3(), [0, 0, 1], 13.0)

    assert [i.t for i in report.instants] == pytest.approx([2 * math.pi, 4 * math.pi])
    assert report.maslov.total == maslov_definitional(report.system) == 4


def test_non_unit_direction_rescales_instants():
    """Test that |X| = sqrt 2 gives instants 2 k pi / sqrt 2."""
    report = geodesic_report(so3(), [1, 1, 0], 10.0)

    assert [i.t for i in report.instants] == pytest.approx([math.sqrt(2) * math.pi, 2 * math.sqrt(2) * math.pi])
    assert report.identities_hold


def test_oscillator_geodesic():
    """Test the oscillator along its timelike generator."""
    report = geodesic_report(oscillator(), [0, 0, 0, 1], 10.0)

    assert [i.t for i in report.instants] == pytest.approx([2 * math.sqrt(2) * math.pi])
    assert report.instants[0].contribution == 2
    assert report.char_poly == pytest.approx([1.0, 0.0, 0.5, 0.0, 0.0])


def test_lorentzian_contribution_equals_multiplicity():
    """Test contribution = multiplicity along timelike directions of Lorentzian fixtures."""
    for spec, direction in ((so21(), [0, 0, 1]), (oscillator(), [0, 0, 0, 1])):
        report = geodesic_report(spec, direction, 20.0)
        assert report.instants
        for instant in report.instants:
            assert instant.contribution == instant.multiplicity


def test_all_multiplicities_even():
    """Test even multiplicities on every fixture and several directions."""
    rng = np.random.default_rng(21)
    for name, factory in LIE_FIXTURES.items():
        spec = factory()
        for _ in range(3):
            report = geodesic_report(spec, rng.standard_normal(spec.dim), 15.0)
            assert all(i.multiplicity % 2 == 0 for i in report.instants), name


def test_pfaffian_polynomial_matches_direct():
    """Test the closed characteristic polynomial on identity-satisfying fixtures."""
    for spec in (so3(), so21(), oscillator(), abelian()):
        assert check_identities(spec)
        direct = np.real(np.poly(ad_operator(spec, np.eye(spec.dim)[-1])))
        closed = char_poly_pfaffian(spec)
        assert np.max(np.abs(closed - direct)) <= 1e-9 * max(1.0, np.max(np.abs(direct)))


def test_minor_expansion_matches_direct():
    """Test the sub-Pfaffian expansion, including where the identities fail."""
    for spec in (so3(), oscillator(), s3xs3()):
        direct = np.real(np.poly(ad_operator(spec, np.eye(spec.dim)[-1])))
        assert char_poly_minors(spec) == pytest.approx(direct, abs=1e-9)


def test_identities_hold_automatically_up_to_dimension_five():
    """Test that a five dimensional algebra is accepted without evaluating the identities."""
    structure = np.zeros((5, 5, 5))
    for i, j in ((0, 1), (2, 3)):
        structure[4, i, j], structure[4, j, i] = 1.0, -1.0
    spec = LieAlgebraSpec(structure, (1, 1, 1, 1, 1))

    assert check_identities(spec)
    assert check_identities(s3xs3()) is False


def test_s3xs3_rejected_by_identities():
    """Test that the rotated product violates the quadratic identities."""
    spec = s3xs3()

    assert not check_identities(spec)
    with pytest.raises(IdentityRefusal):
        char_poly_pfaffian(spec)


def test_change_basis_preserves_algebra():
    """Test that an orthonormal frame for X yields a valid algebra with X last."""
    spec = so21()
    x = np.array([0.3, 0.2, 1.0])
    frame = orthonormal_frame_for(spec, x)
    rotated = change_basis(spec, frame)

    validate_algebra(rotated)
    assert np.allclose(frame[:, -1] * np.sqrt(abs(x @ spec.metric @ x)), x)


def test_null_direction_cannot_be_normalized():
    """Test a lightlike direction of so(2,1)."""
    with pytest.raises(ValidationError) as info:
        orthonormal_frame_for(so21(), [1, 0, 1])
    assert info.value.invariant == "null_direction"


def test_eigenplane_spans_rotation_plane():
    """Test W = span(e1, e2) for so(3) along e3."""
    plane = eigenplane(so3(), [0, 0, 1])

    assert plane.shape == (3, 2)
    assert np.allclose(plane[2], 0.0)


def test_spectral_instants_from_ad():
    """Test instants 2 k pi / beta from the imaginary ad-spectrum."""
    ad = ad_operator(so3(), [0, 0, 2])

    assert spectral_instants(ad, 7.0) == pytest.approx([math.pi, 2 * math.pi])


def test_abelian_has_no_instants():
    """Test the flat case."""
    report = geodesic_report(abelian(), [1, 0, 0], 5.0)

    assert report.instants == []
    assert report.maslov.total == 0
