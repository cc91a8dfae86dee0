"""Tests for classification and reduction of symplectic coefficients."""

import numpy as np
import pytest
from maslov_analysis.conjugate import conjugate_instants
from maslov_analysis.errors import ClassificationError, SymmetryError, ValidationError
from maslov_analysis.fixtures import (
    coefficient_for,
    random_degenerate_coefficient,
    random_reducible_coefficient,
    riemannian,
)
from maslov_analysis.jordan import decompose
from maslov_analysis.maslov import maslov_index
from maslov_analysis.models import SymplecticCoefficient
from maslov_analysis.oracle import symplectic_conjugate, symplectic_maslov
from maslov_analysis.symplectic import (
    DEGENERATE_CONTINUUM,
    REDUCIBLE,
    UNSUPPORTED,
    classify,
    reduce,
    second_order_form,
    validate_coefficient,
)


def test_decoupled_coefficient_reduces_to_riemannian():
    """Test a = 0, b = I, c = -I reducing to (I, -I)."""
    coefficient = SymplecticCoefficient(np.zeros((2, 2)), np.eye(2), -np.eye(2))
    system = reduce(coefficient, 3.5)

    assert classify(coefficient) == REDUCIBLE
    assert np.allclose(system.G, np.eye(2))
    assert np.allclose(system.A, -np.eye(2))


def test_reduction_inverts_coefficient_for():
    """Test that reduce gives back the system a coefficient was built from."""
    system = riemannian()
    coefficient = coefficient_for(system, np.array([[0.3, 0.1], [0.1, -0.2]]))
    reduced = reduce(coefficient, system.T)

    assert np.allclose(reduced.G, system.G)
    assert np.allclose(reduced.A, system.A)


def test_degenerate_continuum_detected():
    """Test a = 0, b = diag(1, 0), c = 0."""
    coefficient = SymplecticCoefficient(np.zeros((2, 2)), np.diag([1.0, 0.0]), np.zeros((2, 2)))

    assert classify(coefficient) == DEGENERATE_CONTINUUM
    with pytest.raises(ClassificationError) as info:
        reduce(coefficient, 1.0)
    assert info.value.invariant == DEGENERATE_CONTINUUM
    assert info.value.exit_code == 3


def test_continuum_detection_on_constructed_fixtures():
    """Test that every constructed degenerate coefficient is classified as a continuum."""
    rng = np.random.default_rng(12)
    for _ in range(50):
        assert classify(random_degenerate_coefficient(rng)) == DEGENERATE_CONTINUUM


def test_singular_b_without_common_kernel_is_unsupported():
    """Test singular b with Ker(a^T) and Ker(b) transversal."""
    coefficient = SymplecticCoefficient(np.eye(2), np.diag([1.0, 0.0]), np.eye(2))

    assert classify(coefficient) == UNSUPPORTED
    with pytest.raises(ClassificationError):
        reduce(coefficient, 1.0)


def test_nonsymmetric_product_is_unsupported():
    """Test b^-1 a not symmetric."""
    coefficient = SymplecticCoefficient([[0.0, 1.0], [0.0, 0.0]], np.eye(2), -np.eye(2))

    assert classify(coefficient) == UNSUPPORTED


def test_asymmetric_blocks_rejected():
    """Test that b and c must be symmetric."""
    coefficient = SymplecticCoefficient(np.zeros((2, 2)), [[1.0, 1.0], [0.0, 1.0]], np.eye(2))

    with pytest.raises(SymmetryError) as info:
        validate_coefficient(coefficient)
    assert info.value.invariant == "block_b_symmetry"


def test_block_shape_mismatch_rejected():
    """Test blocks of different sizes."""
    coefficient = SymplecticCoefficient(np.zeros((2, 2)), np.eye(3), np.eye(2))

    with pytest.raises(ValidationError):
        validate_coefficient(coefficient)


def test_second_order_form_of_decoupled_system():
    """Test v'' + D v' + K v = 0 for a = 0, b = I, c = -I."""
    coefficient = SymplecticCoefficient(np.zeros((2, 2)), np.eye(2), -np.eye(2))
    damping, stiffness = second_order_form(coefficient)

    assert np.allclose(damping, 0.0)
    assert np.allclose(stiffness, np.eye(2))


def test_second_order_form_needs_nonsingular_b():
    """Test that a singular b is rejected."""
    coefficient = SymplecticCoefficient(np.zeros((2, 2)), np.diag([1.0, 0.0]), np.eye(2))

    with pytest.raises(ValidationError) as info:
        second_order_form(coefficient)
    assert info.value.invariant == "b_nonsingular"


def test_oracle_refuses_continuum():
    """Test that the oracle does not scan a degenerate continuum."""
    coefficient = SymplecticCoefficient(np.zeros((2, 2)), np.diag([1.0, 0.0]), np.zeros((2, 2)))

    with pytest.raises(ClassificationError):
        symplectic_conjugate(coefficient, 1.0)


def test_reduction_fidelity_on_random_coefficients():
    """Test instants and Maslov index of 100 reductions against the unreduced oracle."""
    rng = np.random.default_rng(9)
    for trial in range(100):
        coefficient, expected = random_reducible_coefficient(rng)
        system = reduce(coefficient, expected.T)
        decomposition = decompose(system)
        instants = conjugate_instants(system, decomposition.spectrum)
        crossings = symplectic_conjugate(coefficient, system.T)

        assert len(instants) == len(crossings), trial
        for instant, crossing in zip(instants, crossings):
            assert abs(instant.t - crossing.t) <= 1e-8 * system.T
            assert instant.multiplicity == crossing.deficiency
        closed = maslov_index(system, decomposition, instants).total
        assert closed == symplectic_maslov(coefficient, system.T, crossings=crossings), trial


def test_reduction_keeps_jordan_blocks_whole():
    """Test that a reduced Jordan block is not split into two simple eigenvalues."""
    rng = np.random.default_rng(9)
    for _ in range(8):
        coefficient, expected = random_reducible_coefficient(rng)
    reduced = decompose(reduce(coefficient, expected.T))
    original = decompose(expected)

    def multiplicities(decomposition):
        return [(r.algebraic_multiplicity, r.geometric_multiplicity) for r in decomposition.spectrum]

    assert multiplicities(reduced) == multiplicities(original)
    assert any(alg == 2 and geo == 1 for alg, geo in multiplicities(reduced))
    assert sorted((b.size, b.epsilon) for b in reduced.real_blocks) == sorted(
        (b.size, b.epsilon) for b in original.real_blocks
    )
