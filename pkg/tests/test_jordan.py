"""Tests for validation, spectra and canonical pair decompositions."""

import warnings

import numpy as np
import pytest
from scipy.cluster.hierarchy import ClusterWarning
from maslov_analysis.errors import DegenerateFormError, HorizonError, SymmetryError, ValidationError
from maslov_analysis.fixtures import (
    canonical_system,
    conjugate_system,
    conjugated_jordan,
    nilpotent_kernel,
    random_basis,
    random_canonical_system,
    sip_degenerate,
    split_signature,
)
from maslov_analysis.forms import inertia
from maslov_analysis.jordan import (
    canonical_pair,
    decompose,
    eigenspace_form,
    jordan_block,
    make_system,
    real_spectrum,
    reconstruction_residuals,
)
from maslov_analysis.models import GSymmetricSystem


def test_validate_rejects_degenerate_g():
    """Test that a degenerate g is rejected."""
    with pytest.raises(DegenerateFormError) as info:
        make_system(np.diag([1.0, 0.0]), -np.eye(2), 1.0)
    assert info.value.invariant == "g_nondegenerate"
    assert info.value.exit_code == 3


def test_validate_rejects_non_g_symmetric_operator():
    """Test that gA != A^T g is rejected."""
    with pytest.raises(SymmetryError) as info:
        make_system(np.eye(2), [[-1.0, 2.0], [0.0, -1.0]], 1.0)
    assert info.value.invariant == "g_symmetry"


def test_validate_rejects_nonpositive_horizon():
    """Test that T <= 0 is rejected."""
    with pytest.raises(HorizonError):
        make_system(np.eye(1), -np.eye(1), 0.0)


def test_validate_rejects_dimension_mismatch():
    """Test that g and A of different sizes are rejected."""
    with pytest.raises(ValidationError) as info:
        make_system(np.eye(2), -np.eye(3), 1.0)
    assert info.value.invariant == "dimension_match"


def test_two_eigenvalues_cluster_without_warning():
    """Test two point clustering, both merged and separate, with warnings as errors."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", ClusterWarning)
        merged = real_spectrum(nilpotent_kernel())
        separate = real_spectrum(split_signature())

    assert [(r.value, r.algebraic_multiplicity) for r in merged] == [(0.0, 2)]
    assert [r.algebraic_multiplicity for r in separate] == [1, 1]


def test_spectrum_of_jordan_block():
    """Test multiplicities of a single Jordan block."""
    spectrum = real_spectrum(sip_degenerate())

    assert len(spectrum) == 1
    assert spectrum[0].value == pytest.approx(-1.0)
    assert spectrum[0].algebraic_multiplicity == 2
    assert spectrum[0].geometric_multiplicity == 1
    assert spectrum[0].is_real


def test_spectrum_orders_real_then_complex():
    """Test ordering of real eigenvalues and complex pairs."""
    system = canonical_system([(-1.0, 1, 1), (0.5, 1, -1)], pairs=[(0.3, 2.0)], T=1.0)
    spectrum = real_spectrum(system)

    assert [r.is_real for r in spectrum] == [True, True, False]
    assert spectrum[0].value == pytest.approx(-1.0)
    assert spectrum[1].value == pytest.approx(0.5)
    assert spectrum[2].value.imag == pytest.approx(2.0)


def test_canonical_pair_of_sip_block():
    """Test that (Sip_2, J(-1)) is already canonical with epsilon +1."""
    blocks = canonical_pair(sip_degenerate(), -1.0)

    assert len(blocks) == 1
    assert blocks[0].size == 2
    assert blocks[0].epsilon == 1


def test_canonical_pair_signs_of_split_diagonal():
    """Test that each diagonal entry of g becomes the epsilon of its block."""
    decomposition = decompose(split_signature())
    signs = {b.eigenvalue: b.epsilon for b in decomposition.real_blocks}

    assert signs[min(signs)] == -1
    assert signs[max(signs)] == 1
    assert min(signs) == pytest.approx(-4.0)


def test_canonical_pair_rejects_non_eigenvalue():
    """Test that a value outside the spectrum raises."""
    with pytest.raises(ValidationError) as info:
        canonical_pair(split_signature(), 3.0)
    assert info.value.invariant == "eigenvalue_membership"


def test_conjugated_fixture_recovers_blocks():
    """Test that a skewed basis does not change the canonical data."""
    decomposition = decompose(conjugated_jordan())
    data = sorted((round(b.eigenvalue, 6), b.size, b.epsilon) for b in decomposition.real_blocks)

    assert data == [(-2.25, 1, -1), (-1.0, 2, 1)]
    action, form = reconstruction_residuals(conjugated_jordan(), decomposition)
    assert action <= 1e-8
    assert form <= 1e-8


def test_repeated_eigenvalue_with_mixed_blocks():
    """Test a size 2 and a size 1 block sharing lambda = -2."""
    system = canonical_system([(-2.0, 2, -1), (-2.0, 1, 1)], T=1.0)
    system = conjugate_system(system, random_basis(np.random.default_rng(11), 3))
    decomposition = decompose(system)

    assert [(b.size, b.epsilon) for b in decomposition.real_blocks] == [(2, -1), (1, 1)]
    record = decomposition.record_for(decomposition.real_eigenvalues[0])
    assert record.algebraic_multiplicity == 3
    assert record.geometric_multiplicity == 2


def test_complement_covers_complex_part():
    """Test the complement basis dimension with a complex pair present."""
    system = canonical_system([(-1.0, 1, 1)], pairs=[(0.0, 1.5)], T=1.0)
    decomposition = decompose(system)

    assert decomposition.complement_basis.shape == (3, 2)
    assert len(decomposition.complex_summary) == 1


def test_signature_bound_on_random_systems():
    """Test |sum of odd block signs| <= geometric multiplicity."""
    rng = np.random.default_rng(5)
    for _ in range(50):
        decomposition = decompose(random_canonical_system(rng))
        for value in decomposition.real_eigenvalues:
            blocks = decomposition.blocks_for(value)
            odd = sum(b.epsilon for b in blocks if b.size % 2)
            assert abs(odd) <= decomposition.record_for(value).geometric_multiplicity


def test_random_reconstructions():
    """Test reconstruction residuals and block counts on 500 random systems."""
    rng = np.random.default_rng(2024)
    for trial in range(500):
        system = random_canonical_system(rng, singular=trial % 10 == 0)
        decomposition = decompose(system)
        action, form = reconstruction_residuals(system, decomposition)
        assert action <= 1e-8, trial
        assert form <= 1e-8, trial
        for value in decomposition.real_eigenvalues:
            record = decomposition.record_for(value)
            assert len(decomposition.blocks_for(value)) == record.geometric_multiplicity
            assert sum(b.size for b in decomposition.blocks_for(value)) == record.algebraic_multiplicity


def test_larger_jordan_blocks():
    """Test reconstructions with blocks of size 3."""
    rng = np.random.default_rng(77)
    for _ in range(40):
        system = random_canonical_system(rng, max_block=3, with_pairs=False)
        decomposition = decompose(system)
        action, form = reconstruction_residuals(system, decomposition)
        assert max(action, form) <= 1e-7


def test_eigenspace_form_degenerate_on_jordan_block():
    """Test that g restricted to Ker(A - lambda) is null on a size 2 block."""
    restricted = eigenspace_form(sip_degenerate(), -1.0)

    assert restricted.dim == 1
    assert inertia(restricted).nullity == 1


def test_jordan_block_shape():
    """Test the superdiagonal convention."""
    assert np.array_equal(jordan_block(2.0, 2), np.array([[2.0, 1.0], [0.0, 2.0]]))


def test_system_round_trip():
    """Test GSymmetricSystem to_dict/from_dict."""
    system = split_signature()
    restored = GSymmetricSystem.from_dict(system.to_dict())

    assert np.array_equal(restored.A, system.A)
    assert np.array_equal(restored.G, system.G)
    assert restored.T == system.T
