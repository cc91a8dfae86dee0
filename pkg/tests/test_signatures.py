"""Tests for Jordan signatures."""

import numpy as np
import pytest
from maslov_analysis.errors import ValidationError
from maslov_analysis.fixtures import NAMED_FIXTURES, random_canonical_system
from maslov_analysis.forms import inertia, restrict
from maslov_analysis.jordan import decompose, eigenspace, generalized_eigenspace
from maslov_analysis.models import CanonicalBlock
from maslov_analysis.signatures import (
    block_tau,
    block_varrho,
    block_varsigma,
    degenerate_block_form,
    generalized_signature,
    jordan_signatures,
    signatures_by_eigenvalue,
)


def _block(eigenvalue, size, epsilon):
    return CanonicalBlock(eigenvalue, size, epsilon, np.zeros((size, size)))


def test_block_formulas_small_sizes():
    """Test the per-block closed formulas for sizes 1 to 4."""
    table = {
        (1, 1): (0, 0, 1),
        (1, -1): (1, 0, 0),
        (2, 1): (1, 0, 0),
        (2, -1): (1, 1, 1),
        (3, 1): (1, 1, 1),
        (3, -1): (2, 1, 0),
        (4, 1): (2, 1, 0),
        (4, -1): (2, 2, 1),
    }
    for (size, epsilon), expected in table.items():
        assert (
            block_varsigma(size, epsilon),
            block_varrho(size, epsilon),
            block_tau(size, epsilon),
        ) == expected


def test_varsigma_is_index_of_sip_block():
    """Test varsigma against the index of epsilon * Sip_n."""
    for size in range(1, 7):
        for epsilon in (1, -1):
            sip = epsilon * np.fliplr(np.eye(size))
            assert block_varsigma(size, epsilon) == inertia(sip).n_minus


def test_varrho_is_index_of_degenerate_form():
    """Test varrho against the index of the degenerate block form."""
    for size in range(1, 7):
        for epsilon in (1, -1):
            form = degenerate_block_form(size, epsilon)
            assert block_varrho(size, epsilon) == inertia(form).n_minus


def test_signatures_sum_over_blocks():
    """Test that signatures add over the blocks of one eigenvalue."""
    result = jordan_signatures([_block(-1.0, 2, -1), _block(-1.0, 1, 1)])

    assert result.varsigma == 1
    assert result.varrho == 1
    assert result.tau == 2
    assert result.block_count == 2


def test_signatures_reject_mixed_eigenvalues():
    """Test that blocks of two eigenvalues are rejected."""
    with pytest.raises(ValidationError) as info:
        jordan_signatures([_block(-1.0, 1, 1), _block(-2.0, 1, 1)])
    assert info.value.invariant == "single_eigenvalue"


def test_signatures_reject_empty_list():
    """Test that an empty block list is rejected."""
    with pytest.raises(ValidationError):
        jordan_signatures([])


def test_generalized_signature_counts_odd_blocks():
    """Test that even blocks have zero signature."""
    blocks = [_block(0.5, 2, 1), _block(0.5, 3, -1), _block(0.5, 1, -1)]

    assert generalized_signature(blocks) == -2


def _check_identity(system):
    decomposition = decompose(system)
    for signatures in signatures_by_eigenvalue(decomposition.real_blocks):
        value = signatures.eigenvalue
        basis, _ = generalized_eigenspace(system, value)
        restricted = restrict(system.g, basis)
        kernel_dim = eigenspace(system, value).shape[1]
        assert signatures.varsigma == inertia(restricted).n_minus
        assert signatures.tau == signatures.varrho + kernel_dim - inertia(restricted).n_minus


def test_tau_identity_on_named_fixtures():
    """Test tau = varrho + dim Ker(A - lambda) - n_minus on every named fixture."""
    for factory in NAMED_FIXTURES.values():
        _check_identity(factory())


def test_tau_identity_on_random_systems():
    """Test the tau identity with independently computed inertia."""
    rng = np.random.default_rng(8)
    for trial in range(100):
        _check_identity(random_canonical_system(rng, singular=trial % 5 == 0))
