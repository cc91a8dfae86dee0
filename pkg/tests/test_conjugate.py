"""Tests for conjugate instants and the count formula."""

import math

import numpy as np
import pytest
from maslov_analysis.conjugate import conjugate_instants, count_formula, no_accumulation_margin
from maslov_analysis.fixtures import (
    canonical_system,
    conjugated_jordan,
    harmonic,
    hyperbolic,
    riemannian,
    sip_degenerate,
    split_signature,
)
from maslov_analysis.forms import inertia
from maslov_analysis.jordan import decompose, eigenspace_form, real_spectrum


def _instants(system):
    return conjugate_instants(system, real_spectrum(system))


def test_harmonic_oscillator_instants():
    """Test instants k pi for v'' = -v on (0, 7]."""
    instants = _instants(harmonic())

    assert [i.t for i in instants] == pytest.approx([math.pi, 2 * math.pi])
    assert all(i.multiplicity == 1 and not i.degenerate for i in instants)


def test_positive_spectrum_has_no_instants():
    """Test that lambda > 0 gives no conjugate instants."""
    assert _instants(hyperbolic()) == []
    assert count_formula(real_spectrum(hyperbolic()), 10.0) == 0


def test_riemannian_multiplicity():
    """Test a double eigenvalue giving one instant of multiplicity 2."""
    instants = _instants(riemannian())

    assert len(instants) == 1
    assert instants[0].multiplicity == 2
    assert instants[0].t == pytest.approx(math.pi)


def test_coinciding_instants_merge():
    """Test that lambda = -1 and lambda = -4 share the instant pi."""
    instants = _instants(split_signature())

    assert [i.t for i in instants] == pytest.approx([math.pi / 2, math.pi])
    shared = instants[1]
    assert shared.multiplicity == 2
    assert sorted(round(c.eigenvalue, 6) for c in shared.contributors) == [-4.0, -1.0]
    assert sorted(c.k for c in shared.contributors) == [1, 2]


def test_final_instant_flag():
    """Test that an instant at T is final."""
    instants = _instants(sip_degenerate())

    assert len(instants) == 1
    assert instants[0].is_final
    assert instants[0].degenerate


def test_instant_just_beyond_horizon_excluded():
    """Test that t slightly above T is not counted."""
    system = harmonic().with_horizon(math.pi * (1 - 1e-6))

    assert _instants(system) == []


def test_count_formula_matches_instants():
    """Test that the count formula equals the sum of multiplicities."""
    for system in (harmonic(), riemannian(), split_signature(), sip_degenerate(), conjugated_jordan()):
        spectrum = real_spectrum(system)
        instants = conjugate_instants(system, spectrum)
        assert count_formula(spectrum, system.T) == sum(i.multiplicity for i in instants)


def test_degeneracy_iff_null_eigenspace_form():
    """Test degenerate instants against the nullity of g on Ker(A - lambda)."""
    cases = [
        (sip_degenerate(), True),
        (conjugated_jordan(), None),
        (riemannian(), False),
        (split_signature(), False),
        (canonical_system([(-1.0, 2, -1)], T=4.0), True),
    ]
    for system, expected in cases:
        decomposition = decompose(system)
        for instant in conjugate_instants(system, decomposition.spectrum):
            for contributor in instant.contributors:
                record = decomposition.record_for(contributor.eigenvalue)
                nullity = inertia(eigenspace_form(system, contributor.eigenvalue)).nullity
                assert (record.algebraic_multiplicity != record.geometric_multiplicity) == (nullity > 0)
            if expected is not None:
                assert instant.degenerate == expected


def test_no_accumulation_margin():
    """Test that the first instant is at least pi / sqrt(rho)."""
    system = split_signature()
    spectrum = real_spectrum(system)
    margin = no_accumulation_margin(conjugate_instants(system, spectrum), spectrum)

    assert margin == pytest.approx(0.0, abs=1e-12)
    assert no_accumulation_margin([], spectrum) is None


def test_complex_pairs_contribute_nothing():
    """Test that complex eigenvalues produce no instants."""
    system = canonical_system([], pairs=[(-1.0, 2.0)], T=20.0)

    assert _instants(system) == []
    assert np.isclose(count_formula(real_spectrum(system), 20.0), 0)
