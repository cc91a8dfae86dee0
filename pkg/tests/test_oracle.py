"""Tests for the definitional oracle."""

import math

import numpy as np
import pytest
from scipy import linalg
from maslov_analysis.config import Tolerances
from maslov_analysis.errors import SeriesError
from maslov_analysis.fixtures import (
    harmonic,
    random_canonical_system,
    riemannian,
    sip_degenerate,
    split_signature,
)
from maslov_analysis.oracle import (
    cosine_sine,
    cz_definitional,
    detect_conjugate,
    fundamental_solution,
    fundamental_solutions,
    hamiltonian,
    maslov_definitional,
    path_sample,
    split_generalized_kernel,
)
from maslov_analysis.liegroup import jacobi_system, oscillator
from maslov_analysis.oracle.lagrangian import merge_crossings
from maslov_analysis.oracle.models import Crossing


def test_cosine_sine_of_scalar():
    """Test C(-a^2) = cos a and S(-a^2) = sin a / a."""
    for alpha in (0.1, 1.0, 3.0, 12.0):
        cosine, sine = cosine_sine(np.array([[-alpha ** 2]]))
        assert cosine[0, 0] == pytest.approx(math.cos(alpha), abs=1e-12)
        assert sine[0, 0] == pytest.approx(math.sin(alpha) / alpha, abs=1e-12)


def test_cosine_sine_of_positive_argument():
    """Test C(a^2) = cosh a."""
    cosine, sine = cosine_sine(np.array([[4.0]]))

    assert cosine[0, 0] == pytest.approx(math.cosh(2.0))
    assert sine[0, 0] == pytest.approx(math.sinh(2.0) / 2.0)


def test_cosine_sine_of_nilpotent():
    """Test the series on a nilpotent matrix terminates exactly."""
    nilpotent = np.array([[0.0, 1.0], [0.0, 0.0]])
    cosine, sine = cosine_sine(nilpotent)

    assert np.allclose(cosine, [[1.0, 0.5], [0.0, 1.0]])
    assert np.allclose(sine, [[1.0, 1.0 / 6.0], [0.0, 1.0]])


def test_cosine_sine_rejects_non_finite():
    """Test that NaN input raises."""
    with pytest.raises(SeriesError):
        cosine_sine(np.array([[np.nan]]))


def test_fundamental_solution_matches_expm():
    """Test Phi(t) against scipy.linalg.expm(tX)."""
    rng = np.random.default_rng(14)
    system = random_canonical_system(rng, dim=3)
    for t in (0.3, 1.7, system.T):
        expected = linalg.expm(t * hamiltonian(system))
        computed = fundamental_solutions(system, [t])[0]
        assert np.allclose(computed, expected, rtol=1e-7, atol=1e-7 * np.max(np.abs(expected)))


def test_fundamental_solution_is_symplectic():
    """Test the symplecticity check on a mixed signature system."""
    phi = fundamental_solution(split_signature(), 3.0)

    assert phi.shape == (4, 4)
    assert path_sample(split_signature(), 3.0).symplectic_residual <= 1e-10


def test_path_sample_intersection():
    """Test the intersection dimension at a conjugate instant."""
    assert path_sample(riemannian(), math.pi).intersection_dim == 2
    assert path_sample(riemannian(), 1.0).intersection_dim == 0


def test_detect_conjugate_harmonic():
    """Test crossings at pi and 2 pi for the harmonic oscillator."""
    crossings = detect_conjugate(harmonic())

    assert [c.t for c in crossings] == pytest.approx([math.pi, 2 * math.pi], abs=1e-8)
    assert [c.deficiency for c in crossings] == [1, 1]


def test_crossings_are_refined_to_the_instant():
    """Test that refined crossings land within 1e-9 T of the exact instants."""
    cases = [
        (harmonic(), [math.pi, 2 * math.pi]),
        (jacobi_system(oscillator(), [0, 0, 0, 1], 10.0), [2 * math.pi * math.sqrt(2.0)]),
    ]

    for system, expected in cases:
        crossings = detect_conjugate(system)
        assert len(crossings) == len(expected)
        for crossing, t in zip(crossings, expected):
            assert abs(crossing.t - t) < 1e-9 * system.T


def test_detect_conjugate_final_instant():
    """Test that a crossing at T is reported at T."""
    crossings = detect_conjugate(sip_degenerate())

    assert len(crossings) == 1
    assert crossings[0].t == pytest.approx(math.pi, abs=1e-8)


def test_maslov_is_chart_independent():
    """Test that random charts give the same index."""
    system = split_signature()
    expected = maslov_definitional(system)

    for seed in (1, 2, 3):
        assert maslov_definitional(system, seed=seed, randomize=True) == expected


def test_maslov_is_grid_independent():
    """Test that a finer grid gives the same index."""
    system = split_signature()
    fine = Tolerances(grid=8192)

    assert maslov_definitional(system, fine) == maslov_definitional(system)


def test_cz_of_harmonic_oscillator():
    """Test the graph path index of v'' = -v over [0, 7]."""
    assert cz_definitional(harmonic()) == -4


def test_split_generalized_kernel():
    """Test splitting off Ker A^n."""
    system = random_canonical_system(np.random.default_rng(31), dim=4, singular=True)
    kernel, complement = split_generalized_kernel(system)

    assert kernel is not None
    assert kernel.dim + (complement.dim if complement is not None else 0) == 4
    assert np.allclose(np.linalg.matrix_power(kernel.A, kernel.dim), 0.0, atol=1e-8)


def test_merge_keeps_final_crossing():
    """Test that merging keeps the crossing exactly at the horizon."""
    merged = merge_crossings(
        [Crossing(1.0 - 1e-9, 1, 1e-9), Crossing(1.0, 1, 1e-7)], band=1e-6, horizon=1.0
    )

    assert len(merged) == 1
    assert merged[0].t == 1.0
