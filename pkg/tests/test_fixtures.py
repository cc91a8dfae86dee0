"""Tests for the named and random system generators."""

import math

import numpy as np
import pytest
from maslov_analysis import fixtures
from maslov_analysis.fixtures import (
    instant_times,
    random_canonical_system,
    random_final_instant_system,
    random_riemannian_system,
    resolvable,
)


def test_resolvable_rejects_instant_near_horizon():
    """Test that an instant within the gap of T is rejected."""
    assert not resolvable([-1.0], math.pi + 0.01)
    assert resolvable([-1.0], math.pi + 0.1)


def test_resolvable_allows_final_eigenvalue_at_horizon():
    """Test that the final eigenvalue may sit exactly at T."""
    assert not resolvable([-1.0, -4.0], math.pi)
    assert resolvable([-1.0], math.pi, final=-1.0)


def test_final_instant_horizon_is_an_instant():
    """Test that T equals k pi / sqrt|lambda| for some eigenvalue."""
    rng = np.random.default_rng(3)
    for _ in range(20):
        system = random_final_instant_system(rng)
        eigenvalues = np.linalg.eigvals(system.A)
        negative = [float(v.real) for v in eigenvalues if abs(v.imag) < 1e-6 and v.real < 0]
        times = instant_times(negative, system.T * (1.0 + 1e-6))
        assert any(abs(t - system.T) <= 1e-6 * system.T for t, _ in times)


def test_generators_raise_when_nothing_resolves(monkeypatch):
    """Test that exhausting the draws raises instead of returning a rejected system."""
    monkeypatch.setattr(fixtures, "resolvable", lambda *args, **kwargs: False)
    rng = np.random.default_rng(0)

    with pytest.raises(ValueError):
        random_canonical_system(rng)
    with pytest.raises(ValueError):
        random_riemannian_system(rng)
    with pytest.raises(ValueError):
        random_final_instant_system(rng)
