"""Definitional oracle: indices computed from the fundamental solution."""

from .models import Crossing, SymplecticPathSample
from .series import cosine_sine, cosine_sine_stack, fundamental_solution, fundamental_solutions, hamiltonian
from .lagrangian import ChartAccumulator, LagrangianPath, find_crossings, principal_sines
from .definitional import (
    cz_definitional,
    detect_conjugate,
    maslov_definitional,
    path_sample,
    split_generalized_kernel,
    symplectic_conjugate,
    symplectic_maslov,
)

__all__ = [
    "Crossing",
    "SymplecticPathSample",
    "cosine_sine",
    "cosine_sine_stack",
    "fundamental_solution",
    "fundamental_solutions",
    "hamiltonian",
    "ChartAccumulator",
    "LagrangianPath",
    "find_crossings",
    "principal_sines",
    "cz_definitional",
    "detect_conjugate",
    "maslov_definitional",
    "path_sample",
    "split_generalized_kernel",
    "symplectic_conjugate",
    "symplectic_maslov",
]
