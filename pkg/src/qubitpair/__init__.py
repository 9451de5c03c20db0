"""Dissipative dynamics and entanglement of two coupled qubits, each in
its own bosonic thermal reservoir, with the counter-rotating qubit-qubit
interaction kept.

Typical use: build ModelParams, diagonalize() into the dressed basis,
derive the dissipator coefficients with lindblad_rates(), evolve an
initial state with integrate() or analytic_zero_temperature(), and map
the trajectory through concurrence_series().
"""

from .model import (
    ModelParams,
    DressedBasis,
    hamiltonian_matrix,
    diagonalize,
    brute_force_eigensystem,
    dressed_to_computational,
)
from .rates import BathSpectrum, LindbladRates, kms_rate, lindblad_rates
from .dynamics import (
    DensityMatrix,
    Trajectory,
    IntegrationError,
    generator_apply,
    action_matrix,
    integrate,
    analytic_zero_temperature,
    stationary_state,
)
from .entanglement import (
    InitialStateSpec,
    build_initial,
    concurrence,
    concurrence_series,
)

__all__ = [
    "ModelParams", "DressedBasis", "hamiltonian_matrix", "diagonalize",
    "brute_force_eigensystem", "dressed_to_computational",
    "BathSpectrum", "LindbladRates", "kms_rate", "lindblad_rates",
    "DensityMatrix", "Trajectory", "IntegrationError", "generator_apply",
    "action_matrix", "integrate", "analytic_zero_temperature",
    "stationary_state",
    "InitialStateSpec", "build_initial", "concurrence", "concurrence_series",
]

__version__ = "0.1.0"
