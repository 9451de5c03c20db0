"""Initial-state preparation and the Wootters concurrence of two qubits."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import DensityMatrix, Trajectory
from .model import DressedBasis, dressed_to_computational

# sigma_y (x) sigma_y is real in the computational basis.
_SPIN_FLIP = np.array([
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
])

_CLAMP_TOL = 1e-8


@dataclass(frozen=True)
class InitialStateSpec:
    """Pure initial state of one of the two paper families.

    one_excitation:  sqrt(p)|01> + e^{i phi} sqrt(1-p)|10>
    two_excitation:  sqrt(p)|00> + e^{i phi} sqrt(1-p)|11>

    p must lie in [0, 1]; phi is reduced modulo 2*pi.
    """

    family: str
    p: float
    phi: float = 0.0

    def __post_init__(self):
        if self.family not in ("one_excitation", "two_excitation"):
            raise ValueError(f"unknown initial-state family {self.family!r}")
        if not (math.isfinite(self.p) and 0.0 <= self.p <= 1.0):
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not math.isfinite(self.phi):
            raise ValueError("phi must be finite")
        object.__setattr__(self, "phi", self.phi % (2.0 * math.pi))


def build_initial(spec: InitialStateSpec, basis: DressedBasis) -> DensityMatrix:
    """Dressed-basis projector onto the requested initial state.

    The one-excitation family lives in the span of |b>, |c> (only
    rho_bb, rho_cc, rho_bc are populated); the two-excitation family in
    the span of |a>, |d>.  The result is always a rank-1 projector.
    """
    root_p = math.sqrt(spec.p)
    root_q = math.sqrt(1.0 - spec.p)
    phase = complex(math.cos(spec.phi), math.sin(spec.phi))
    amps = np.zeros(4, dtype=complex)
    if spec.family == "one_excitation":
        half = 0.5 * basis.theta_odd
        amps[1] = phase * root_q * math.cos(half) - root_p * math.sin(half)
        amps[2] = phase * root_q * math.sin(half) + root_p * math.cos(half)
    else:
        half = 0.5 * basis.theta_even
        amps[0] = root_p * math.cos(half) - phase * root_q * math.sin(half)
        amps[3] = root_p * math.sin(half) + phase * root_q * math.cos(half)
    return DensityMatrix.pure(amps, "dressed")


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit computational-basis state.

    Forms the spin-flipped state rho_tilde = (sy x sy) rho* (sy x sy) and
    takes the eigenvalues of rho @ rho_tilde through the Hermitian
    equivalent sqrt(rho) rho_tilde sqrt(rho) (same spectrum, but a
    symmetric eigenproblem).  Eigenvalues within rounding noise below
    zero are clamped; anything below -1e-8 means the input was not a
    physical state.

    Returns a value in [0, 1]: 0 for separable states, 1 for Bell states.
    """
    if rho.basis != "computational":
        raise ValueError(
            f"concurrence needs a computational-basis state, got {rho.basis!r}")

    w, v = np.linalg.eigh(rho.matrix)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    flipped = _SPIN_FLIP @ rho.matrix.conj() @ _SPIN_FLIP
    lam = np.linalg.eigvalsh(root @ flipped @ root)

    if lam.min() < -_CLAMP_TOL:
        raise ValueError("spin-flip eigenvalue significantly negative: "
                         "input is not a physical state")
    roots = np.sqrt(np.clip(lam, 0.0, None))[::-1]   # decreasing
    return max(0.0, roots[0] - roots[1] - roots[2] - roots[3])


def concurrence_series(traj: Trajectory, basis: DressedBasis) -> np.ndarray:
    """Concurrence at every sample of a dressed-basis trajectory.

    Each state is rotated to the computational basis first; the result is
    stored on traj.concurrence and returned.
    """
    values = np.array([
        concurrence(dressed_to_computational(basis, state))
        for state in traj.states
    ])
    traj.concurrence = values
    return values
