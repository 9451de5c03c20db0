"""Two coupled qubits: Hamiltonian, dressed basis and basis changes.

The system is a pair of two-level systems with transition frequencies
omega1, omega2 and an x-x coupling of strength lambda/2 that keeps the
counter-rotating terms.  Everything is expressed in a fixed reference
unit with hbar = k_B = 1.  The computational basis is ordered
{|00>, |01>, |10>, |11>} (first digit = qubit 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rates import BathSpectrum

# Dressed-state indices in all 4x4 matrices tagged "dressed".
A, B, C, D = 0, 1, 2, 3

ORTHOGONALITY_TOL = 1e-12


def _require_finite(name, value):
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Hamiltonian parameters plus one bath description per qubit.

    Parameters
    ----------
    omega1, omega2 : float
        Qubit transition frequencies, both > 0 and omega2 >= omega1.
    coupling : float
        Interaction strength lambda >= 0 (the Hamiltonian carries lambda/2).
    bath1, bath2 : BathSpectrum
        Reservoir seen by qubit 1 and qubit 2 respectively.
    """

    omega1: float
    omega2: float
    coupling: float
    bath1: BathSpectrum
    bath2: BathSpectrum

    def __post_init__(self):
        for name in ("omega1", "omega2", "coupling"):
            _require_finite(name, getattr(self, name))
        if self.omega1 <= 0 or self.omega2 <= 0:
            raise ValueError("qubit frequencies must be positive")
        if self.omega2 < self.omega1:
            # No silent relabeling: swapping would also swap which bath
            # couples to which qubit.
            raise ValueError("omega2 must be >= omega1 (relabel the qubits)")
        if self.coupling < 0:
            raise ValueError("coupling must be >= 0")


@dataclass(frozen=True, eq=False)
class DressedBasis:
    """Eigensystem of the coupled two-qubit Hamiltonian.

    energies are ascending (E_a <= E_b <= E_c <= E_d).  theta_even mixes
    the even-parity pair {|00>,|11>} into |a>, |d>; theta_odd mixes the
    odd-parity pair {|01>,|10>} into |b>, |c>.  The columns of U are the
    dressed states |a>, |b>, |c>, |d> written in the computational basis,
    so U @ rho_dressed @ U.T re-expresses a state.  omega_low and
    omega_high are the two Bohr frequencies of the allowed transitions
    (b->a, d->c) and (c->a, d->b).
    """

    energies: np.ndarray
    theta_even: float
    theta_odd: float
    omega_low: float      # E_b - E_a = E_d - E_c
    omega_high: float     # E_c - E_a = E_d - E_b
    omega_da: float       # E_d - E_a = omega_low + omega_high
    omega_cb: float       # E_c - E_b = omega_high - omega_low
    U: np.ndarray

    def __post_init__(self):
        self.energies.setflags(write=False)
        self.U.setflags(write=False)


def hamiltonian_matrix(params: ModelParams) -> np.ndarray:
    """System Hamiltonian in the computational basis {|00>,|01>,|10>,|11>}.

    Diagonal (0, omega2, omega1, omega1+omega2); the x-x interaction puts
    lambda/2 on the |00><11| and |01><10| entries (and transposes).
    """
    w1, w2, half = params.omega1, params.omega2, 0.5 * params.coupling
    return np.array([
        [0.0,  0.0,  0.0,  half],
        [0.0,  w2,   half, 0.0],
        [0.0,  half, w1,   0.0],
        [half, 0.0,  0.0,  w1 + w2],
    ])


def diagonalize(params: ModelParams) -> DressedBasis:
    """Closed-form eigensystem of the coupled pair.

    The Hamiltonian is block diagonal over {|00>,|11>} and {|01>,|10>};
    each 2x2 block is rotated away by a mixing angle.  Both angles are
    computed with atan2 (arguments lambda and omega2 +/- omega1), which is
    exact in the uncoupled limit and avoids cancellation near theta = 0.
    The degenerate resonant uncoupled case (lambda = 0, omega1 = omega2)
    takes theta_odd = pi/2, the lambda -> 0+ limit at resonance.

    Returns
    -------
    DressedBasis
    """
    w1, w2, lam = params.omega1, params.omega2, params.coupling
    mean = 0.5 * (w1 + w2)
    big = 0.5 * math.hypot(w2 + w1, lam)    # half-splitting, {|00>,|11>} block
    small = 0.5 * math.hypot(w2 - w1, lam)  # half-splitting, {|01>,|10>} block

    theta_even = math.atan2(lam, w1 + w2)
    if lam == 0.0 and w2 == w1:
        theta_odd = 0.5 * math.pi
    else:
        theta_odd = math.atan2(lam, w2 - w1)

    energies = np.array([mean - big, mean - small, mean + small, mean + big])
    omega_low = big - small
    omega_high = big + small

    ci, si = math.cos(0.5 * theta_even), math.sin(0.5 * theta_even)
    cii, sii = math.cos(0.5 * theta_odd), math.sin(0.5 * theta_odd)
    # Columns: |a>, |b>, |c>, |d> over rows {|00>,|01>,|10>,|11>}.
    U = np.array([
        [ci,   0.0,  0.0, si],
        [0.0, -sii,  cii, 0.0],
        [0.0,  cii,  sii, 0.0],
        [-si,  0.0,  0.0, ci],
    ])

    return DressedBasis(
        energies=energies,
        theta_even=theta_even,
        theta_odd=theta_odd,
        omega_low=omega_low,
        omega_high=omega_high,
        omega_da=omega_low + omega_high,
        omega_cb=omega_high - omega_low,
        U=U,
    )


def brute_force_eigensystem(H: np.ndarray, max_sweeps: int = 100):
    """Eigensystem of a real symmetric matrix by cyclic Jacobi rotations.

    Independent test oracle: shares no code with diagonalize().  Returns
    (eigenvalues ascending, eigenvector columns, orthonormal).

    Raises
    ------
    RuntimeError
        If the off-diagonal norm has not converged after max_sweeps.
    """
    M = np.array(H, dtype=float)
    n = M.shape[0]
    if M.shape != (n, n) or not np.allclose(M, M.T, atol=1e-12):
        raise ValueError("matrix must be square and symmetric")
    V = np.eye(n)
    scale = np.linalg.norm(M)
    if scale == 0.0:
        return np.zeros(n), V

    for _ in range(max_sweeps):
        off = np.linalg.norm(M - np.diag(np.diag(M)))
        if off <= 1e-15 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(M[p, q]) <= 1e-18 * scale:
                    continue
                # Stable rotation angle (Golub & Van Loan sec. 8.5).
                tau = (M[q, q] - M[p, p]) / (2.0 * M[p, q])
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                R = np.eye(n)
                R[p, p] = R[q, q] = c
                R[p, q] = s
                R[q, p] = -s
                M = R.T @ M @ R
                V = V @ R
    else:
        raise RuntimeError("Jacobi eigensolver failed to converge")

    order = np.argsort(np.diag(M), kind="stable")
    return np.diag(M)[order].copy(), V[:, order].copy()


def dressed_to_computational(basis: DressedBasis, rho):
    """Re-express a dressed-basis density matrix in the computational basis.

    rho must be tagged dressed; the result is U rho U^T tagged
    computational.  Trace and spectrum are preserved (U is orthogonal).
    """
    from .dynamics import DensityMatrix  # cycle: dynamics needs DressedBasis

    if not isinstance(rho, DensityMatrix):
        raise TypeError("expected a DensityMatrix")
    if rho.basis != "dressed":
        raise ValueError(f"expected a dressed-basis state, got {rho.basis!r}")
    out = basis.U @ rho.matrix @ basis.U.T
    return DensityMatrix(out, basis="computational")
