"""Dissipative time evolution of the coupled pair in the dressed basis.

The generator is the Markovian master equation of the two-qubit system:
a commutator with the (diagonal) dressed Hamiltonian plus twelve
dissipator terms built from the four jump dyads |a><b|, |c><d| (the
omega_low channel) and |a><c|, |b><d| (the omega_high channel), their
excitation conjugates, and four cross terms that couple the coherence
pairs (rho_ab, rho_cd) and (rho_ac, rho_bd).

Three solvers are provided: a generic adaptive Runge-Kutta integrator of
the full generator, the closed-form zero-temperature solution valid when
all excitation and cross coefficients vanish, and the closed-form
stationary populations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .rates import LindbladRates

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10

# Fixed integrator tolerances (per accepted step).
RTOL = 1e-10
ATOL = 1e-12


class IntegrationError(RuntimeError):
    """Adaptive integration failed (step underflow or non-finite state)."""


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """4x4 Hermitian unit-trace state, tagged with the basis it lives in.

    basis is "dressed" (rows/cols ordered a, b, c, d) or "computational"
    (ordered |00>, |01>, |10>, |11>).  Construction enforces Hermiticity,
    unit trace and positivity up to numeric noise.
    """

    matrix: np.ndarray
    basis: str

    def __post_init__(self):
        if self.basis not in ("dressed", "computational"):
            raise ValueError(f"unknown basis tag {self.basis!r}")
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (4, 4):
            raise ValueError("density matrix must be 4x4")
        if not np.all(np.isfinite(mat.view(float))):
            raise ValueError("density matrix entries must be finite")
        if np.max(np.abs(mat - mat.conj().T)) > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(mat.trace() - 1.0) > TRACE_TOL:
            raise ValueError(f"trace must be 1, got {mat.trace():.15g}")
        if np.linalg.eigvalsh(mat).min() < -POSITIVITY_TOL:
            raise ValueError("density matrix has a significantly negative eigenvalue")
        object.__setattr__(self, "matrix", mat)
        mat.setflags(write=False)

    @classmethod
    def pure(cls, amplitudes, basis: str) -> "DensityMatrix":
        """Projector |psi><psi| onto a (normalized) four-amplitude vector."""
        psi = np.asarray(amplitudes, dtype=complex).reshape(4)
        norm = np.linalg.norm(psi)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        psi = psi / norm
        return cls(np.outer(psi, psi.conj()), basis)

    @property
    def populations(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()


@dataclass(eq=False)
class Trajectory:
    """Sampled evolution: time grid, states, and derived observables."""

    times: np.ndarray
    states: list
    populations: np.ndarray          # (n, 4) dressed populations
    concurrence: np.ndarray | None = None

    def __post_init__(self):
        if len(self.states) != len(self.times):
            raise ValueError("one state per time point required")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")


# Jump dyads; indices 0..3 are the dressed states a..d.
def _dyad(i, j):
    m = np.zeros((4, 4))
    m[i, j] = 1.0
    return m


_AB, _CD = _dyad(0, 1), _dyad(2, 3)   # omega_low decays  b->a, d->c
_AC, _BD = _dyad(0, 2), _dyad(1, 3)   # omega_high decays c->a, d->b


def _apply_generator(energies, rates: LindbladRates, rho):
    """Right-hand side of the master equation for a raw 4x4 matrix."""
    h = energies
    out = -1j * (h[:, None] - h[None, :]) * rho   # -i[H, rho], H diagonal

    def down(rate, jump):
        # rate * (A rho A^T - 1/2 {A^T A, rho})
        return rate * (jump @ rho @ jump.T
                       - 0.5 * (jump.T @ jump @ rho + rho @ jump.T @ jump))

    def up(rate, jump):
        return rate * (jump.T @ rho @ jump
                       - 0.5 * (jump @ jump.T @ rho + rho @ jump @ jump.T))

    out += down(rates.c_low, _AB) + down(rates.c_low, _CD)
    out += down(rates.c_high, _AC) + down(rates.c_high, _BD)
    out += up(rates.cbar_low, _AB) + up(rates.cbar_low, _CD)
    out += up(rates.cbar_high, _AC) + up(rates.cbar_high, _BD)

    out += rates.c_cross_low * (_AB @ rho @ _CD.T + _CD @ rho @ _AB.T)
    out += rates.c_cross_high * (_AC @ rho @ _BD.T + _BD @ rho @ _AC.T)
    out += rates.cbar_cross_low * (_CD.T @ rho @ _AB + _AB.T @ rho @ _CD)
    out += rates.cbar_cross_high * (_BD.T @ rho @ _AC + _AC.T @ rho @ _BD)
    return out


def generator_apply(basis, rates: LindbladRates, rho: DensityMatrix) -> np.ndarray:
    """d(rho)/dt for a dressed-basis state.

    The output is Hermitian and traceless (the generator preserves both
    properties of the state).
    """
    if rho.basis != "dressed":
        raise ValueError(f"expected a dressed-basis state, got {rho.basis!r}")
    return _apply_generator(basis.energies, rates, rho.matrix)


def action_matrix(basis, rates: LindbladRates) -> np.ndarray:
    """16x16 matrix acting on row-major vec(rho), built column by column
    from the generator itself."""
    L = np.empty((16, 16), dtype=complex)
    for k in range(16):
        elem = np.zeros((4, 4), dtype=complex)
        elem[divmod(k, 4)] = 1.0
        L[:, k] = _apply_generator(basis.energies, rates, elem).reshape(16)
    return L


# --------------------------------------------------------------------------
# Adaptive integrator: Dormand-Prince 8(5,3) (the dop853 tableau of Hairer,
# Norsett & Wanner), 12 stages plus one trailing evaluation reused for the
# blended 5th/3rd-order error estimate.
# --------------------------------------------------------------------------

_RK_A = np.zeros((12, 12))
_RK_A[1, 0] = 5.26001519587677318785587544488e-2
_RK_A[2, 0] = 1.97250569845378994544595329183e-2
_RK_A[2, 1] = 5.91751709536136983633785987549e-2
_RK_A[3, 0] = 2.95875854768068491816892993775e-2
_RK_A[3, 2] = 8.87627564304205475450678981324e-2
_RK_A[4, 0] = 2.41365134159266685502369798665e-1
_RK_A[4, 2] = -8.84549479328286085344864962717e-1
_RK_A[4, 3] = 9.24834003261792003115737966543e-1
_RK_A[5, 0] = 3.7037037037037037037037037037e-2
_RK_A[5, 3] = 1.70828608729473871279604482173e-1
_RK_A[5, 4] = 1.25467687566822425016691814123e-1
_RK_A[6, 0] = 3.7109375e-2
_RK_A[6, 3] = 1.70252211019544039314978060272e-1
_RK_A[6, 4] = 6.02165389804559606850219397283e-2
_RK_A[6, 5] = -1.7578125e-2
_RK_A[7, 0] = 3.70920001185047927108779319836e-2
_RK_A[7, 3] = 1.70383925712239993810214054705e-1
_RK_A[7, 4] = 1.07262030446373284651809199168e-1
_RK_A[7, 5] = -1.53194377486244017527936158236e-2
_RK_A[7, 6] = 8.27378916381402288758473766002e-3
_RK_A[8, 0] = 6.24110958716075717114429577812e-1
_RK_A[8, 3] = -3.36089262944694129406857109825
_RK_A[8, 4] = -8.68219346841726006818189891453e-1
_RK_A[8, 5] = 2.75920996994467083049415600797e1
_RK_A[8, 6] = 2.01540675504778934086186788979e1
_RK_A[8, 7] = -4.34898841810699588477366255144e1
_RK_A[9, 0] = 4.77662536438264365890433908527e-1
_RK_A[9, 3] = -2.48811461997166764192642586468
_RK_A[9, 4] = -5.90290826836842996371446475743e-1
_RK_A[9, 5] = 2.12300514481811942347288949897e1
_RK_A[9, 6] = 1.52792336328824235832596922938e1
_RK_A[9, 7] = -3.32882109689848629194453265587e1
_RK_A[9, 8] = -2.03312017085086261358222928593e-2
_RK_A[10, 0] = -9.3714243008598732571704021658e-1
_RK_A[10, 3] = 5.18637242884406370830023853209
_RK_A[10, 4] = 1.09143734899672957818500254654
_RK_A[10, 5] = -8.14978701074692612513997267357
_RK_A[10, 6] = -1.85200656599969598641566180701e1
_RK_A[10, 7] = 2.27394870993505042818970056734e1
_RK_A[10, 8] = 2.49360555267965238987089396762
_RK_A[10, 9] = -3.0467644718982195003823669022
_RK_A[11, 0] = 2.27331014751653820792359768449
_RK_A[11, 3] = -1.05344954667372501984066689879e1
_RK_A[11, 4] = -2.00087205822486249909675718444
_RK_A[11, 5] = -1.79589318631187989172765950534e1
_RK_A[11, 6] = 2.79488845294199600508499808837e1
_RK_A[11, 7] = -2.85899827713502369474065508674
_RK_A[11, 8] = -8.87285693353062954433549289258
_RK_A[11, 9] = 1.23605671757943030647266201528e1
_RK_A[11, 10] = 6.43392746015763530355970484046e-1

_RK_B = np.zeros(12)
_RK_B[0] = 5.42937341165687622380535766363e-2
_RK_B[5] = 4.45031289275240888144113950566
_RK_B[6] = 1.89151789931450038304281599044
_RK_B[7] = -5.8012039600105847814672114227
_RK_B[8] = 3.1116436695781989440891606237e-1
_RK_B[9] = -1.52160949662516078556178806805e-1
_RK_B[10] = 2.01365400804030348374776537501e-1
_RK_B[11] = 4.47106157277725905176885569043e-2

_RK_E3 = np.zeros(13)
_RK_E3[:12] = _RK_B
_RK_E3[0] -= 0.244094488188976377952755905512
_RK_E3[8] -= 0.733846688281611857341361741547
_RK_E3[11] -= 0.220588235294117647058823529412e-1

_RK_E5 = np.zeros(13)
_RK_E5[0] = 0.1312004499419488073250102996e-1
_RK_E5[5] = -0.1225156446376204440720569753e1
_RK_E5[6] = -0.4957589496572501915214079952
_RK_E5[7] = 0.1664377182454986536961530415e1
_RK_E5[8] = -0.3503288487499736816886487290
_RK_E5[9] = 0.3341791187130174790297318841
_RK_E5[10] = 0.8192320648511571246570742613e-1
_RK_E5[11] = -0.2235530786388629525884427845e-1

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0


def _compact_rows(table):
    # Flatten the nonzero entries of a stage table for tight inner loops.
    ptr = np.zeros(table.shape[0] + 1, dtype=np.int64)
    cols = []
    vals = []
    for s in range(table.shape[0]):
        nz = np.nonzero(table[s])[0]
        cols.extend(nz)
        vals.extend(table[s, nz])
        ptr[s + 1] = len(cols)
    return ptr, np.array(cols, dtype=np.int64), np.array(vals)


_A_PTR, _A_COL, _A_VAL = _compact_rows(_RK_A)
_B_COL = np.nonzero(_RK_B)[0].astype(np.int64)
_B_VAL = _RK_B[_B_COL]
_E3_COL = np.nonzero(_RK_E3)[0].astype(np.int64)
_E3_VAL = _RK_E3[_E3_COL]
_E5_COL = np.nonzero(_RK_E5)[0].astype(np.int64)
_E5_VAL = _RK_E5[_E5_COL]


def _to_csr(L):
    indptr = np.zeros(L.shape[0] + 1, dtype=np.int64)
    cols = []
    vals = []
    for i in range(L.shape[0]):
        for j in range(L.shape[1]):
            if L[i, j] != 0.0:
                cols.append(j)
                vals.append(L[i, j])
        indptr[i + 1] = len(cols)
    return indptr, np.array(cols, dtype=np.int64), np.array(vals, dtype=np.complex128)


@njit(cache=True)
def _matvec(indptr, cols, vals, x, out):
    # Sparse action-matrix product; the matrix is ~85% structural zeros.
    for i in range(out.shape[0]):
        acc = 0.0 + 0.0j
        for k in range(indptr[i], indptr[i + 1]):
            acc += vals[k] * x[cols[k]]
        out[i] = acc


@njit(cache=True)
def _hermitize(y):
    # y is vec(rho); average rho with its conjugate transpose in place.
    for r in range(4):
        v = y[5 * r]
        y[5 * r] = complex(v.real, 0.0)
        for c in range(r + 1, 4):
            w = 0.5 * (y[4 * r + c] + np.conj(y[4 * c + r]))
            y[4 * r + c] = w
            y[4 * c + r] = np.conj(w)


@njit(cache=True)
def _all_finite(y):
    for v in y:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            return False
    return True


@njit(cache=True)
def _error_norm(K, h, y, y_new, e5, e3, rtol, atol):
    # Blended 5th/3rd order estimate of the dop853 pair.
    n = y.shape[0]
    for i in range(n):
        e5[i] = 0.0 + 0.0j
        e3[i] = 0.0 + 0.0j
    for k in range(_E5_COL.shape[0]):
        a = _E5_VAL[k]
        row = K[_E5_COL[k]]
        for i in range(n):
            e5[i] += a * row[i]
    for k in range(_E3_COL.shape[0]):
        a = _E3_VAL[k]
        row = K[_E3_COL[k]]
        for i in range(n):
            e3[i] += a * row[i]
    err5_sq = 0.0
    err3_sq = 0.0
    for i in range(n):
        scale = atol + rtol * max(abs(y[i]), abs(y_new[i]))
        err5_sq += abs(e5[i] / scale) ** 2
        err3_sq += abs(e3[i] / scale) ** 2
    denom = err5_sq + 0.01 * err3_sq
    if denom == 0.0:
        return 0.0
    return abs(h) * err5_sq / math.sqrt(denom * n)


@njit(cache=True)
def _initial_step(indptr, cols, vals, y0, f0, t_end, max_step, rtol, atol):
    n = y0.shape[0]
    d0_sq = 0.0
    d1_sq = 0.0
    for i in range(n):
        scale = atol + rtol * abs(y0[i])
        d0_sq += abs(y0[i] / scale) ** 2
        d1_sq += abs(f0[i] / scale) ** 2
    d0 = math.sqrt(d0_sq / n)
    d1 = math.sqrt(d1_sq / n)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1

    y1 = y0 + h0 * f0
    f1 = np.empty(n, dtype=np.complex128)
    _matvec(indptr, cols, vals, y1, f1)
    d2_sq = 0.0
    for i in range(n):
        scale = atol + rtol * abs(y0[i])
        d2_sq += abs((f1[i] - f0[i]) / scale) ** 2
    d2 = math.sqrt(d2_sq / n) / h0

    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** (1.0 / 9.0)   # method order 8
    return min(100.0 * h0, h1, max_step, t_end)


@njit(cache=True)
def _dop853_core(indptr, cols, vals, y0, t_grid, max_step, rtol, atol, min_step):
    """Integrate y' = L y over t_grid, landing exactly on each grid point.

    L is passed in CSR form.  Returns (samples, status, n_steps); status
    0 = ok, 1 = step size underflow, 2 = non-finite state.
    """
    n = y0.shape[0]
    n_out = t_grid.shape[0]
    out = np.empty((n_out, n), dtype=np.complex128)
    out[0] = y0

    y = y0.copy()
    t = t_grid[0]
    f = np.empty(n, dtype=np.complex128)
    _matvec(indptr, cols, vals, y, f)
    K = np.empty((13, n), dtype=np.complex128)
    stage = np.empty(n, dtype=np.complex128)
    y_new = np.empty(n, dtype=np.complex128)
    e5 = np.empty(n, dtype=np.complex128)
    e3 = np.empty(n, dtype=np.complex128)

    h_next = _initial_step(indptr, cols, vals, y, f,
                           t_grid[n_out - 1], max_step, rtol, atol)
    n_steps = 0
    rejected = False

    for i_out in range(1, n_out):
        t_target = t_grid[i_out]
        while t < t_target:
            clipped = t_target - t < h_next
            h = min(h_next, t_target - t)
            if h < min_step:
                return out, 1, n_steps

            for i in range(n):
                K[0, i] = f[i]
            for s in range(1, 12):
                for i in range(n):
                    stage[i] = y[i]
                for k in range(_A_PTR[s], _A_PTR[s + 1]):
                    ha = h * _A_VAL[k]
                    row = K[_A_COL[k]]
                    for i in range(n):
                        stage[i] += ha * row[i]
                _matvec(indptr, cols, vals, stage, K[s])
            for i in range(n):
                y_new[i] = y[i]
            for k in range(_B_COL.shape[0]):
                hb = h * _B_VAL[k]
                row = K[_B_COL[k]]
                for i in range(n):
                    y_new[i] += hb * row[i]
            _matvec(indptr, cols, vals, y_new, K[12])

            err = _error_norm(K, h, y, y_new, e5, e3, rtol, atol)
            n_steps += 1

            if err < 1.0:
                factor = _MAX_FACTOR if err == 0.0 \
                    else min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err ** (-0.125)))
                if rejected:
                    factor = min(1.0, factor)
                # Keep the adaptive estimate when the step was only short
                # because it was clipped to the output grid.
                if not clipped:
                    h_next = min(h * factor, max_step)
                t = t + h
                for i in range(n):
                    y[i] = y_new[i]
                _hermitize(y)
                if not _all_finite(y):
                    return out, 2, n_steps
                _matvec(indptr, cols, vals, y, f)
                rejected = False
            else:
                h_next = h * max(_MIN_FACTOR, _SAFETY * err ** (-0.125))
                rejected = True
        out[i_out] = y
    return out, 0, n_steps


def integrate(basis, rates: LindbladRates, rho0: DensityMatrix, t_end: float,
              dt_max: float | None = None, samples: int = 400) -> Trajectory:
    """Numerically evolve a dressed-basis state to t_end.

    Adaptive embedded Runge-Kutta (8th order, 5th/3rd order error control)
    with per-step tolerances rtol=1e-10, atol=1e-12; the state is
    re-Hermitized after every accepted step and sampled on a uniform grid
    of `samples` points including both endpoints.

    Raises
    ------
    IntegrationError
        On step-size underflow (below 1e-12 * t_end) or a non-finite state.
    """
    if rho0.basis != "dressed":
        raise ValueError(f"expected a dressed-basis state, got {rho0.basis!r}")
    if not (t_end > 0):
        raise ValueError("t_end must be > 0")
    if dt_max is None:
        dt_max = math.inf
    elif not (dt_max > 0):
        raise ValueError("dt_max must be > 0")
    if samples < 2:
        raise ValueError("need at least 2 samples")

    L = action_matrix(basis, rates)
    indptr, cols, vals = _to_csr(L)
    t_grid = np.linspace(0.0, float(t_end), int(samples))
    y0 = rho0.matrix.reshape(16).astype(np.complex128)

    raw, status, _ = _dop853_core(indptr, cols, vals, y0, t_grid,
                                  float(dt_max), RTOL, ATOL,
                                  1e-12 * float(t_end))
    if status == 1:
        raise IntegrationError("step size underflow: problem too stiff for the tolerances")
    if status == 2:
        raise IntegrationError("non-finite state encountered during integration")

    states = [rho0 if i == 0 else DensityMatrix(raw[i].reshape(4, 4), "dressed")
              for i in range(len(t_grid))]
    populations = np.array([s.populations for s in states])
    return Trajectory(times=t_grid, states=states, populations=populations)


def analytic_zero_temperature(basis, rates: LindbladRates, rho0: DensityMatrix,
                              times) -> Trajectory:
    """Closed-form evolution in the fully decoupled zero-temperature regime.

    Valid only when every excitation coefficient is zero (both baths at
    T = 0) and both cross coefficients vanish (e.g. exact resonance with
    flat, equally coupled spectra): each population is a sum of pure
    exponentials and each coherence a single damped phase factor.  The
    expressions are arranged so t = 0 reproduces rho0 exactly.
    """
    if rho0.basis != "dressed":
        raise ValueError(f"expected a dressed-basis state, got {rho0.basis!r}")
    bars = (rates.cbar_low, rates.cbar_high,
            rates.cbar_cross_low, rates.cbar_cross_high)
    if any(b != 0.0 for b in bars):
        raise ValueError("analytic solution requires zero-temperature baths "
                         "(all excitation coefficients zero)")
    cross_scale = max(rates.c_low, rates.c_high, 1e-300)
    if max(abs(rates.c_cross_low), abs(rates.c_cross_high)) > 1e-12 * cross_scale:
        raise ValueError("analytic solution requires vanishing cross coefficients")

    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 1 or np.any(np.diff(t) <= 0) or t[0] < 0:
        raise ValueError("times must be a strictly increasing 1-D grid of t >= 0")

    r0 = rho0.matrix
    c_lo, c_hi = rates.c_low, rates.c_high
    e_lo = np.exp(-c_lo * t)
    e_hi = np.exp(-c_hi * t)
    e_both = np.exp(-(c_lo + c_hi) * t)

    dd = r0[3, 3].real * e_both
    bb = r0[1, 1].real * e_lo + r0[3, 3].real * (e_lo - e_both)
    cc = r0[2, 2].real * e_hi + r0[3, 3].real * (e_hi - e_both)
    # Population is conserved: write aa through the deficits so that t = 0
    # returns the initial entry bit for bit.
    aa = (r0[0, 0].real
          + r0[1, 1].real * (1.0 - e_lo) + r0[2, 2].real * (1.0 - e_hi)
          + r0[3, 3].real * (1.0 - e_lo - e_hi + e_both))

    w_lo, w_hi = basis.omega_low, basis.omega_high
    w_da, w_cb = basis.omega_da, basis.omega_cb
    ab = r0[0, 1] * np.exp((1j * w_lo - 0.5 * c_lo) * t)
    cd = r0[2, 3] * np.exp((1j * w_lo - 0.5 * (c_lo + 2.0 * c_hi)) * t)
    ac = r0[0, 2] * np.exp((1j * w_hi - 0.5 * c_hi) * t)
    bd = r0[1, 3] * np.exp((1j * w_hi - 0.5 * (2.0 * c_lo + c_hi)) * t)
    ad = r0[0, 3] * np.exp((1j * w_da - 0.5 * (c_lo + c_hi)) * t)
    bc = r0[1, 2] * np.exp((1j * w_cb - 0.5 * (c_lo + c_hi)) * t)

    states = []
    for k in range(t.size):
        if t[k] == 0.0:
            states.append(rho0)
            continue
        m = np.array([
            [aa[k], ab[k], ac[k], ad[k]],
            [np.conj(ab[k]), bb[k], bc[k], bd[k]],
            [np.conj(ac[k]), np.conj(bc[k]), cc[k], cd[k]],
            [np.conj(ad[k]), np.conj(bd[k]), np.conj(cd[k]), dd[k]],
        ])
        states.append(DensityMatrix(m, "dressed"))
    populations = np.array([s.populations for s in states])
    return Trajectory(times=t, states=states, populations=populations)


def stationary_state(rates: LindbladRates) -> np.ndarray:
    """Stationary dressed populations (a, b, c, d); coherences are zero.

    Each population is a product of one rate per channel over the product
    of the channel totals, so the four values sum to one and reduce to
    (1, 0, 0, 0) when both baths are at zero temperature.
    """
    tot_low = rates.c_low + rates.cbar_low
    tot_high = rates.c_high + rates.cbar_high
    if tot_low <= 0.0 or tot_high <= 0.0:
        raise ValueError("no unique stationary state: a channel has zero total rate")
    denom = tot_low * tot_high
    return np.array([
        rates.c_low * rates.c_high,
        rates.cbar_low * rates.c_high,
        rates.c_low * rates.cbar_high,
        rates.cbar_low * rates.cbar_high,
    ]) / denom
