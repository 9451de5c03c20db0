"""Scratch validation of the physics before freezing tests. Not shipped."""
import time
import numpy as np
import qubitpair as qp

rng = np.random.default_rng(1)

# --- 1. closed-form eigensystem vs numpy and vs Jacobi -------------------
for _ in range(200):
    w1, w2 = sorted(rng.uniform(0.1, 100.0, size=2))
    lam = rng.uniform(0.0, 50.0)
    params = qp.ModelParams(w1, w2, lam, qp.BathSpectrum.flat(0.0), qp.BathSpectrum.flat(0.0))
    H = qp.hamiltonian_matrix(params)
    basis = qp.diagonalize(params)
    ev_np = np.linalg.eigvalsh(H)
    assert np.max(np.abs(ev_np - basis.energies)) < 1e-11, (w1, w2, lam)
    evals_j, evecs_j = qp.brute_force_eigensystem(H)
    assert np.max(np.abs(evals_j - basis.energies)) < 1e-12
    for k in range(4):
        u, v = basis.U[:, k], evecs_j[:, k]
        if np.dot(u, v) < 0:
            v = -v
        assert np.max(np.abs(u - v)) < 1e-10, (w1, w2, lam, k)
    # U diagonalizes H
    Dm = basis.U.T @ H @ basis.U
    assert np.max(np.abs(Dm - np.diag(basis.energies))) < 1e-12
print("eigensystem OK")

# --- 2. generator vs component equations on a random state ----------------
params = qp.ModelParams(3.0, 5.0, 2.0,
                        qp.BathSpectrum(0.13, 0.07, 1.3),
                        qp.BathSpectrum(0.05, 0.11, 0.7))
basis = qp.diagonalize(params)
rates = qp.lindblad_rates(params.bath1, params.bath2, basis=basis) if False else qp.lindblad_rates(basis, params.bath1, params.bath2)
A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
rho_m = A @ A.conj().T
rho_m /= rho_m.trace()
rho = qp.DensityMatrix(rho_m, "dressed")
d = qp.generator_apply(basis, rates, rho)

c_lo, c_hi = rates.c_low, rates.c_high
cb_lo, cb_hi = rates.cbar_low, rates.cbar_high
aa, bb, cc, dd = rho_m[0,0], rho_m[1,1], rho_m[2,2], rho_m[3,3]
# population equations
exp_aa = -(cb_lo+cb_hi)*aa + c_lo*bb + c_hi*cc
exp_bb = cb_lo*aa - (c_lo+cb_hi)*bb + c_hi*dd
exp_cc = cb_hi*aa - (c_hi+cb_lo)*cc + c_lo*dd
exp_dd = cb_hi*bb + cb_lo*cc - (c_lo+c_hi)*dd
assert abs(d[0,0]-exp_aa) < 1e-14 and abs(d[1,1]-exp_bb) < 1e-14
assert abs(d[2,2]-exp_cc) < 1e-14 and abs(d[3,3]-exp_dd) < 1e-14
# coherences
w_lo, w_hi = basis.omega_low, basis.omega_high
exp_ac = (1j*w_hi - 0.5*(c_hi+2*cb_lo+cb_hi))*rho_m[0,2] + rates.c_cross_low*rho_m[1,3]
exp_bd = (1j*w_hi - 0.5*(2*c_lo+c_hi+cb_hi))*rho_m[1,3] + rates.cbar_cross_low*rho_m[0,2]
exp_ab = (1j*w_lo - 0.5*(c_lo+cb_lo+2*cb_hi))*rho_m[0,1] + rates.c_cross_high*rho_m[2,3]
exp_cd = (1j*w_lo - 0.5*(c_lo+2*c_hi+cb_lo))*rho_m[2,3] + rates.cbar_cross_high*rho_m[0,1]
exp_ad = (1j*basis.omega_da - 0.5*(c_lo+c_hi+cb_lo+cb_hi))*rho_m[0,3]
exp_bc = (1j*basis.omega_cb - 0.5*(c_lo+c_hi+cb_lo+cb_hi))*rho_m[1,2]
for got, want, name in [(d[0,2],exp_ac,'ac'),(d[1,3],exp_bd,'bd'),(d[0,1],exp_ab,'ab'),
                        (d[2,3],exp_cd,'cd'),(d[0,3],exp_ad,'ad'),(d[1,2],exp_bc,'bc')]:
    assert abs(got-want) < 1e-13, (name, got, want)
assert abs(d.trace()) < 1e-14
assert np.max(np.abs(d - d.conj().T)) < 1e-13
print("generator matches component equations OK")

# --- 3. fixed point of stationary state ----------------------------------
pops = qp.stationary_state(rates)
rho_st = qp.DensityMatrix(np.diag(pops.astype(complex)), "dressed")
resid = qp.generator_apply(basis, rates, rho_st)
print("stationary residual:", np.max(np.abs(resid)))

# --- 4. numeric vs analytic in the zero-T resonant regime ------------------
gamma = 0.01
params42 = qp.ModelParams(10.0, 10.0, 1.0,
                          qp.BathSpectrum.flat(gamma), qp.BathSpectrum.flat(gamma))
basis42 = qp.diagonalize(params42)
rates42 = qp.lindblad_rates(basis42, params42.bath1, params42.bath2)
print("c_low:", rates42.c_low, "expect", gamma*(1+np.sin(basis42.theta_even)))
print("c_high:", rates42.c_high, "expect", gamma*(1-np.sin(basis42.theta_even)))
print("cross:", rates42.c_cross_low, rates42.c_cross_high)

A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
rho_m = A @ A.conj().T; rho_m /= rho_m.trace()
rho0 = qp.DensityMatrix(rho_m, "dressed")
horizon = 10.0 / rates42.c_low
t0 = time.time()
traj_n = qp.integrate(basis42, rates42, rho0, horizon, samples=201)
t_compile = time.time() - t0
t0 = time.time()
traj_n = qp.integrate(basis42, rates42, rho0, horizon, samples=201)
t_run = time.time() - t0
traj_a = qp.analytic_zero_temperature(basis42, rates42, rho0, traj_n.times)
err = max(np.max(np.abs(traj_n.states[i].matrix - traj_a.states[i].matrix))
          for i in range(len(traj_n.times)))
print(f"numeric vs analytic max elementwise: {err:.3e}  (compile {t_compile:.1f}s, run {t_run:.3f}s)")

# --- 5. fig2: concurrence behaviour ---------------------------------------
spec = qp.InitialStateSpec("one_excitation", p=1.0, phi=0.0)
rho0 = qp.build_initial(spec, basis42)
comp = qp.dressed_to_computational(basis42, rho0)
print("initial |01> in computational:", np.round(comp.matrix.real, 6).tolist())

s_inf = np.sin(basis42.theta_even)
t_grid = np.linspace(0.0, 1000.0, 100001)  # fine grid for envelope analysis
traj = qp.analytic_zero_temperature(basis42, rates42, rho0, t_grid)
t0 = time.time()
conc = qp.concurrence_series(traj, basis42)
print("concurrence series on 100001 pts:", round(time.time()-t0, 2), "s")
c_low = rates42.c_low
for mark in [5.0, 5.5, 6.0, 6.5, 6.64, 7.0, 8.0]:
    idx = np.searchsorted(t_grid, mark / c_low)
    tail = conc[idx:]
    print(f"t >= {mark:.2f}/c_low: max|C - s| = {np.max(np.abs(tail - s_inf)):.4e}")
dev = np.abs(conc - s_inf)
inside = dev <= 2e-3
# last index outside the band
last_out = np.max(np.where(~inside)[0])
print(f"permanent 2e-3-band entry at t = {t_grid[last_out+1]:.1f} = {t_grid[last_out+1]*c_low:.3f}/c_low")
print(f"deviation at exactly 5/c_low: {dev[np.searchsorted(t_grid, 5.0/c_low)]:.4e}")

# count maxima
from scipy.signal import argrelmax
idx_max = argrelmax(conc[:np.searchsorted(t_grid, 400.0)])[0]
peaks = conc[idx_max]
print("first maxima:", np.round(peaks[:6], 4), "n maxima before t=400:", len(idx_max))

# --- 6. fig3: sudden death / birth ----------------------------------------
spec3 = qp.InitialStateSpec("two_excitation", p=0.0, phi=0.0)
rho03 = qp.build_initial(spec3, basis42)
comp3 = qp.dressed_to_computational(basis42, rho03)
print("initial |11> in computational diag:", np.round(np.diag(comp3.matrix.real), 8).tolist())
traj3 = qp.analytic_zero_temperature(basis42, rates42, rho03, t_grid)
conc3 = qp.concurrence_series(traj3, basis42)
zero = conc3 == 0.0
# longest run of zeros
runs = []
start = None
for i, z in enumerate(zero):
    if z and start is None:
        start = i
    elif not z and start is not None:
        runs.append((t_grid[start], t_grid[i-1]))
        start = None
if start is not None:
    runs.append((t_grid[start], t_grid[-1]))
runs.sort(key=lambda r: r[1]-r[0], reverse=True)
print("longest zero runs (start, end):", [(round(a,2), round(b,2)) for a, b in runs[:3]])
print("final concurrence fig3:", conc3[-1], "vs", s_inf)
print("fig2 final:", conc[-1])
