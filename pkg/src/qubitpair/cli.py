"""Config-driven scenario runner emitting plot-ready CSV files.

A scenario is a flat JSON document (see CONFIG_KEYS) naming the model
parameters, the bath spectra and temperatures, the initial state, the
time grid and the solver.  Each run writes one CSV per scenario (or per
sweep point) with the dressed populations, the concurrence and two
physicality diagnostics per sample.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .dynamics import analytic_zero_temperature, integrate, stationary_state
from .entanglement import InitialStateSpec, build_initial, concurrence_series
from .model import ModelParams, diagonalize
from .rates import BathSpectrum, lindblad_rates

CSV_HEADER = "t,rho_aa,rho_bb,rho_cc,rho_dd,concurrence,trace_error,min_eig"

TRACE_GATE = 1e-9
MIN_EIG_GATE = -1e-8

# Rotating-wave validity: decay rates should stay well below the smallest
# Bohr frequency.
WEAK_DAMPING_RATIO = 0.1

_NUMERIC_KEYS = ("omega1", "omega2", "lambda", "gamma1_I", "gamma1_II",
                 "gamma2_I", "gamma2_II", "T1", "T2", "p", "phi", "t_end")
CONFIG_KEYS = frozenset(_NUMERIC_KEYS) | {
    "initial_family", "samples", "solver", "output", "sweep"}
SWEEPABLE = frozenset(_NUMERIC_KEYS)
SOLVERS = ("analytic", "numeric", "auto")
PRESETS = ("fig2", "fig3")


class PhysicalityError(RuntimeError):
    """A sampled state violated the trace or positivity gate."""


@dataclass(frozen=True)
class ScenarioConfig:
    model: ModelParams
    initial: InitialStateSpec
    t_end: float
    samples: int
    solver: str
    output_path: str
    sweep: tuple | None = None      # (param name, tuple of values)

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("samples must be >= 2")
        if not (self.t_end > 0):
            raise ValueError("t_end must be > 0")
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}")
        if self.solver == "analytic":
            _require_analytic_preconditions(self.model)


def _analytic_applicable(model: ModelParams) -> bool:
    rates = lindblad_rates(diagonalize(model), model.bath1, model.bath2)
    scale = max(rates.c_low, rates.c_high, 1e-300)
    return (all(b == 0.0 for b in (rates.cbar_low, rates.cbar_high,
                                   rates.cbar_cross_low, rates.cbar_cross_high))
            and max(abs(rates.c_cross_low), abs(rates.c_cross_high)) <= 1e-12 * scale)


def _require_analytic_preconditions(model: ModelParams):
    if not _analytic_applicable(model):
        raise ValueError(
            "solver=analytic requires zero-temperature baths and vanishing "
            "cross coefficients (e.g. resonance with flat, equal spectra)")


def _number(raw: dict, key: str) -> float:
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"config field {key} must be a number")
    return float(value)


def _parse_config(text: str, source: str) -> ScenarioConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{source}: parse error at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ValueError(f"{source}: top level must be a JSON object")

    unknown = sorted(set(raw) - CONFIG_KEYS)
    if unknown:
        raise ValueError(f"{source}: unknown config key {unknown[0]!r}")
    missing = sorted(CONFIG_KEYS - {"sweep"} - set(raw))
    if missing:
        raise ValueError(f"{source}: missing config key {missing[0]!r}")

    num = {key: _number(raw, key) for key in _NUMERIC_KEYS}

    family = raw["initial_family"]
    if family not in ("one_excitation", "two_excitation"):
        raise ValueError(f"{source}: initial_family must be "
                         f"'one_excitation' or 'two_excitation', got {family!r}")
    if not (0.0 <= num["p"] <= 1.0):
        raise ValueError(f"{source}: initial.p out of range [0, 1]: {num['p']}")

    samples = raw["samples"]
    if isinstance(samples, bool) or not isinstance(samples, int):
        raise ValueError(f"{source}: samples must be an integer")
    solver = raw["solver"]
    if solver not in SOLVERS:
        raise ValueError(f"{source}: solver must be one of {SOLVERS}, got {solver!r}")
    output = raw["output"]
    if not isinstance(output, str) or not output:
        raise ValueError(f"{source}: output must be a non-empty path string")

    sweep = None
    if "sweep" in raw:
        spec = raw["sweep"]
        if (not isinstance(spec, dict) or set(spec) != {"param", "values"}):
            raise ValueError(f"{source}: sweep must be an object with keys "
                             "'param' and 'values'")
        param = spec["param"]
        if param not in SWEEPABLE:
            raise ValueError(f"{source}: sweep.param must be one of "
                             f"{sorted(SWEEPABLE)}, got {param!r}")
        values = spec["values"]
        if not isinstance(values, list) or not values:
            raise ValueError(f"{source}: sweep.values must be a non-empty list")
        for v in values:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ValueError(f"{source}: sweep.values entries must be numbers")
        sweep = (param, tuple(float(v) for v in values))

    try:
        model = _build_model(num)
        initial = InitialStateSpec(family=family, p=num["p"], phi=num["phi"])
        return ScenarioConfig(model=model, initial=initial, t_end=num["t_end"],
                              samples=samples, solver=solver,
                              output_path=output, sweep=sweep)
    except ValueError as exc:
        raise ValueError(f"{source}: {exc}") from None


def _build_model(num: dict) -> ModelParams:
    return ModelParams(
        omega1=num["omega1"],
        omega2=num["omega2"],
        coupling=num["lambda"],
        bath1=BathSpectrum(num["gamma1_I"], num["gamma1_II"], num["T1"]),
        bath2=BathSpectrum(num["gamma2_I"], num["gamma2_II"], num["T2"]),
    )


def load_config(path) -> ScenarioConfig:
    """Parse and validate a scenario file; every error names its cause."""
    p = Path(path)
    if not p.is_file():
        raise ValueError(f"config file not found: {p}")
    return _parse_config(p.read_text(encoding="utf-8"), str(p))


def load_preset(name: str) -> ScenarioConfig:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; available: {PRESETS}")
    text = resources.files("qubitpair").joinpath(f"presets/{name}.json").read_text()
    return _parse_config(text, f"preset {name}")


def _apply_sweep_value(config: ScenarioConfig, param: str, value: float) -> ScenarioConfig:
    m = config.model
    if param in ("p", "phi"):
        initial = InitialStateSpec(config.initial.family,
                                   p=value if param == "p" else config.initial.p,
                                   phi=value if param == "phi" else config.initial.phi)
        return replace(config, initial=initial, sweep=None)
    if param == "t_end":
        return replace(config, t_end=value, sweep=None)
    model_kwargs = dict(omega1=m.omega1, omega2=m.omega2, coupling=m.coupling,
                        bath1=m.bath1, bath2=m.bath2)
    if param in ("omega1", "omega2"):
        model_kwargs[param] = value
    elif param == "lambda":
        model_kwargs["coupling"] = value
    else:
        which, freq = param.split("_")        # gamma1_I / gamma2_II ...
        bath_key = "bath1" if which == "gamma1" else "bath2"
        bath = model_kwargs[bath_key]
        low = value if freq == "I" else bath.gamma_at_omega_low
        high = value if freq == "II" else bath.gamma_at_omega_high
        model_kwargs[bath_key] = BathSpectrum(low, high, bath.temperature)
    return replace(config, model=ModelParams(**model_kwargs), sweep=None)


def _format(x: float) -> str:
    return f"{x:.12g}"


def _simulate_point(config: ScenarioConfig):
    """Run one scenario and return (rows, solver used, summary values)."""
    basis = diagonalize(config.model)
    rates = lindblad_rates(basis, config.model.bath1, config.model.bath2)

    warn = max(abs(r) for r in rates.all_rates()) > WEAK_DAMPING_RATIO * basis.omega_low

    if config.solver == "analytic":
        _require_analytic_preconditions(config.model)
        use_analytic = True
    elif config.solver == "auto":
        use_analytic = _analytic_applicable(config.model)
    else:
        use_analytic = False

    rho0 = build_initial(config.initial, basis)
    if use_analytic:
        times = np.linspace(0.0, config.t_end, config.samples)
        traj = analytic_zero_temperature(basis, rates, rho0, times)
    else:
        traj = integrate(basis, rates, rho0, config.t_end, samples=config.samples)
    conc = concurrence_series(traj, basis)

    rows = []
    for k, t in enumerate(traj.times):
        mat = traj.states[k].matrix
        trace_error = mat.trace().real - 1.0
        min_eig = np.linalg.eigvalsh(mat).min()
        if abs(trace_error) > TRACE_GATE or min_eig < MIN_EIG_GATE:
            raise PhysicalityError(
                f"state at t={t:g} violates physicality gates "
                f"(trace_error={trace_error:.3e}, min_eig={min_eig:.3e})")
        pops = traj.populations[k]
        rows.append(",".join(_format(v) for v in
                             (t, pops[0], pops[1], pops[2], pops[3],
                              conc[k], trace_error, min_eig)))

    stationary = stationary_state(rates)
    return rows, ("analytic" if use_analytic else "numeric"), stationary, conc[-1], warn


def _write_csv(path: Path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row + "\n")


def _write_gnuplot(csv_paths, base: Path):
    script = base.with_suffix(".gp")
    lines = [
        "set datafile separator ','",
        "set xlabel 't'",
        "set ylabel 'concurrence'",
        "set key autotitle columnhead",
    ]
    plot = ", ".join(f"'{p}' using 1:6 with lines" for p in csv_paths)
    lines.append("plot " + plot)
    script.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return script


def run(config: ScenarioConfig, emit_gnuplot: bool = False, quiet: bool = False) -> int:
    """Execute a scenario (or sweep), write CSV output, print summaries.

    Returns 0 on success; raises ValueError for configuration problems and
    RuntimeError subclasses for numeric failures.
    """
    out = Path(config.output_path)
    if config.sweep is None:
        points = [(config, out)]
    else:
        param, values = config.sweep
        base = out.with_suffix("") if out.suffix == ".csv" else out
        points = [(_apply_sweep_value(config, param, v),
                   Path(f"{base}_{param}={v:g}.csv")) for v in values]

    # Sweep points are independent pure computations; run them concurrently.
    if len(points) == 1:
        results = [_simulate_point(points[0][0])]
    else:
        with ThreadPoolExecutor(max_workers=min(8, len(points))) as pool:
            results = list(pool.map(lambda pc: _simulate_point(pc[0]), points))

    csv_paths = []
    for (point_config, path), (rows, solver_used, stationary, final_c, warn) in zip(points, results):
        _write_csv(path, rows)
        csv_paths.append(path)
        if warn:
            print(f"warning: {path.name}: damping rates exceed "
                  f"{WEAK_DAMPING_RATIO:g} * omega_low; weak-damping "
                  "(rotating-wave) treatment may be inaccurate", file=sys.stderr)
        if not quiet:
            pops = " ".join(_format(v) for v in stationary)
            print(f"{path}: solver={solver_used} stationary_populations=[{pops}] "
                  f"final_concurrence={_format(final_c)}")

    if emit_gnuplot:
        base = out.with_suffix("") if out.suffix == ".csv" else out
        script = _write_gnuplot(csv_paths, base)
        if not quiet:
            print(f"gnuplot script: {script}")
    return 0


class _Parser(argparse.ArgumentParser):
    # Usage problems are configuration errors: exit 1, not argparse's 2.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def main(argv=None) -> int:
    parser = _Parser(prog="qubitpair",
                     description="Simulate the dissipative dynamics of two "
                                 "coupled qubits in independent thermal baths.")
    sub = parser.add_subparsers(dest="command", required=True)
    sim = sub.add_parser("simulate", help="run a scenario from a JSON config")
    sim.add_argument("config", nargs="?", help="path to a JSON scenario file")
    sim.add_argument("--preset", choices=PRESETS,
                     help="run a packaged scenario instead of a config file")
    sim.add_argument("--emit-gnuplot", action="store_true",
                     help="also write a gnuplot script next to the CSV output")
    sim.add_argument("--quiet", action="store_true",
                     help="suppress the per-scenario summary lines")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if (args.config is None) == (args.preset is None):
            raise ValueError("provide exactly one of a config path or --preset")
        config = load_preset(args.preset) if args.preset else load_config(args.config)
        return run(config, emit_gnuplot=args.emit_gnuplot, quiet=args.quiet)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
