"""Command-line entry point: run descriptions, presets, outputs.

Every subcommand reads options from flags and/or a config file (flat
key = value lines or JSON; flags override the file, unknown keys are
rejected), runs the corresponding solver, writes CSV/JSON artifacts into
the output directory, and prints a one-line summary. The QUASISOL_OUT
environment variable overrides the output directory. Exit codes:
0 success, 2 usage error, 3 solver failure, 4 accuracy abort.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import output
from .bifurcation import (
    energy_1d_reduced,
    fit_asymptote_star,
    fit_asymptote_zero,
    mass_1d_reduced,
    sweep,
)
from .errors import (
    AccuracyAbortError,
    DenominatorBlowupError,
    InsufficientWindowError,
    InvalidParameterError,
    NoConvergenceError,
    NoSignChangeError,
)
from .evolve1d import Run1DConfig, evolve_1d, perturbed_soliton_1d
from .evolver import (
    GaussianStart,
    RunRadialConfig,
    SolitonStart,
    evolve_radial,
)
from .groundstate import ContinuationPlan, SolverControls, continuation
from .model import (
    ModelParams,
    RadialProfile,
    fit_omega_from_max,
    soliton_1d,
    soliton_max,
)
from .presets import get_preset, preset_names
from .spectral import cheb_grid, fourier_grid

__all__ = ["main", "parse_config", "fit_report"]


@dataclass(frozen=True)
class _Opt:
    kind: type
    default: object = None
    required: bool = False
    help: str = ""


_COMMON = {
    "out": _Opt(str, help="output directory (QUASISOL_OUT overrides)"),
    "config": _Opt(str, help="config file, flat key = value or JSON"),
}

_SCHEMAS = {
    "groundstate": {
        "alpha": _Opt(int, required=True),
        "dim": _Opt(int, required=True),
        "omega": _Opt(float, required=True),
        "n": _Opt(int, 200),
        "s0": _Opt(float, 1e3),
        "mu": _Opt(float, 0.1),
        "tol": _Opt(float, 1e-10),
        "name": _Opt(str, "groundstate"),
    },
    "sweep": {
        "alpha": _Opt(int, required=True),
        "dim": _Opt(int, required=True),
        "omega_min": _Opt(float, required=True),
        "omega_max": _Opt(float, required=True),
        "num": _Opt(int, required=True),
        "n": _Opt(int, 200),
        "s0": _Opt(float, 1e3),
        "mu": _Opt(float, 0.1),
        "name": _Opt(str, "bifurcation"),
    },
    "mass1d": {
        "alpha": _Opt(int, required=True),
        "omega": _Opt(float, required=True),
        "name": _Opt(str, "mass1d"),
    },
    "evolve1d": {
        "alpha": _Opt(int, required=True),
        "omega": _Opt(float, required=True),
        "lam": _Opt(float, 1.0),
        "lx": _Opt(float, 30.0),
        "nx": _Opt(int, 4096),
        "tmax": _Opt(float, 10.0),
        "nt": _Opt(int, 100000),
        "snapshot_stride": _Opt(int, 0),
    },
    "evolver": {
        "alpha": _Opt(int, required=True),
        "dim": _Opt(int, required=True),
        "initial_kind": _Opt(str, required=True,
                             help="soliton or gaussian"),
        "omega": _Opt(float),
        "lam": _Opt(float, 1.0),
        "c": _Opt(float),
        "s1": _Opt(float),
        "h": _Opt(float, required=True),
        "nt": _Opt(int, required=True),
        "n": _Opt(int, 200),
        "s0": _Opt(float, 1e3),
        "newton_tol": _Opt(float, 1e-10),
        "snapshot_stride": _Opt(int, 0),
    },
    "fit": {
        "diagnostics": _Opt(str, required=True,
                            help="diagnostics CSV to fit"),
        "alpha": _Opt(int, required=True),
        "name": _Opt(str, "fit"),
    },
    "preset": {
        "name": _Opt(str, required=True),
    },
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="quasisol",
        description="Solitary-wave and time-evolution runs for the "
                    "saturating quasi-linear Schrodinger model.")
    subparsers = parser.add_subparsers(dest="command")
    for command, schema in _SCHEMAS.items():
        sub = subparsers.add_parser(command)
        for key, opt in {**schema, **_COMMON}.items():
            if command == "preset" and key == "name":
                sub.add_argument("name", nargs="?", default=None)
                continue
            flag = "--" + key.replace("_", "-")
            sub.add_argument(flag, dest=key, type=str, default=None,
                             help=opt.help or None)
    return parser


def _coerce(key, value, opt):
    if isinstance(value, opt.kind):
        return value
    try:
        if opt.kind is int:
            as_float = float(value)
            as_int = int(as_float)
            if as_int != as_float:
                raise ValueError
            return as_int
        return opt.kind(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(
            f"option {key!r} expects {opt.kind.__name__}, "
            f"got {value!r}") from None


def _read_config_file(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidParameterError(f"cannot read config file: {exc}") \
            from None
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidParameterError(
                f"config file is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise InvalidParameterError("JSON config must be an object")
        return data
    data = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise InvalidParameterError(
                f"config line is not key = value: {line!r}")
        data[key.strip()] = value.strip()
    return data


def parse_config(command, flag_values, config_path=None):
    """Merge config-file values and flags into a validated description.

    flag_values maps schema keys to raw strings (or None when the flag
    was not given). Flags override the file; unknown file keys and
    missing required options raise invalid-parameter naming the key.
    """
    schema = _SCHEMAS[command]
    values = {}
    if config_path:
        for raw_key, raw_value in _read_config_file(config_path).items():
            key = raw_key.replace("-", "_")
            if key not in schema:
                raise InvalidParameterError(
                    f"unknown config key {raw_key!r} for {command}")
            values[key] = _coerce(key, raw_value, schema[key])
    for key, opt in schema.items():
        flag = flag_values.get(key)
        if flag is not None:
            values[key] = _coerce(key, flag, opt)
    for key, opt in schema.items():
        if key not in values:
            if opt.required:
                raise InvalidParameterError(
                    f"missing required option --{key.replace('_', '-')}")
            values[key] = opt.default
    return values


def _continuation_to(omega, params, controls, grid, step=0.02):
    # short frequency path from 0.1, where the standard seed converges
    base = 0.1
    if abs(omega - base) < 1e-12:
        path = (omega,)
    else:
        num = max(2, int(np.ceil(abs(omega - base) / step)) + 1)
        path = tuple(np.linspace(base, omega, num))
    return continuation(ContinuationPlan(omega_values=path), params,
                        controls=controls, grid=grid)


def _run_groundstate(values, out_dir):
    params = ModelParams(alpha=values["alpha"], dim=values["dim"],
                         omega=values["omega"])
    params.require_solitary()
    grid = cheb_grid(values["n"], values["s0"])
    if params.dim == 1:
        profile = RadialProfile(
            grid=grid,
            values=soliton_1d(params, np.sqrt(grid.s_nodes)),
            omega=params.omega)
        files = output.write_profile(out_dir, values["name"], profile,
                                     params)
        peak = soliton_max(params)
        print(f"groundstate alpha={params.alpha} dim=1 "
              f"omega={params.omega:g}: closed form, peak={peak:.10g}, "
              f"wrote {len(files)} files to {out_dir}")
        return 0
    controls = SolverControls(mu=values["mu"], tol=values["tol"])
    result = _continuation_to(params.omega, params, controls, grid)[-1]
    files = output.write_profile(out_dir, values["name"], result.profile,
                                 params, result)
    peak = float(np.max(result.profile.values))
    print(f"groundstate alpha={params.alpha} dim={params.dim} "
          f"omega={params.omega:g}: peak={peak:.10g}, "
          f"residual={result.residual:.3g}, iterations={result.iterations}, "
          f"wrote {len(files)} files to {out_dir}")
    return 0


def _run_sweep(values, out_dir):
    if values["num"] < 1:
        raise InvalidParameterError(
            f"sweep needs at least one frequency, got num={values['num']}")
    if not values["omega_min"] < values["omega_max"]:
        raise InvalidParameterError("sweep needs omega_min < omega_max")
    omegas = np.linspace(values["omega_min"], values["omega_max"],
                         values["num"])
    alpha, dim = values["alpha"], values["dim"]
    kwargs = {}
    if dim >= 2:
        kwargs["grid"] = cheb_grid(values["n"], values["s0"])
        kwargs["controls"] = SolverControls(mu=values["mu"])
    points = sweep(alpha, dim, omegas, **kwargs)
    fits = []
    for fitter in (fit_asymptote_star, fit_asymptote_zero):
        try:
            fits.append(fitter(points, alpha, dim))
        except InvalidParameterError:
            pass
    files = output.write_bifurcation(
        out_dir, points, fits, name=values["name"],
        meta={"alpha": alpha, "dim": dim})
    masses = [pt.mass for pt in points]
    print(f"sweep alpha={alpha} dim={dim}: {len(points)} points, "
          f"mass in [{min(masses):.6g}, {max(masses):.6g}], "
          f"{len(fits)} asymptote fits, wrote {len(files)} files to "
          f"{out_dir}")
    return 0


def _run_mass1d(values, out_dir):
    alpha, omega = values["alpha"], values["omega"]
    mass = mass_1d_reduced(alpha, omega)
    energy = energy_1d_reduced(alpha, omega)
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{values['name']}.csv"
    with open(path, "w") as handle:
        handle.write("omega,mass,energy\n")
        handle.write(f"{omega:.17g},{mass:.17g},{energy:.17g}\n")
    print(f"mass1d alpha={alpha} omega={omega:g}: mass={mass:.12g}, "
          f"energy={energy:.12g}, wrote 1 file to {out_dir}")
    return 0


def _trailing_fit(diagnostics, alpha):
    # trailing-10% mean of L-inf through the closed-form peak relation
    linf = np.asarray(diagnostics.linf)
    k = max(1, int(round(0.1 * linf.size)))
    peak = float(np.mean(linf[-k:]))
    omega = fit_omega_from_max(peak, alpha)
    window = (float(diagnostics.times[-k]), float(diagnostics.times[-1]))
    return omega, window, peak


def _write_evolution(out_dir, config, diagnostics, snapshots, coordinate,
                     label, extra=None):
    files = output.write_diagnostics(out_dir, diagnostics)
    snap_files, index = output.write_snapshots(out_dir, snapshots,
                                               coordinate, label)
    files += snap_files
    files += output.write_manifest(out_dir, config, index, extra=extra)
    return files


def _run_evolve1d(values, out_dir):
    config = Run1DConfig(
        alpha=values["alpha"], omega=values["omega"], lam=values["lam"],
        lx=values["lx"], nx=values["nx"], tmax=values["tmax"],
        nt=values["nt"], snapshot_stride=values["snapshot_stride"])
    grid = fourier_grid(config.nx, config.lx)
    initial = perturbed_soliton_1d(config.alpha, config.omega, config.lam,
                                   grid)
    try:
        diagnostics, snapshots = evolve_1d(config, initial)
    except AccuracyAbortError as exc:
        payload = exc.diagnostics or {}
        if payload.get("diagnostics") is not None:
            _write_evolution(out_dir, config, payload["diagnostics"],
                             payload.get("snapshots", []), grid.x_nodes,
                             "x", extra={"aborted": str(exc)})
        raise
    fitted, window, _ = _trailing_fit(diagnostics, config.alpha)
    files = _write_evolution(
        out_dir, config, diagnostics, snapshots, grid.x_nodes, "x",
        extra={"fitted_omega": fitted, "fit_window": list(window)})
    print(f"evolve1d alpha={config.alpha} omega={config.omega:g} "
          f"lam={config.lam:g}: final linf={diagnostics.linf[-1]:.6g}, "
          f"fitted omega={fitted:.6g}, max delta="
          f"{float(np.max(diagnostics.delta)):.3g}, wrote {len(files)} "
          f"files to {out_dir}")
    return 0


def _radial_config(values):
    kind = values["initial_kind"]
    if kind == "soliton":
        if values["omega"] is None:
            raise InvalidParameterError(
                "initial-kind soliton requires --omega")
        descriptor = SolitonStart(omega=values["omega"], lam=values["lam"])
    elif kind == "gaussian":
        if values["c"] is None or values["s1"] is None:
            raise InvalidParameterError(
                "initial-kind gaussian requires --c and --s1")
        descriptor = GaussianStart(c=values["c"], s1=values["s1"])
    else:
        raise InvalidParameterError(
            f"initial-kind must be soliton or gaussian, got {kind!r}")
    return RunRadialConfig(
        alpha=values["alpha"], dim=values["dim"], initial=descriptor,
        h=values["h"], nt=values["nt"], n=values["n"], s0=values["s0"],
        newton_tol=values["newton_tol"],
        snapshot_stride=values["snapshot_stride"])


def _run_evolver(values, out_dir):
    config = _radial_config(values)
    coordinate = np.sqrt(cheb_grid(config.n, config.s0).s_nodes)
    try:
        diagnostics, snapshots = evolve_radial(config)
    except AccuracyAbortError as exc:
        payload = exc.diagnostics or {}
        if payload.get("diagnostics") is not None:
            _write_evolution(out_dir, config, payload["diagnostics"],
                             payload.get("snapshots", []), coordinate,
                             "r", extra={"aborted": str(exc)})
        raise
    except NoConvergenceError as exc:
        payload = exc.partial or {}
        if isinstance(payload, dict) and payload.get("diagnostics") \
                is not None:
            _write_evolution(out_dir, config, payload["diagnostics"],
                             payload.get("snapshots", []), coordinate,
                             "r", extra={"failed": str(exc)})
        raise
    files = _write_evolution(out_dir, config, diagnostics, snapshots,
                             coordinate, "r")
    print(f"evolver alpha={config.alpha} dim={config.dim}: final linf="
          f"{diagnostics.linf[-1]:.6g}, max delta="
          f"{float(np.max(diagnostics.delta)):.3g}, wrote {len(files)} "
          f"files to {out_dir}")
    return 0


def fit_report(diagnostics_path, alpha):
    """Fitted frequency from a diagnostics CSV.

    Averages the L-inf column over the trailing 10% of the samples and
    inverts the closed-form peak relation. Needs at least 10 samples.
    Returns (omega, (t_first, t_last)) for the trailing window.
    """
    try:
        data = np.genfromtxt(diagnostics_path, delimiter=",", names=True)
    except OSError as exc:
        raise InvalidParameterError(
            f"cannot read diagnostics: {exc}") from None
    if data.dtype.names is None or "linf" not in data.dtype.names:
        raise InvalidParameterError(
            "diagnostics CSV must have a linf column")
    times = np.atleast_1d(data["t"])
    linf = np.atleast_1d(data["linf"])
    if linf.size < 10:
        raise InsufficientWindowError(
            f"need at least 10 diagnostic samples, got {linf.size}")
    k = max(1, int(round(0.1 * linf.size)))
    peak = float(np.mean(linf[-k:]))
    omega = fit_omega_from_max(peak, alpha)
    return omega, (float(times[-k]), float(times[-1]))


def _run_fit(values, out_dir):
    omega, window = fit_report(values["diagnostics"], values["alpha"])
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{values['name']}.json"
    with open(path, "w") as handle:
        json.dump({"fitted_omega": omega, "window": list(window),
                   "alpha": values["alpha"]}, handle, indent=2)
        handle.write("\n")
    print(f"fit alpha={values['alpha']}: fitted omega={omega:.6g} over "
          f"t in [{window[0]:g}, {window[1]:g}], wrote 1 file to {out_dir}")
    return 0


def _run_groundstate_family(preset, out_dir):
    params = preset.params
    model = ModelParams(alpha=params["alpha"], dim=params["dim"])
    grid = cheb_grid(params["n"], params["s0"])
    controls = SolverControls(mu=params["mu"])
    targets = sorted(params["omegas"])
    lo, hi = 0.1, targets[-1]
    count = int(round((hi - lo) / params["path_step"])) + 1
    path = np.linspace(lo, hi, count)
    # make sure every requested frequency is on the path
    extras = [t for t in targets
              if np.min(np.abs(path - t)) > 1e-12]
    path = np.sort(np.concatenate([path, extras]))
    results = continuation(ContinuationPlan(omega_values=tuple(path)),
                           model, controls=controls, grid=grid)
    files = []
    peaks = []
    for result in results:
        omega = result.profile.omega
        if not any(abs(omega - t) < 1e-12 for t in targets):
            continue
        stem = f"groundstate_om{omega:g}".replace(".", "p")
        files += output.write_profile(out_dir, stem, result.profile, model,
                                      result)
        peaks.append((omega, float(np.max(result.profile.values))))
    summary = ", ".join(f"{om:g}: {pk:.8f}" for om, pk in peaks)
    print(f"groundstate-family alpha={params['alpha']} dim={params['dim']}:"
          f" peaks {{{summary}}}, wrote {len(files)} files to {out_dir}")
    return 0


def _run_preset(values, out_dir):
    preset = get_preset(values["name"])
    target = str(Path(out_dir) / preset.name)
    if preset.kind == "sweep":
        merged = dict(_defaults("sweep"))
        merged.update({k: preset.params[k] for k in
                       ("alpha", "dim", "omega_min", "omega_max", "num")})
        return _run_sweep(merged, target)
    if preset.kind == "evolve1d":
        merged = dict(_defaults("evolve1d"))
        merged.update(preset.params)
        return _run_evolve1d(merged, target)
    if preset.kind == "evolver":
        merged = dict(_defaults("evolver"))
        kind, first, second = preset.params["initial"]
        merged.update(preset.params)
        del merged["initial"]
        merged["initial_kind"] = kind
        if kind == "soliton":
            merged["omega"], merged["lam"] = first, second
        else:
            merged["c"], merged["s1"] = first, second
        return _run_evolver(merged, target)
    if preset.kind == "groundstate-family":
        return _run_groundstate_family(preset, target)
    raise InvalidParameterError(f"unknown preset kind {preset.kind!r}")


def _defaults(command):
    return {key: opt.default for key, opt in _SCHEMAS[command].items()}


_RUNNERS = {
    "groundstate": _run_groundstate,
    "sweep": _run_sweep,
    "mass1d": _run_mass1d,
    "evolve1d": _run_evolve1d,
    "evolver": _run_evolver,
    "fit": _run_fit,
    "preset": _run_preset,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    if args.command == "preset" and args.name is None:
        print("error: missing preset name; available: "
              + ", ".join(preset_names()), file=sys.stderr)
        return 2
    out_dir = os.environ.get("QUASISOL_OUT") or args.out or "."
    try:
        flag_values = {key: getattr(args, key)
                       for key in _SCHEMAS[args.command]}
        values = parse_config(args.command, flag_values, args.config)
        return _RUNNERS[args.command](values, out_dir)
    except AccuracyAbortError as exc:
        print(f"error: accuracy abort: {exc}", file=sys.stderr)
        return 4
    except (NoConvergenceError, DenominatorBlowupError,
            NoSignChangeError) as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return 3
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
