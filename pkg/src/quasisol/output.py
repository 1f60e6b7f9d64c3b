"""CSV and JSON writers for solver artifacts.

Numbers are written with 17 significant digits so files round-trip
float64 exactly. Every writer takes an output directory, creates it if
needed, and returns the paths it wrote.
"""

import json
from dataclasses import asdict, is_dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "write_profile",
    "write_bifurcation",
    "write_diagnostics",
    "write_snapshots",
    "write_manifest",
    "fit_record",
]

_FMT = "%.17g"


def _ensure_dir(directory):
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _json_default(obj):
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _write_json(path, payload):
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=2, default=_json_default)
        handle.write("\n")


def _write_csv(path, header, columns):
    data = np.column_stack([np.asarray(col, dtype=float) for col in columns])
    np.savetxt(path, data, delimiter=",", header=header, comments="",
               fmt=_FMT)


def config_dict(config):
    """Dataclass config as a JSON-ready dict; initial-data descriptors
    gain a kind tag derived from their class name."""
    payload = asdict(config)
    initial = getattr(config, "initial", None)
    if is_dataclass(initial):
        kind = type(initial).__name__.lower().removesuffix("start")
        payload["initial"] = {"kind": kind, **asdict(initial)}
    return payload


def write_profile(directory, name, profile, params, result=None):
    """Radial profile as name.csv (s, r, phi) plus a JSON sidecar.

    The sidecar records (alpha, dim, omega, n, s0) and, when a
    NewtonResult is given, its residual, iteration count, and trailing
    Chebyshev-coefficient estimate.
    """
    directory = _ensure_dir(directory)
    grid = profile.grid
    s = grid.s_nodes
    csv_path = directory / f"{name}.csv"
    _write_csv(csv_path, "s,r,phi", (s, np.sqrt(s), profile.values))
    meta = {
        "alpha": params.alpha,
        "dim": params.dim,
        "omega": profile.omega if profile.omega is not None else params.omega,
        "n": grid.n,
        "s0": grid.s0,
    }
    if result is not None:
        meta.update(residual=result.residual, iterations=result.iterations,
                    tail=result.tail)
    json_path = directory / f"{name}.json"
    _write_json(json_path, meta)
    return [csv_path, json_path]


def fit_record(fit):
    """AsymptoteFit as a JSON-ready dict."""
    return {
        "law": fit.law,
        "coefficient": fit.coefficient,
        "exponent": fit.exponent,
        "window": list(fit.window),
        "residual": fit.residual,
    }


def write_bifurcation(directory, points, fits=None, name="bifurcation",
                      meta=None):
    """Branch sweep as name.csv with a JSON sidecar of fit results.

    Columns are omega, mass, energy, dmass_domega, stability; the
    stability column is the text label of the slope criterion.
    """
    directory = _ensure_dir(directory)
    csv_path = directory / f"{name}.csv"
    with open(csv_path, "w") as handle:
        handle.write("omega,mass,energy,dmass_domega,stability\n")
        for pt in points:
            handle.write(",".join([
                _FMT % pt.omega, _FMT % pt.mass, _FMT % pt.energy,
                _FMT % pt.dmass_domega, pt.stability]) + "\n")
    payload = dict(meta or {})
    payload["fits"] = [fit_record(fit) for fit in (fits or [])]
    json_path = directory / f"{name}.json"
    _write_json(json_path, payload)
    return [csv_path, json_path]


def write_diagnostics(directory, diagnostics, name="diagnostics"):
    """Diagnostics time series as name.csv (t, linf, mass, energy, delta)."""
    directory = _ensure_dir(directory)
    csv_path = directory / f"{name}.csv"
    _write_csv(csv_path, "t,linf,mass,energy,delta",
               (diagnostics.times, diagnostics.linf, diagnostics.mass,
                diagnostics.energy, diagnostics.delta))
    return [csv_path]


def write_snapshots(directory, snapshots, coordinate, label):
    """Snapshot list as one CSV per entry, columns <label>, re, im, abs.

    coordinate is the spatial column (x for the periodic line, r = sqrt(s)
    for radial runs); snapshots are (time, complex values) pairs. Returns
    (paths, index_to_time) for the manifest.
    """
    directory = _ensure_dir(directory)
    coordinate = np.asarray(coordinate, dtype=float)
    paths = []
    index_to_time = []
    for index, (time, values) in enumerate(snapshots):
        values = np.asarray(values)
        path = directory / f"snapshot_{index:04d}.csv"
        _write_csv(path, f"{label},re,im,abs",
                   (coordinate, values.real, values.imag, np.abs(values)))
        paths.append(path)
        index_to_time.append({"index": index, "time": float(time),
                              "file": path.name})
    return paths, index_to_time


def write_manifest(directory, config, index_to_time, name="manifest",
                   extra=None):
    """JSON manifest echoing the run config and the snapshot time table."""
    directory = _ensure_dir(directory)
    payload = {"config": config_dict(config), "snapshots": index_to_time}
    if extra:
        payload.update(extra)
    json_path = directory / f"{name}.json"
    _write_json(json_path, payload)
    return [json_path]
