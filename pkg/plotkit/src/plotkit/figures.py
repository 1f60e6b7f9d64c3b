"""Figure builders.

All functions take input file paths and an output image path, render
with the Agg backend, and return a summary dict (output path, the sha256
checksum of the inputs, and any figure-specific report values). The
checksum is embedded in the image metadata. SVG is the default format;
any suffix matplotlib understands works.
"""

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .schema import (
    SchemaMismatchError,
    input_checksum,
    read_bifurcation,
    read_diagnostics,
    read_manifest,
    read_profile,
    read_snapshot,
)

__all__ = [
    "plot_mass_energy",
    "plot_waterfall",
    "plot_linf_and_overlay",
    "plot_linf_trace",
    "plot_profile_family",
]

_STYLE = {
    "stable": dict(color="tab:blue", marker=".", linestyle="none",
                   label="stable"),
    "unstable": dict(color="tab:red", marker="x", linestyle="none",
                     markersize=4, label="unstable"),
    "undetermined-endpoint": dict(color="0.5", marker="s",
                                  linestyle="none", markersize=3,
                                  label="endpoint"),
}


def _save(fig, out_path, checksum):
    out_path = Path(out_path)
    if not out_path.suffix:
        out_path = out_path.with_suffix(".svg")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, metadata={
        "Description": f"inputs sha256 {checksum}"})
    plt.close(fig)
    return out_path


def _styled_scatter(ax, x, y, stability):
    for label, style in _STYLE.items():
        mask = stability == label
        if np.any(mask):
            ax.plot(x[mask], y[mask], **style)


def plot_mass_energy(branch_csv, out_path):
    """Triptych M(omega), E(omega), E(M) from a bifurcation CSV.

    Stable and unstable points carry different markers; the third panel
    connects points in branch order so a fold shows up as a cusp.
    """
    table = read_bifurcation(branch_csv)
    checksum = input_checksum([branch_csv])
    omega = table["omega"]
    mass = table["mass"]
    energy = table["energy"]
    stability = table["stability"]

    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6))
    _styled_scatter(axes[0], omega, mass, stability)
    axes[0].set_xlabel("omega")
    axes[0].set_ylabel("M")
    _styled_scatter(axes[1], omega, energy, stability)
    axes[1].set_xlabel("omega")
    axes[1].set_ylabel("E")
    axes[2].plot(mass, energy, color="0.6", linewidth=0.8, zorder=1)
    _styled_scatter(axes[2], mass, energy, stability)
    axes[2].set_xlabel("M")
    axes[2].set_ylabel("E")
    axes[0].legend(loc="best", fontsize=8)
    fig.tight_layout()
    written = _save(fig, out_path, checksum)
    return {"output": written, "checksum": checksum,
            "points": int(omega.size)}


def plot_waterfall(manifest_json, out_path):
    """Stacked |phi| snapshot lines over time from a run manifest.

    Snapshot CSVs are resolved relative to the manifest directory; at
    least two snapshots are required to show evolution.
    """
    manifest = read_manifest(manifest_json)
    entries = manifest["snapshots"]
    if len(entries) < 2:
        raise SchemaMismatchError(
            f"{manifest_json}: waterfall needs at least 2 snapshots, "
            f"got {len(entries)}")
    base = Path(manifest_json).parent
    files = [base / entry["file"] for entry in entries]
    checksum = input_checksum([manifest_json] + files)

    fig, ax = plt.subplots(figsize=(7, 5))
    tmax = max(entry["time"] for entry in entries)
    tmin = min(entry["time"] for entry in entries)
    scale = None
    for entry, path in zip(entries, files):
        label, table = read_snapshot(path)
        if scale is None:
            top = float(np.max(table["abs"]))
            span = (tmax - tmin) / max(len(entries) - 1, 1)
            scale = 0.9 * span / top if top > 0 else 1.0
        ax.plot(table[label], entry["time"] + scale * table["abs"],
                color="tab:blue", linewidth=0.8)
    ax.set_xlabel(label)
    ax.set_ylabel("t  (+ scaled |phi|)")
    fig.tight_layout()
    written = _save(fig, out_path, checksum)
    return {"output": written, "checksum": checksum,
            "snapshots": len(entries)}


def plot_linf_and_overlay(diagnostics_csv, snapshot_csv, profile_csv,
                          out_path):
    """L-inf history next to the final state overlaid with a profile.

    The right panel shows |phi| of the snapshot against the fitted
    stationary profile; their sup-difference is reported in the caption
    and returned. A snapshot coordinate grid that differs from the
    profile grid is resampled by linear interpolation and the caption
    says so.
    """
    diag = read_diagnostics(diagnostics_csv)
    label, snap = read_snapshot(snapshot_csv)
    prof = read_profile(profile_csv)
    checksum = input_checksum([diagnostics_csv, snapshot_csv, profile_csv])

    coord = np.abs(snap[label])
    order = np.argsort(prof["r"])
    r_sorted = prof["r"][order]
    phi_sorted = prof["phi"][order]
    inside = coord <= r_sorted[-1]
    if not np.any(inside):
        raise SchemaMismatchError(
            f"{snapshot_csv}: no snapshot points inside the profile grid")
    matched = np.isin(np.round(coord[inside], 12),
                      np.round(r_sorted, 12)).all()
    fitted = np.interp(coord[inside], r_sorted, phi_sorted)
    sup_difference = float(np.max(np.abs(snap["abs"][inside] - fitted)))

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].plot(diag["t"], diag["linf"], color="tab:blue")
    axes[0].set_xlabel("t")
    axes[0].set_ylabel("max |phi|")
    axes[1].plot(snap[label], snap["abs"], color="tab:blue",
                 label="final |phi|")
    axes[1].plot(r_sorted, phi_sorted, color="tab:green", linestyle="--",
                 label="fitted profile")
    axes[1].set_xlabel(label)
    axes[1].legend(loc="best", fontsize=8)
    caption = f"sup difference {sup_difference:.3g}"
    if not matched:
        caption += " (profile resampled by interpolation)"
    fig.suptitle(caption, fontsize=10)
    fig.tight_layout()
    written = _save(fig, out_path, checksum)
    return {"output": written, "checksum": checksum,
            "sup_difference": sup_difference, "resampled": not matched}


def plot_linf_trace(diagnostics_csv, out_path):
    """Single-panel L-inf history."""
    diag = read_diagnostics(diagnostics_csv)
    checksum = input_checksum([diagnostics_csv])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(diag["t"], diag["linf"], color="tab:blue")
    ax.set_xlabel("t")
    ax.set_ylabel("max |phi|")
    fig.tight_layout()
    written = _save(fig, out_path, checksum)
    return {"output": written, "checksum": checksum}


def plot_profile_family(profile_csvs, out_path):
    """Overlay of stationary profiles phi(r), one line per input CSV."""
    if not profile_csvs:
        raise SchemaMismatchError("profile-family needs at least one CSV")
    checksum = input_checksum(profile_csvs)
    fig, ax = plt.subplots(figsize=(6, 4))
    for path in profile_csvs:
        prof = read_profile(path)
        order = np.argsort(prof["r"])
        ax.plot(prof["r"][order], prof["phi"][order],
                label=Path(path).stem)
    ax.set_xlabel("r")
    ax.set_ylabel("phi")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    written = _save(fig, out_path, checksum)
    return {"output": written, "checksum": checksum,
            "profiles": len(profile_csvs)}
