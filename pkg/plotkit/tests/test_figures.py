"""Figure builders against hand-written schema-conformant CSVs."""

import json

import numpy as np
import pytest

from plotkit import (
    SchemaMismatchError,
    input_checksum,
    plot_linf_and_overlay,
    plot_linf_trace,
    plot_mass_energy,
    plot_profile_family,
    plot_waterfall,
)


def _write_branch(path, num=40):
    # synthetic fold: mass dips then rises, energy consistent in shape only
    omega = np.linspace(0.05, 0.24, num)
    mass = 2.0 + (omega - 0.15) ** 2 * 40.0
    energy = 0.3 - (omega - 0.15) ** 3 * 50.0
    slope = np.gradient(mass, omega)
    rows = ["omega,mass,energy,dmass_domega,stability"]
    for i in range(num):
        if i == 0 or i == num - 1:
            label = "undetermined-endpoint"
        elif slope[i] < 0:
            label = "unstable"
        else:
            label = "stable"
        rows.append(f"{omega[i]:.17g},{mass[i]:.17g},"
                    f"{energy[i]:.17g},{slope[i]:.17g},{label}")
    path.write_text("\n".join(rows) + "\n")


def _write_diag(path, times, linf):
    rows = ["t,linf,mass,energy,delta"]
    for t, v in zip(times, linf):
        rows.append(f"{t:.17g},{v:.17g},5.0,1.0,1e-13")
    path.write_text("\n".join(rows) + "\n")


def _write_snapshot(path, coord_name, coord, re, im):
    rows = [f"{coord_name},re,im,abs"]
    for c, a, b in zip(coord, re, im):
        rows.append(f"{c:.17g},{a:.17g},{b:.17g},{abs(a + 1j * b):.17g}")
    path.write_text("\n".join(rows) + "\n")


def _write_profile(path, r, phi):
    rows = ["s,r,phi"]
    for rv, pv in zip(r, phi):
        rows.append(f"{rv * rv:.17g},{rv:.17g},{pv:.17g}")
    path.write_text("\n".join(rows) + "\n")


class TestMassEnergy:
    def test_triptych_svg_with_checksum(self, tmp_path):
        branch = tmp_path / "bifurcation.csv"
        _write_branch(branch)
        out = tmp_path / "fig.svg"
        result = plot_mass_energy(branch, out)
        assert result["output"] == out
        assert result["points"] == 40
        text = out.read_text()
        assert f"inputs sha256 {result['checksum']}" in text
        assert result["checksum"] == input_checksum([branch])

    def test_default_suffix_is_svg(self, tmp_path):
        branch = tmp_path / "bifurcation.csv"
        _write_branch(branch)
        result = plot_mass_energy(branch, tmp_path / "bare")
        assert result["output"].suffix == ".svg"
        assert result["output"].exists()

    def test_png_also_carries_checksum(self, tmp_path):
        branch = tmp_path / "bifurcation.csv"
        _write_branch(branch)
        out = tmp_path / "fig.png"
        result = plot_mass_energy(branch, out)
        assert f"inputs sha256 {result['checksum']}".encode() \
            in out.read_bytes()

    def test_empty_csv_is_schema_mismatch(self, tmp_path):
        branch = tmp_path / "bifurcation.csv"
        branch.write_text("omega,mass,energy,dmass_domega,stability\n")
        with pytest.raises(SchemaMismatchError):
            plot_mass_energy(branch, tmp_path / "fig.svg")


class TestWaterfall:
    def _manifest(self, tmp_path, count):
        entries = []
        x = np.linspace(-10.0, 10.0, 64)
        for idx in range(count):
            name = f"snapshot_{idx:04d}.csv"
            amp = 0.9 - 0.1 * idx
            _write_snapshot(tmp_path / name, "x", x,
                            amp * np.exp(-x ** 2 / 8.0), np.zeros_like(x))
            entries.append({"index": idx, "time": 0.5 * idx, "file": name})
        manifest = tmp_path / "manifest.json"
        manifest.write_text(json.dumps(
            {"config": {"alpha": 3}, "snapshots": entries}))
        return manifest

    def test_two_snapshots_ok(self, tmp_path):
        manifest = self._manifest(tmp_path, 3)
        result = plot_waterfall(manifest, tmp_path / "wf.svg")
        assert result["snapshots"] == 3
        assert "inputs sha256" in (tmp_path / "wf.svg").read_text()

    def test_single_snapshot_rejected(self, tmp_path):
        manifest = self._manifest(tmp_path, 1)
        with pytest.raises(SchemaMismatchError, match="2 snapshots"):
            plot_waterfall(manifest, tmp_path / "wf.svg")


class TestOverlay:
    def test_identical_grids_sup_zero(self, tmp_path):
        r = np.linspace(0.0, 6.0, 40)
        phi = 0.9 * np.exp(-(r ** 2) / 4.0)
        diag = tmp_path / "diagnostics.csv"
        snap = tmp_path / "snapshot_0000.csv"
        prof = tmp_path / "groundstate.csv"
        _write_diag(diag, np.linspace(0, 1, 11), np.full(11, 0.9))
        _write_snapshot(snap, "r", r, phi, np.zeros_like(r))
        _write_profile(prof, r, phi)
        result = plot_linf_and_overlay(diag, snap, prof,
                                       tmp_path / "overlay.svg")
        assert result["sup_difference"] == 0.0
        assert result["resampled"] is False
        text = (tmp_path / "overlay.svg").read_text()
        assert "sup difference 0" in text
        assert "resampled" not in text

    def test_off_grid_profile_resampled(self, tmp_path):
        r_snap = np.linspace(0.0, 6.0, 37)
        r_prof = np.linspace(0.0, 6.5, 53)
        diag = tmp_path / "diagnostics.csv"
        snap = tmp_path / "snapshot_0000.csv"
        prof = tmp_path / "groundstate.csv"
        _write_diag(diag, np.linspace(0, 1, 11), np.full(11, 0.9))
        _write_snapshot(snap, "r", r_snap,
                        0.9 * np.exp(-(r_snap ** 2) / 4.0),
                        np.zeros_like(r_snap))
        _write_profile(prof, r_prof, 0.9 * np.exp(-(r_prof ** 2) / 4.0))
        result = plot_linf_and_overlay(diag, snap, prof,
                                       tmp_path / "overlay.svg")
        assert result["resampled"] is True
        # same curve sampled on different grids: only linear
        # interpolation error remains
        assert 0.0 < result["sup_difference"] < 1e-3
        assert "resampled by interpolation" \
            in (tmp_path / "overlay.svg").read_text()

    def test_sup_difference_matches_inputs(self, tmp_path):
        # the caption number must be the true sup over shared points
        r = np.linspace(0.0, 6.0, 40)
        phi = 0.9 * np.exp(-(r ** 2) / 4.0)
        bump = 3e-4 * np.exp(-((r - 2.0) ** 2))
        diag = tmp_path / "diagnostics.csv"
        snap = tmp_path / "snapshot_0000.csv"
        prof = tmp_path / "groundstate.csv"
        _write_diag(diag, np.linspace(0, 1, 11), np.full(11, 0.9))
        _write_snapshot(snap, "r", r, phi + bump, np.zeros_like(r))
        _write_profile(prof, r, phi)
        result = plot_linf_and_overlay(diag, snap, prof,
                                       tmp_path / "overlay.svg")
        # re-derive from the files plotkit was given
        snap_abs = np.abs(phi + bump)
        expected = float(np.max(np.abs(snap_abs - phi)))
        assert result["sup_difference"] == pytest.approx(expected, rel=1e-12)
        assert f"sup difference {expected:.3g}" \
            in (tmp_path / "overlay.svg").read_text()


class TestSmallFigures:
    def test_linf_trace(self, tmp_path):
        diag = tmp_path / "diagnostics.csv"
        _write_diag(diag, np.linspace(0, 2, 21),
                    0.9 + 0.01 * np.sin(np.linspace(0, 6, 21)))
        result = plot_linf_trace(diag, tmp_path / "trace.svg")
        assert (tmp_path / "trace.svg").exists()
        assert len(result["checksum"]) == 64

    def test_profile_family(self, tmp_path):
        paths = []
        r = np.linspace(0.0, 5.0, 30)
        for i, peak in enumerate((0.5, 0.7, 0.9)):
            p = tmp_path / f"gs_{i}.csv"
            _write_profile(p, r, peak * np.exp(-r))
            paths.append(p)
        result = plot_profile_family(paths, tmp_path / "family.svg")
        assert result["profiles"] == 3

    def test_profile_family_empty(self, tmp_path):
        with pytest.raises(SchemaMismatchError):
            plot_profile_family([], tmp_path / "family.svg")
