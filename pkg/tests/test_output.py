"""Artifact writers: CSV layouts, JSON sidecars, float64 round-trips."""

import json

import numpy as np
import pytest

from quasisol import (
    BifurcationPoint,
    GaussianStart,
    ModelParams,
    RadialProfile,
    Run1DConfig,
    RunRadialConfig,
    SolitonStart,
    cheb_grid,
    fit_asymptote_zero,
    mass_1d_reduced,
)
from quasisol.evolve1d import Diagnostics
from quasisol.output import (
    config_dict,
    fit_record,
    write_bifurcation,
    write_diagnostics,
    write_manifest,
    write_profile,
    write_snapshots,
)


@pytest.fixture
def profile():
    grid = cheb_grid(24, 40.0)
    values = (1.0 / 3.0) * np.exp(-grid.s_nodes / 9.0)
    values[0] = 0.0
    return RadialProfile(grid=grid, values=values, omega=0.1)


class TestWriteProfile:
    def test_csv_round_trips_float64(self, tmp_path, profile):
        paths = write_profile(tmp_path, "gs", profile,
                              ModelParams(alpha=1, dim=3, omega=0.1))
        data = np.genfromtxt(paths[0], delimiter=",", names=True)
        assert list(data.dtype.names) == ["s", "r", "phi"]
        assert np.array_equal(data["phi"], profile.values)
        assert np.array_equal(data["s"], profile.grid.s_nodes)
        assert np.array_equal(data["r"], np.sqrt(profile.grid.s_nodes))

    def test_sidecar_metadata(self, tmp_path, profile):
        paths = write_profile(tmp_path, "gs", profile,
                              ModelParams(alpha=1, dim=3, omega=0.1))
        meta = json.loads(paths[1].read_text())
        assert meta == {"alpha": 1, "dim": 3, "omega": 0.1, "n": 24,
                        "s0": 40.0}

    def test_seventeen_digit_precision(self, tmp_path, profile):
        paths = write_profile(tmp_path, "gs", profile,
                              ModelParams(alpha=1, dim=3, omega=0.1))
        text = paths[0].read_text()
        assert "0.33333333333333331" in text


class TestWriteBifurcation:
    def test_csv_layout_and_fit_sidecar(self, tmp_path):
        points = [
            BifurcationPoint(omega=0.1, mass=2.0, energy=-0.5,
                             dmass_domega=-1.0, stability="unstable"),
            BifurcationPoint(omega=0.2, mass=1.0 / 7.0, energy=0.25,
                             dmass_domega=2.0, stability="stable"),
        ]
        omegas = np.logspace(-6, -3, 10)
        fit = fit_asymptote_zero(
            [(w, mass_1d_reduced(1, w)) for w in omegas], 1, 1)
        paths = write_bifurcation(tmp_path, points, fits=[fit],
                                  meta={"alpha": 1, "dim": 1})
        lines = paths[0].read_text().splitlines()
        assert lines[0] == "omega,mass,energy,dmass_domega,stability"
        assert lines[1].endswith(",unstable")
        assert lines[2].split(",")[1] == "%.17g" % (1.0 / 7.0)
        sidecar = json.loads(paths[1].read_text())
        assert sidecar["alpha"] == 1
        assert sidecar["fits"][0]["law"] == "power-law-at-zero"
        assert sidecar["fits"][0]["exponent"] == fit.exponent
        assert len(sidecar["fits"][0]["window"]) == 2


class TestWriteDiagnostics:
    def test_round_trip(self, tmp_path):
        diag = Diagnostics(times=np.array([0.0, 0.1, 0.2]),
                           linf=np.array([0.9, 0.8999, 0.8998]),
                           mass=np.array([5.0, 5.0, 5.0]),
                           energy=np.array([1e-3, 1e-3, 1e-3]),
                           delta=np.array([0.0, 1e-15, 2e-15]))
        paths = write_diagnostics(tmp_path, diag)
        data = np.genfromtxt(paths[0], delimiter=",", names=True)
        assert list(data.dtype.names) == ["t", "linf", "mass", "energy",
                                          "delta"]
        assert np.array_equal(data["linf"], diag.linf)
        assert np.array_equal(data["delta"], diag.delta)


class TestWriteSnapshots:
    def test_files_and_time_table(self, tmp_path):
        x = np.linspace(-1.0, 1.0, 8)
        values = np.exp(1j * x)
        snaps = [(0.0, values), (0.5, 2.0 * values)]
        paths, table = write_snapshots(tmp_path, snaps, x, "x")
        assert [p.name for p in paths] == ["snapshot_0000.csv",
                                           "snapshot_0001.csv"]
        assert table == [
            {"index": 0, "time": 0.0, "file": "snapshot_0000.csv"},
            {"index": 1, "time": 0.5, "file": "snapshot_0001.csv"},
        ]
        data = np.genfromtxt(paths[1], delimiter=",", names=True)
        assert list(data.dtype.names) == ["x", "re", "im", "abs"]
        assert np.array_equal(data["re"], (2.0 * values).real)
        assert np.array_equal(data["abs"], np.abs(2.0 * values))


class TestManifestAndConfig:
    def test_gaussian_descriptor_gets_kind_tag(self):
        cfg = RunRadialConfig(alpha=1, dim=3,
                              initial=GaussianStart(c=0.9, s1=50.0),
                              h=0.01, nt=100)
        payload = config_dict(cfg)
        assert payload["initial"] == {"kind": "gaussian", "c": 0.9,
                                      "s1": 50.0}
        assert payload["alpha"] == 1 and payload["nt"] == 100

    def test_soliton_descriptor_gets_kind_tag(self):
        cfg = RunRadialConfig(alpha=1, dim=3,
                              initial=SolitonStart(omega=0.1, lam=1.001),
                              h=0.01, nt=100)
        assert config_dict(cfg)["initial"] == {"kind": "soliton",
                                               "omega": 0.1, "lam": 1.001}

    def test_run1d_config_passthrough(self):
        cfg = Run1DConfig(alpha=3, omega=0.22, nt=10)
        payload = config_dict(cfg)
        assert payload["omega"] == 0.22
        assert "initial" not in payload

    def test_manifest_contents(self, tmp_path):
        cfg = Run1DConfig(alpha=3, omega=0.22, nt=10)
        paths = write_manifest(tmp_path, cfg,
                               [{"index": 0, "time": 0.0,
                                 "file": "snapshot_0000.csv"}],
                               extra={"aborted": "energy drift"})
        payload = json.loads(paths[0].read_text())
        assert payload["config"]["alpha"] == 3
        assert payload["snapshots"][0]["file"] == "snapshot_0000.csv"
        assert payload["aborted"] == "energy drift"

    def test_fit_record_fields(self):
        omegas = np.logspace(-6, -3, 10)
        fit = fit_asymptote_zero(
            [(w, mass_1d_reduced(1, w)) for w in omegas], 1, 1)
        rec = fit_record(fit)
        assert set(rec) == {"law", "coefficient", "exponent", "window",
                            "residual"}
