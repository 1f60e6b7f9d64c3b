"""Periodic 1D evolution: RK4 orbits, conservation monitors, abort paths."""

import numpy as np
import pytest

from quasisol import (
    AccuracyAbortError,
    DenominatorBlowupError,
    InvalidParameterError,
    Run1DConfig,
    evolve_1d,
    fourier_grid,
    perturbed_soliton_1d,
    rhs_1d,
)
from quasisol.evolve1d import rk4_step
from quasisol.model import Field1D

import oracles


@pytest.fixture(scope="module")
def soliton_field():
    grid = fourier_grid(1024, 20.0)
    return perturbed_soliton_1d(3, 0.22, 1.0, grid)


class TestRun1DConfig:
    def test_accepts_defaults(self):
        cfg = Run1DConfig(alpha=3, omega=0.22)
        assert cfg.nx == 4096 and cfg.nt == 100000

    def test_rejects_bad_step_counts(self):
        with pytest.raises(InvalidParameterError):
            Run1DConfig(alpha=1, omega=0.1, nt=0)
        with pytest.raises(InvalidParameterError):
            Run1DConfig(alpha=1, omega=0.1, tmax=0.0)

    def test_snapshot_stride_must_divide_nt(self):
        with pytest.raises(InvalidParameterError):
            Run1DConfig(alpha=1, omega=0.1, nt=100, snapshot_stride=7)
        with pytest.raises(InvalidParameterError):
            Run1DConfig(alpha=1, omega=0.1, nt=100, snapshot_stride=-1)
        Run1DConfig(alpha=1, omega=0.1, nt=100, snapshot_stride=25)

    def test_saturating_initial_peak_rejected(self):
        # lam * peak >= 1 cannot be evolved
        with pytest.raises(DenominatorBlowupError):
            Run1DConfig(alpha=3, omega=0.22, lam=1.05)

    def test_omega_none_skips_peak_check(self):
        Run1DConfig(alpha=1, omega=None, lam=5.0)


class TestInitialData:
    def test_perturbed_soliton_scales_peak(self):
        grid = fourier_grid(512, 20.0)
        f = perturbed_soliton_1d(3, 0.22, 0.5, grid)
        base = perturbed_soliton_1d(3, 0.22, 1.0, grid)
        assert np.iscomplexobj(f.values)
        assert np.max(np.abs(f.values)) == pytest.approx(
            0.5 * np.max(np.abs(base.values)), rel=1e-14)

    def test_perturbed_soliton_rejects_saturation(self):
        grid = fourier_grid(512, 20.0)
        with pytest.raises(DenominatorBlowupError):
            perturbed_soliton_1d(3, 0.22, 1.05, grid)


class TestRhs1D:
    def test_soliton_is_a_rotating_orbit(self, soliton_field):
        # i dphi/dt = ... has the solution phi e^(i omega t), so the rhs
        # at the soliton must equal i omega phi
        rhs = rhs_1d(soliton_field, 3).values
        target = 1j * 0.22 * soliton_field.values
        assert np.max(np.abs(rhs - target)) < 1e-10

    def test_phase_equivariance(self, soliton_field):
        theta = 0.7
        rotated = Field1D(soliton_field.grid,
                          soliton_field.values * np.exp(1j * theta))
        r1 = rhs_1d(rotated, 3).values
        r2 = rhs_1d(soliton_field, 3).values * np.exp(1j * theta)
        assert np.max(np.abs(r1 - r2)) < 1e-12

    def test_small_amplitude_limit_is_linear_schrodinger(self):
        # den -> 1 and the quasilinear terms vanish at O(eps^3), so a
        # tiny plane wave must obey i dphi/dt = -phi_xx
        grid = fourier_grid(1024, 20.0)
        k = 3
        wave = 1e-6 * np.exp(1j * k * grid.x_nodes / 20.0)
        rhs = rhs_1d(Field1D(grid, wave), 1).values
        expected = -1j * (k / 20.0) ** 2 * wave
        rel = np.max(np.abs(rhs - expected)) / np.max(np.abs(expected))
        assert rel < 1e-9

    def test_saturated_field_rejected(self):
        grid = fourier_grid(256, 10.0)
        vals = np.full(grid.x_nodes.size, 1.0 + 0.0j)
        with pytest.raises(DenominatorBlowupError):
            rhs_1d(Field1D(grid, vals), 1)


class TestShortOrbit:
    def test_orbit_phase_and_monitors(self, soliton_field):
        cfg = Run1DConfig(alpha=3, omega=0.22, lx=20.0, nx=1024,
                          tmax=0.01, nt=50, snapshot_stride=25)
        diag, snaps = evolve_1d(cfg, soliton_field)
        exact = soliton_field.values * np.exp(1j * 0.22 * 0.01)
        assert np.max(np.abs(snaps[-1][1] - exact)) < 1e-12
        assert abs(diag.mass[-1] / diag.mass[0] - 1.0) < 1e-13
        assert diag.delta.max() < 1e-13
        assert [t for t, _ in snaps] == [0.0, pytest.approx(0.005),
                                         pytest.approx(0.01)]

    def test_diagnostics_lengths(self, soliton_field):
        cfg = Run1DConfig(alpha=3, omega=0.22, lx=20.0, nx=1024,
                          tmax=0.002, nt=10)
        diag, snaps = evolve_1d(cfg, soliton_field)
        assert len(diag.times) == 11
        assert len(diag.linf) == len(diag.mass) == len(diag.energy) \
            == len(diag.delta) == 11
        assert snaps == []

    def test_rk4_self_convergence_order(self, soliton_field):
        # halving the step shrinks the defect against a reference run by
        # 16; measured through successive self-differences
        y0 = soliton_field
        h = 2e-3
        one = rk4_step(y0, h, 3)
        two = rk4_step(rk4_step(y0, h / 2, 3), h / 2, 3)
        four = rk4_step(rk4_step(rk4_step(rk4_step(y0, h / 4, 3),
                                          h / 4, 3), h / 4, 3), h / 4, 3)
        d1 = np.max(np.abs(one.values - two.values))
        d2 = np.max(np.abs(two.values - four.values))
        assert d1 / d2 == pytest.approx(16.0, rel=0.15)


class TestAbortPaths:
    def test_energy_drift_abort_carries_partial_records(self):
        # tiny-amplitude data on a step just past the RK4 stability
        # bound drifts in energy while staying far from saturation
        grid = fourier_grid(256, 10.0)
        vals = 0.01 * np.exp(-grid.x_nodes ** 2 / 8.0) + 0.0j
        cfg = Run1DConfig(alpha=1, omega=None, lx=10.0, nx=256,
                          tmax=8.0, nt=400, snapshot_stride=100)
        with pytest.raises(AccuracyAbortError) as err:
            evolve_1d(cfg, Field1D(grid, vals))
        partial = err.value.diagnostics["diagnostics"]
        assert partial.delta[-1] > 1e-3
        assert len(partial.times) < 401
        assert partial.linf.max() < 0.02
        assert [t for t, _ in err.value.diagnostics["snapshots"]] == [0.0]

    def test_saturation_mid_run_is_typed(self):
        # a violently unstable step drives |phi| past 1 inside a stage
        grid = fourier_grid(256, 10.0)
        f = perturbed_soliton_1d(1, 0.3, 1.0, grid)
        cfg = Run1DConfig(alpha=1, omega=0.3, lx=10.0, nx=256,
                          tmax=10.0, nt=20)
        with pytest.raises(DenominatorBlowupError):
            evolve_1d(cfg, f)

    def test_nan_drift_aborts_rather_than_continuing(self):
        # NaN compares false against any threshold; the finiteness guard
        # must still stop the run
        grid = fourier_grid(64, 5.0)
        vals = 0.3 * np.exp(-grid.x_nodes ** 2) + 0.0j
        cfg = Run1DConfig(alpha=1, omega=None, lx=5.0, nx=64,
                          tmax=200.0, nt=40)
        with pytest.raises((AccuracyAbortError, DenominatorBlowupError)):
            evolve_1d(cfg, Field1D(grid, vals))
