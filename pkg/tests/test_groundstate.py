"""Stationary solver: relaxed Newton, continuation, semilinear comparison."""

import warnings

import numpy as np
import pytest

from quasisol import (
    DenominatorBlowupError,
    InvalidParameterError,
    ModelParams,
    NoConvergenceError,
    RadialProfile,
    SolverControls,
    cheb_grid,
    mass_radial,
    newton_relaxed,
    residual_qeqs,
    semilinear_groundstate,
    stationary_residual_identity,
)
from quasisol.groundstate import (
    ContinuationPlan,
    _jacobian_full,
    _newton_core,
    _residual_full,
    _disc,
    continuation,
    default_seed,
)

import oracles


class TestNewtonGroundState:
    def test_residual_below_tolerance(self, gs_a1d3):
        assert gs_a1d3.residual < 1e-12

    def test_profile_strictly_inside_unit_interval(self, gs_a1d3):
        values = gs_a1d3.profile.values
        assert np.all(values[1:] > 0)  # boundary node is pinned to 0
        assert values.max() < 1.0

    def test_profile_monotone_in_radius(self, gs_a1d3):
        # s_nodes decrease from s0 to 0, so values must increase
        assert np.all(np.diff(gs_a1d3.profile.values) > 0)

    def test_peak_matches_shooting_oracle(self, gs_a1d3):
        peak = float(np.max(gs_a1d3.profile.values))
        assert peak == pytest.approx(oracles.QUASILINEAR_PEAK_A1D3W01,
                                     abs=1e-6)

    def test_boundary_node_is_zero(self, gs_a1d3):
        assert gs_a1d3.profile.values[0] == 0.0

    def test_stationary_identity(self, gs_a1d3):
        params = ModelParams(alpha=1, dim=3, omega=0.1)
        assert stationary_residual_identity(gs_a1d3.profile, params) < 1e-8

    def test_residual_qeqs_vanishes_on_solution(self, gs_a1d3):
        params = ModelParams(alpha=1, dim=3, omega=0.1)
        res = residual_qeqs(gs_a1d3.profile, params)
        assert np.max(np.abs(res)) < 1e-10

    def test_residual_qeqs_flags_non_solution(self, gs_a1d3):
        params = ModelParams(alpha=1, dim=3, omega=0.1)
        wrong = RadialProfile(grid=gs_a1d3.profile.grid,
                              values=0.5 * gs_a1d3.profile.values,
                              omega=0.1)
        assert np.max(np.abs(residual_qeqs(wrong, params))) > 1e-4

    def test_tail_reported_small(self, gs_a1d3):
        assert gs_a1d3.tail < 1e-10

    def test_requires_solitary_omega(self):
        grid = cheb_grid(60, 200.0)
        with pytest.raises(InvalidParameterError):
            newton_relaxed(default_seed(grid),
                           ModelParams(alpha=1, dim=3, omega=0.6))

    def test_iteration_cap_raises_no_convergence(self):
        grid = cheb_grid(100, 1e3)
        controls = SolverControls(mu=0.1, tol=1e-12, max_iter=3)
        with pytest.raises(NoConvergenceError):
            newton_relaxed(default_seed(grid),
                           ModelParams(alpha=1, dim=3, omega=0.1), controls)


class TestJacobian:
    @pytest.mark.parametrize("alpha,dim", [(1, 3), (2, 2), (3, 4)])
    def test_matches_directional_finite_difference(self, alpha, dim):
        rng = np.random.default_rng(41 + alpha + dim)
        grid = cheb_grid(48, 100.0)
        disc = _disc(grid, dim)
        phi = 0.5 * np.exp(-grid.s_nodes / 20.0) \
            + 0.02 * rng.standard_normal(grid.s_nodes.size)
        phi = np.clip(phi, 0.01, 0.8)
        direction = rng.standard_normal(phi.size)
        direction /= np.max(np.abs(direction))
        eps = 1e-7
        fd = (_residual_full(phi + eps * direction, 0.1, alpha, disc)
              - _residual_full(phi - eps * direction, 0.1, alpha, disc)) \
            / (2 * eps)
        jv = _jacobian_full(phi, 0.1, alpha, disc) @ direction
        scale = np.max(np.abs(jv)) + 1.0
        assert np.max(np.abs(fd - jv)) / scale < 1e-6


class TestNonFiniteResidualGuard:
    def test_nan_residual_raises_typed_error(self):
        # an unclamped iterate can land on max |phi| = 1 exactly, where
        # the residual divides by zero; the solver must fail with the
        # saturation error, not a raw linear-algebra exception
        def res_fn(phi):
            return np.full(phi.size - 1, np.nan)

        def jac_fn(phi):
            return np.eye(phi.size - 1)

        with pytest.raises(DenominatorBlowupError):
            _newton_core(np.array([0.0, 0.5, 0.5]), res_fn, jac_fn,
                         SolverControls(mu=0.5, tol=1e-10, max_iter=10))

    def test_unclamped_divergence_is_typed(self):
        # clamp=False lets the iterate leave (0,1); it then either
        # diverges (no convergence) or crosses saturation (blowup),
        # never an untyped crash
        grid = cheb_grid(60, 200.0)
        params = ModelParams(alpha=1, dim=3, omega=0.45)
        controls = SolverControls(mu=1.0, tol=1e-10, max_iter=400,
                                  clamp=False)
        with pytest.raises((NoConvergenceError, DenominatorBlowupError)):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                newton_relaxed(default_seed(grid), params, controls)


class TestControlsAndPlan:
    def test_controls_validation(self):
        with pytest.raises(InvalidParameterError):
            SolverControls(mu=0.0)
        with pytest.raises(InvalidParameterError):
            SolverControls(mu=1.5)
        with pytest.raises(InvalidParameterError):
            SolverControls(tol=-1e-10)
        with pytest.raises(InvalidParameterError):
            SolverControls(max_iter=0)

    def test_plan_requires_strictly_monotone_path(self):
        with pytest.raises(InvalidParameterError):
            ContinuationPlan(omega_values=(0.1, 0.1, 0.2))
        with pytest.raises(InvalidParameterError):
            ContinuationPlan(omega_values=(0.1, 0.3, 0.2))
        ContinuationPlan(omega_values=(0.3, 0.2, 0.1))  # decreasing is fine

    def test_plan_requires_nonempty_path(self):
        with pytest.raises(InvalidParameterError):
            ContinuationPlan(omega_values=())


class TestContinuation:
    def test_peaks_increase_along_the_path(self):
        grid = cheb_grid(150, 1e3)
        params = ModelParams(alpha=1, dim=3)
        plan = ContinuationPlan(omega_values=(0.1, 0.15, 0.2))
        results = continuation(plan, params,
                               controls=SolverControls(mu=0.1, tol=1e-10),
                               grid=grid)
        peaks = [float(np.max(r.profile.values)) for r in results]
        assert peaks == sorted(peaks)
        assert all(r.residual < 1e-10 for r in results)
        assert [r.profile.omega for r in results] == [0.1, 0.15, 0.2]

    def test_failure_carries_partial_results(self):
        grid = cheb_grid(100, 1e3)
        params = ModelParams(alpha=1, dim=3)
        # iteration budget hopeless for the second point only
        plan = ContinuationPlan(
            omega_values=(0.1, 0.2),
            overrides={1: SolverControls(mu=0.1, tol=1e-10, max_iter=20)})
        with pytest.raises(NoConvergenceError) as err:
            continuation(plan, params,
                         controls=SolverControls(mu=0.1, tol=1e-10),
                         grid=grid)
        assert err.value.failed_omega == 0.2
        assert len(err.value.partial) == 1
        assert err.value.partial[0].profile.omega == 0.1

    def test_mass_grows_with_omega_toward_star_for_d3(self):
        # past the turning point the d=3 branch mass rises toward the
        # omega* divergence; [0.1, 0.18] is well inside that regime
        grid = cheb_grid(150, 1e3)
        params = ModelParams(alpha=1, dim=3)
        plan = ContinuationPlan(omega_values=(0.1, 0.14, 0.18))
        results = continuation(plan, params,
                               controls=SolverControls(mu=0.1, tol=1e-10),
                               grid=grid)
        masses = [mass_radial(r.profile,
                              params.with_omega(r.profile.omega))
                  for r in results]
        assert masses[0] < masses[1] < masses[2]


class TestSemilinear:
    @pytest.mark.parametrize("alpha,dim", [(1, 2), (1, 3), (3, 2)])
    def test_peak_matches_shooting_oracle(self, alpha, dim):
        # 2e-7 covers the default grid's discretization of the steeper
        # alpha=3 profile; the alpha=1 pairs agree to 5e-9
        result = semilinear_groundstate(ModelParams(alpha=alpha, dim=dim))
        peak = float(np.max(result.profile.values))
        assert peak == pytest.approx(oracles.SEMILINEAR_PEAK[(alpha, dim)],
                                     abs=2e-7)

    @pytest.mark.parametrize("alpha,dim", [(1, 2), (1, 3)])
    def test_squared_norm_matches_frozen_value(self, alpha, dim):
        # integrate by hand: mass_radial gates on the saturation bound,
        # which the comparison profile (peak > 1) intentionally violates
        from quasisol import radial_weights
        from quasisol.model import surface_area
        result = semilinear_groundstate(ModelParams(alpha=alpha, dim=dim))
        grid = result.profile.grid
        w = radial_weights(grid, dim)
        shell = 0.5 * (grid.s0 / 2.0) ** (dim / 2.0)
        norm2 = surface_area(dim) * shell * float(
            np.dot(w, result.profile.values ** 2))
        assert norm2 == pytest.approx(oracles.SEMILINEAR_NORM2[(alpha, dim)],
                                      rel=1e-8)

    def test_rejects_supercritical_exponent(self):
        with pytest.raises(InvalidParameterError):
            semilinear_groundstate(ModelParams(alpha=2, dim=3))
        with pytest.raises(InvalidParameterError):
            semilinear_groundstate(ModelParams(alpha=1, dim=4))
