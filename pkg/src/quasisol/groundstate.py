"""Relaxed Newton solver and frequency continuation for radial ground states.

The stationary profile solves, in the variable s = r^2 on [0, s0],

    4 s phi'' + 2 d phi'
    + (phi^(2 alpha + 1) - omega phi) (1 - phi^(2 alpha))
    + 4 alpha s (phi')^2 phi^(2 alpha - 1) / (1 - phi^(2 alpha)) = 0,

with phi(s0) = 0 imposed by eliminating the boundary row and column and no
condition at the origin, where the equation degenerates to its regular
limit. A Newton iteration with convex relaxation mu keeps iterates below
the saturation bound max phi < 1.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import lu_factor, lu_solve

from .errors import (
    DenominatorBlowupError,
    InvalidParameterError,
    NoConvergenceError,
)
from .model import ModelParams, RadialProfile
from .spectral import cheb_coeffs, cheb_eval, cheb_grid, tail_estimate

__all__ = [
    "SolverControls",
    "ContinuationPlan",
    "NewtonResult",
    "residual_qeqs",
    "jacobian_qeqs",
    "newton_relaxed",
    "continuation",
    "default_seed",
    "semilinear_groundstate",
]


@dataclass(frozen=True)
class SolverControls:
    """Knobs of the relaxed Newton iteration.

    mu is the convex blending of the Newton iterate (1 keeps plain Newton),
    tol the residual sup-norm stopping threshold, max_iter the iteration
    cap, and clamp whether iterates reaching max phi >= 1 are rejected with
    step halving.
    """

    mu: float = 0.1
    tol: float = 1e-10
    max_iter: int = 20000
    clamp: bool = True

    def __post_init__(self):
        if not 0.0 < self.mu <= 1.0:
            raise InvalidParameterError(f"mu must lie in (0, 1], got {self.mu}")
        if not self.tol > 0:
            raise InvalidParameterError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise InvalidParameterError(
                f"max_iter must be >= 1, got {self.max_iter}")


@dataclass(frozen=True)
class ContinuationPlan:
    """Frequency path for a continuation run.

    omega_values must be strictly monotone (increasing for the usual sweep
    toward the existence threshold; a decreasing path retraces it).
    overrides maps an index in omega_values to SolverControls for that
    step. When regrid_tail_bound is set, the grid is refined (n and s0
    multiplied by the regrid factors) whenever the trailing Chebyshev
    coefficient of a converged profile exceeds the bound relative to the
    largest coefficient, and the step is re-solved.
    """

    omega_values: tuple
    overrides: dict = field(default_factory=dict)
    regrid_tail_bound: float | None = None
    regrid_n_factor: int = 2
    regrid_s0_factor: float = 1.0

    def __post_init__(self):
        om = tuple(float(w) for w in self.omega_values)
        object.__setattr__(self, "omega_values", om)
        if len(om) == 0:
            raise InvalidParameterError("omega_values must be non-empty")
        diffs = np.diff(om)
        if len(om) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise InvalidParameterError("omega_values must be strictly monotone")


@dataclass
class NewtonResult:
    """Converged profile with its residual, iteration count, and the
    trailing Chebyshev-coefficient estimate."""

    profile: RadialProfile
    residual: float
    iterations: int
    tail: float


class _Discretization:
    # mapped derivative matrices and the linear radial operator for one
    # (grid, dim) pair; grids are immutable so this is shareable
    def __init__(self, grid, dim):
        self.grid = grid
        self.dim = dim
        self.d1s = (2.0 / grid.s0) * grid.diff1
        d2s = self.d1s @ self.d1s
        self.lap = 4.0 * grid.s_nodes[:, None] * d2s + (2.0 * dim) * self.d1s


@lru_cache(maxsize=8)
def _disc(grid, dim):
    return _Discretization(grid, dim)


def _check_saturation(phi):
    if np.max(np.abs(phi)) >= 1.0:
        raise DenominatorBlowupError(
            f"max |phi| = {np.max(np.abs(phi))} >= 1 in the stationary residual")


def _residual_full(phi, omega, alpha, disc):
    # all n+1 collocation rows; caller drops the Dirichlet row at s0
    s = disc.grid.s_nodes
    dphi = disc.d1s @ phi
    p2a = phi ** (2 * alpha)
    den = 1.0 - p2a
    res = (disc.lap @ phi
           + (phi ** (2 * alpha + 1) - omega * phi) * den
           + 4.0 * alpha * s * dphi ** 2 * phi ** (2 * alpha - 1) / den)
    return res


def residual_qeqs(profile, params):
    """Stationary-equation residual at the retained collocation rows.

    Rows run over interior nodes and s = 0 (where the 4 s terms vanish
    identically); the Dirichlet row at s0 is excluded.
    """
    omega = params.omega if params.omega is not None else profile.omega
    phi = np.asarray(profile.values, dtype=float)
    _check_saturation(phi)
    disc = _disc(profile.grid, params.dim)
    return _residual_full(phi, omega, params.alpha, disc)[1:]


def _jacobian_full(phi, omega, alpha, disc):
    s = disc.grid.s_nodes
    dphi = disc.d1s @ phi
    p2a = phi ** (2 * alpha)
    den = 1.0 - p2a
    d_nonlin = (((2 * alpha + 1) * p2a - omega) * den
                - 2.0 * alpha * phi ** (2 * alpha - 1)
                * (phi ** (2 * alpha + 1) - omega * phi))
    grad_sq = dphi ** 2
    d_quasi = (4.0 * alpha * s * grad_sq * phi ** (2 * alpha - 2)
               * ((2 * alpha - 1) + 2.0 * alpha * p2a / den) / den)
    d_wrt_slope = 8.0 * alpha * s * dphi * phi ** (2 * alpha - 1) / den
    jac = disc.lap + d_wrt_slope[:, None] * disc.d1s
    jac[np.diag_indices_from(jac)] += d_nonlin + d_quasi
    return jac


def jacobian_qeqs(profile, params):
    """Analytic Jacobian of residual_qeqs with the s0 row and column
    eliminated."""
    omega = params.omega if params.omega is not None else profile.omega
    phi = np.asarray(profile.values, dtype=float)
    _check_saturation(phi)
    disc = _disc(profile.grid, params.dim)
    return _jacobian_full(phi, omega, params.alpha, disc)[1:, 1:]


def default_seed(grid):
    """Standard initial iterate 0.9 exp(-s/50) with a zero boundary value."""
    values = 0.9 * np.exp(-grid.s_nodes / 50.0)
    values[0] = 0.0
    return RadialProfile(grid=grid, values=values, omega=None)


def _profile_tail(values):
    coeffs = cheb_coeffs(values)
    return tail_estimate(coeffs), float(np.max(np.abs(coeffs)))


def _newton_core(phi0, res_fn, jac_fn, controls, upper=None,
                 move_refactor=0.02, backtrack=False):
    """Relaxed Newton with a frozen-LU economy.

    Iterates x <- mu * x_newton + (1 - mu) * x on the retained unknowns.
    The Jacobian LU is reused while the iterate has moved less than
    move_refactor in sup norm since the last factorization and the
    residual keeps decreasing; slow drift of the Jacobian only perturbs
    the linear contraction rate, not the fixed point. A candidate iterate
    reaching max |x| >= upper is retried with the blend halved, up to 20
    times. With backtrack the blend is also halved while the residual
    grows (accepted anyway once the blend is tiny, since the sup norm of
    the residual need not fall monotonically along the Newton path).
    """
    phi = phi0.copy()
    res = res_fn(phi)
    res_norm = float(np.max(np.abs(res)))
    lu = None
    phi_at_factor = None
    refactored_last = False
    for iteration in range(controls.max_iter + 1):
        if not np.isfinite(res_norm):
            raise DenominatorBlowupError(
                "residual is no longer finite: the iterate crossed the "
                "saturation set max |phi| = 1 (clamping is disabled)")
        if res_norm < controls.tol:
            return phi, res_norm, iteration
        if iteration == controls.max_iter:
            break
        stale = lu is not None and (
            float(np.max(np.abs(phi - phi_at_factor))) > move_refactor)
        if lu is None or stale:
            lu = lu_factor(jac_fn(phi))
            phi_at_factor = phi.copy()
            refactored_last = True
        step = lu_solve(lu, -res)
        blend = controls.mu
        trial_res = None
        for _ in range(21):
            trial = phi.copy()
            trial[1:] += blend * step
            if upper is not None and float(np.max(np.abs(trial))) >= upper:
                blend *= 0.5
                continue
            if not backtrack:
                break
            trial_res = res_fn(trial)
            trial_norm = float(np.max(np.abs(trial_res)))
            if trial_norm <= res_norm or blend < controls.mu / 1024.0:
                break
            blend *= 0.5
        else:
            raise DenominatorBlowupError(
                f"Newton update stays at max |phi| >= {upper:g} "
                "after 20 halvings")
        if trial_res is None:
            trial_res = res_fn(trial)
            trial_norm = float(np.max(np.abs(trial_res)))
        if trial_norm > res_norm and not refactored_last:
            # residual grew on stale linear algebra: refresh and retry
            lu = None
            continue
        refactored_last = False
        phi = trial
        res = trial_res
        res_norm = trial_norm
    raise NoConvergenceError(
        f"no convergence after {controls.max_iter} iterations "
        f"(residual {res_norm:.3e}, tol {controls.tol:.3e})")


def newton_relaxed(seed, params, controls=None):
    """Solve the stationary system by relaxed Newton from the given seed.

    Returns a NewtonResult whose profile satisfies the residual tolerance,
    0 <= phi < 1, and phi(s0) = 0.
    """
    controls = controls if controls is not None else SolverControls()
    params.require_solitary()
    grid = seed.grid
    disc = _disc(grid, params.dim)
    omega, alpha = params.omega, params.alpha

    phi0 = np.array(seed.values, dtype=float)
    phi0[0] = 0.0
    _check_saturation(phi0)

    def res_fn(phi):
        return _residual_full(phi, omega, alpha, disc)[1:]

    def jac_fn(phi):
        return _jacobian_full(phi, omega, alpha, disc)[1:, 1:]

    upper = 1.0 if controls.clamp else None
    phi, res_norm, iterations = _newton_core(phi0, res_fn, jac_fn, controls,
                                             upper=upper)
    tail, _ = _profile_tail(phi)
    profile = RadialProfile(grid=grid, values=phi, omega=omega)
    return NewtonResult(profile=profile, residual=res_norm,
                        iterations=iterations, tail=tail)


def _regrid_profile(profile, n_new, s0_new):
    # polynomial re-interpolation in s; outside the old domain the profile
    # is numerically zero
    grid_new = cheb_grid(n_new, s0_new)
    coeffs = cheb_coeffs(profile.values)
    l_old = 2.0 * grid_new.s_nodes / profile.grid.s0 - 1.0
    inside = l_old <= 1.0
    values = np.zeros(grid_new.n + 1)
    values[inside] = cheb_eval(coeffs, l_old[inside])
    values[0] = 0.0
    return RadialProfile(grid=grid_new, values=values, omega=profile.omega)


def continuation(plan, params, controls=None, grid=None, seed=None):
    """Solve along the frequency path, seeding each solve with the previous
    profile.

    Returns the list of NewtonResult in path order. On a failed step the
    raised NoConvergenceError carries the partial list and the failing
    frequency.
    """
    controls = controls if controls is not None else SolverControls()
    if grid is None:
        grid = seed.grid if seed is not None else cheb_grid(200, 1e3)
    current = seed if seed is not None else default_seed(grid)
    omega_max = params.omega_star
    results = []
    for index, omega in enumerate(plan.omega_values):
        if not 0.0 < omega < omega_max:
            raise InvalidParameterError(
                f"continuation frequency {omega} outside (0, {omega_max})")
        ctl = plan.overrides.get(index, controls)
        try:
            result = newton_relaxed(current, params.with_omega(omega), ctl)
            if plan.regrid_tail_bound is not None:
                tail, peak = _profile_tail(result.profile.values)
                if tail > plan.regrid_tail_bound * peak:
                    refined = _regrid_profile(
                        result.profile,
                        result.profile.grid.n * plan.regrid_n_factor,
                        result.profile.grid.s0 * plan.regrid_s0_factor)
                    result = newton_relaxed(refined, params.with_omega(omega),
                                            ctl)
        except NoConvergenceError as exc:
            raise NoConvergenceError(
                f"continuation failed at omega={omega}: {exc}",
                partial=results, failed_omega=omega) from exc
        results.append(result)
        current = result.profile
    return results


def semilinear_groundstate(params, controls=None, grid=None, seed=None):
    """Ground state of the semilinear comparison problem
    -Delta psi + psi - psi^(2 alpha + 1) = 0 (radial, in s = r^2).

    The saturation clamp does not apply (the profile exceeds 1); alpha must
    be energy-subcritical for the dimension (alpha < 2/(d - 2) for d >= 3).
    Its squared L2 norm is the coefficient of the small-frequency
    mass power law.
    """
    alpha, dim = params.alpha, params.dim
    if dim >= 3 and alpha >= 2.0 / (dim - 2):
        raise InvalidParameterError(
            f"alpha={alpha} is not subcritical for dim={dim}")
    controls = controls if controls is not None else SolverControls(
        mu=0.5, tol=1e-10, max_iter=800, clamp=False)
    if grid is None:
        # steeper profiles (larger alpha) want the tighter domain more than
        # the wide one; e^(-2 r) at r = 20 is far below the residual tol
        grid = cheb_grid(800, 400.0)
    if seed is None:
        values = _shooting_seed(alpha, dim, grid)
        seed = RadialProfile(grid=grid, values=values, omega=None)

    disc = _disc(grid, dim)

    def res_fn(psi):
        # (psi^2)^alpha stays real if an intermediate iterate dips below 0
        return (disc.lap @ psi - psi + (psi * psi) ** alpha * psi)[1:]

    def jac_fn(psi):
        jac = disc.lap.copy()
        jac[np.diag_indices_from(jac)] += (
            -1.0 + (2 * alpha + 1) * (psi * psi) ** alpha)
        return jac[1:, 1:]

    phi0 = np.array(seed.values, dtype=float)
    phi0[0] = 0.0
    # amplitude ceiling keeps the odd-power nonlinearity from running away
    ceiling = 1.5 * float(np.max(np.abs(phi0)))
    psi, res_norm, iterations = _newton_core(phi0, res_fn, jac_fn, controls,
                                             upper=ceiling, backtrack=True)
    if np.max(np.abs(psi)) < 1e-3:
        raise NoConvergenceError(
            "iteration collapsed to the trivial zero solution")
    tail, _ = _profile_tail(psi)
    profile = RadialProfile(grid=grid, values=psi, omega=None)
    return NewtonResult(profile=profile, residual=res_norm,
                        iterations=iterations, tail=tail)


@lru_cache(maxsize=8)
def _shoot_semilinear(alpha, dim, r_max):
    """Bisect the center value of the decaying radial solution of
    psi'' + (d-1)/r psi' - psi + |psi|^(2 alpha) psi = 0.

    Returns (center value, dense trajectory, radius where integration
    stopped). The decaying orbit is a separatrix: center values above it
    drive psi through zero, values below make psi' turn positive, which
    gives the bisection its bracket.
    """

    def rhs(r, y):
        psi, dpsi = y
        return [dpsi,
                -(dim - 1) / r * dpsi + psi - np.abs(psi) ** (2 * alpha) * psi]

    def integrate(p, dense):
        r0 = 1e-8
        curv = (p - p ** (2 * alpha + 1)) / (2.0 * dim)
        y0 = [p + curv * r0 * r0, 2.0 * curv * r0]

        def cross(r, y):
            return y[0]

        cross.terminal = True
        cross.direction = -1.0

        def turn(r, y):
            return y[1]

        turn.terminal = True
        turn.direction = 1.0

        return solve_ivp(rhs, (r0, r_max), y0, method="DOP853",
                         rtol=1e-12, atol=1e-14, events=[cross, turn],
                         dense_output=dense)

    def classify(p):
        sol = integrate(p, False)
        if sol.t_events[0].size:
            return "crossed"
        if sol.t_events[1].size:
            return "turned"
        return "decayed"

    # below the zero-kinetic-energy amplitude psi cannot reach zero at all
    lo = (alpha + 1.0) ** (1.0 / (2.0 * alpha))
    hi = 1.5 * lo
    while classify(hi) != "crossed":
        hi *= 1.5
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if classify(mid) == "crossed":
            hi = mid
        else:
            lo = mid
    p = 0.5 * (lo + hi)
    sol = integrate(p, True)
    return p, sol.sol, float(sol.t[-1])


def _shooting_seed(alpha, dim, grid):
    """Sample the shooting trajectory on the grid nodes (zero beyond the
    radius where the bisected trajectory leaves the decaying branch)."""
    p, traj, r_end = _shoot_semilinear(alpha, dim, min(45.0, np.sqrt(grid.s0)))
    r = np.sqrt(np.maximum(grid.s_nodes, 0.0))
    values = np.zeros_like(r)
    inside = (r > 1e-8) & (r < r_end)
    values[inside] = traj(r[inside])[0]
    values[r <= 1e-8] = p
    np.clip(values, 0.0, None, out=values)
    values[0] = 0.0
    return values
