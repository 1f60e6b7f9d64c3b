"""Radial time evolution in s = r^2 by Crank-Nicolson with Newton solves.

Writing phi = u + iv, the equation splits into du/dt = A[v], dv/dt = -A[u]
with the real-coefficient operator

    A[w] = -(Lap w)/den - c1 w_s + c0 w,      Lap = 4 s d2/ds2 + 2 dim d/ds,
    den = 1 - m^alpha,   m = u^2 + v^2,
    c1  = 4 alpha s m^(alpha-1) m_s / den^2,
    c0  = 4 alpha s m^(alpha-1) (u_s^2 + v_s^2) / den^2 - m^alpha,

i.e. the quasi-linear flux is chain-rule expanded in s. Each implicit step
solves the doubled real system with an analytic Jacobian; the Dirichlet row
at s0 is enforced by row replacement in residual and Jacobian alike.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from .errors import (
    AccuracyAbortError,
    DenominatorBlowupError,
    InvalidParameterError,
    NoConvergenceError,
)
from .evolve1d import Diagnostics, _pack
from .groundstate import ContinuationPlan, _disc, continuation
from .model import ModelParams, RadialField, energy_radial, mass_radial
from .spectral import cheb_grid

__all__ = [
    "SolitonStart",
    "GaussianStart",
    "RunRadialConfig",
    "Diagnostics",
    "rhs_radial",
    "cn_residual",
    "cn_newton_step",
    "evolve_radial",
    "gaussian_initial",
]


@dataclass(frozen=True)
class SolitonStart:
    """Initial data lam * phi_omega with phi_omega the radial ground state."""

    omega: float
    lam: float = 1.0

    def __post_init__(self):
        if not self.lam > 0:
            raise InvalidParameterError(
                f"scaling lam must be positive, got {self.lam}")


@dataclass(frozen=True)
class GaussianStart:
    """Initial data c * exp(-s/s1), real, rapidly decreasing."""

    c: float
    s1: float

    def __post_init__(self):
        if not 0.0 < self.c < 1.0:
            raise InvalidParameterError(
                f"amplitude c must lie in (0, 1), got {self.c}")
        if not self.s1 > 0:
            raise InvalidParameterError(
                f"width s1 must be positive, got {self.s1}")


@dataclass(frozen=True)
class RunRadialConfig:
    """Parameters of one radial Crank-Nicolson run.

    initial is a SolitonStart or GaussianStart descriptor; newton_tol is
    the sup-norm threshold on the step residual; snapshot_stride = 0
    disables snapshots, otherwise it must divide nt.
    """

    alpha: int
    dim: int
    initial: object
    h: float
    nt: int
    n: int = 200
    s0: float = 1e3
    newton_tol: float = 1e-10
    snapshot_stride: int = 0

    def __post_init__(self):
        if self.dim < 2:
            raise InvalidParameterError(
                f"radial evolution needs dim >= 2, got {self.dim}")
        ModelParams(alpha=self.alpha, dim=self.dim)
        if not self.h > 0:
            raise InvalidParameterError(f"time step must be positive, got {self.h}")
        if self.nt < 1:
            raise InvalidParameterError(f"nt must be >= 1, got {self.nt}")
        if not self.newton_tol > 0:
            raise InvalidParameterError("newton_tol must be positive")
        if self.snapshot_stride < 0 or (
                self.snapshot_stride and self.nt % self.snapshot_stride):
            raise InvalidParameterError(
                "snapshot_stride must be 0 or a positive divisor of nt")
        if isinstance(self.initial, SolitonStart):
            ModelParams(alpha=self.alpha, dim=self.dim,
                        omega=self.initial.omega).require_solitary()
        elif not isinstance(self.initial, GaussianStart):
            raise InvalidParameterError(
                "initial must be a SolitonStart or GaussianStart descriptor")


class _Coefficients:
    # pointwise fields shared by the rhs and the Jacobian; raises on
    # saturation so every evaluation path is gated
    def __init__(self, u, v, u_s, v_s, s, alpha):
        m = u * u + v * v
        sat = m ** alpha
        top = float(np.max(sat))
        if top >= 1.0:
            raise DenominatorBlowupError(
                f"max |phi|^(2 alpha) = {top:g} >= 1; saturation reached")
        self.m = m
        self.sat = sat
        self.inv = 1.0 / (1.0 - sat)
        self.inv2 = self.inv * self.inv
        self.m_am1 = m ** (alpha - 1)
        self.m_s = 2.0 * (u * u_s + v * v_s)
        self.g = u_s * u_s + v_s * v_s
        front = 4.0 * alpha * s * self.m_am1 * self.inv2
        self.c1 = front * self.m_s
        self.c0 = front * self.g - sat


def _apply_a(w, w_s, coeff, disc):
    return -(disc.lap @ w) * coeff.inv - coeff.c1 * w_s + coeff.c0 * w


def rhs_radial(field, params):
    """Time derivative (du/dt, dv/dt) = (A[v], -A[u]) of the radial field.

    The Dirichlet value at s0 is held at 0. Raises denominator-blowup at
    saturation.
    """
    grid = field.grid
    disc = _disc(grid, params.dim)
    u = np.asarray(field.re, dtype=float)
    v = np.asarray(field.im, dtype=float)
    u_s = disc.d1s @ u
    v_s = disc.d1s @ v
    coeff = _Coefficients(u, v, u_s, v_s, grid.s_nodes, params.alpha)
    du = _apply_a(v, v_s, coeff, disc)
    dv = -_apply_a(u, u_s, coeff, disc)
    du[0] = 0.0
    dv[0] = 0.0
    return RadialField(grid=grid, re=du, im=dv)


def _require_same_grid(a, b):
    if a.grid is not b.grid and (a.grid.n != b.grid.n
                                 or a.grid.s0 != b.grid.s0):
        raise InvalidParameterError("fields must live on the same grid")


def _cn_residual_arrays(u, v, u0, v0, f0u, f0v, h, alpha, disc):
    u_s = disc.d1s @ u
    v_s = disc.d1s @ v
    coeff = _Coefficients(u, v, u_s, v_s, disc.grid.s_nodes, alpha)
    ru = u - u0 - 0.5 * h * (f0u + _apply_a(v, v_s, coeff, disc))
    rv = v - v0 - 0.5 * h * (f0v - _apply_a(u, u_s, coeff, disc))
    ru[0] = u[0]
    rv[0] = v[0]
    return np.concatenate((ru, rv))


def cn_residual(phi_new, phi_old, h, params):
    """Crank-Nicolson step residual, stacked as (re, im) real vectors.

    phi_new - phi_old - (h/2)(F(phi_old) + F(phi_new)) with the rows at
    s0 replaced by the Dirichlet values of phi_new.
    """
    _require_same_grid(phi_new, phi_old)
    disc = _disc(phi_new.grid, params.dim)
    f_old = rhs_radial(phi_old, params)
    return _cn_residual_arrays(
        np.asarray(phi_new.re, dtype=float),
        np.asarray(phi_new.im, dtype=float),
        np.asarray(phi_old.re, dtype=float),
        np.asarray(phi_old.im, dtype=float),
        f_old.re, f_old.im, h, params.alpha, disc)


def _cn_jacobian(u, v, h, alpha, disc):
    # d(residual)/d(u, v) at the new iterate; (2 nn) x (2 nn), dense.
    # Pointwise partial derivative fields: for x in {u, v},
    #   d(1/den)/dx = x * dinv,  dc1/dx = x * bm * m_s + x_s * p,
    #   dc1/dx_s = x * p,        dc0/dx = x * (bm * g - t),
    #   dc0/dx_s = x_s * p,
    # with the slope partials entering through an extra D factor.
    grid = disc.grid
    s = grid.s_nodes
    dmat = disc.d1s
    lap = disc.lap
    nn = u.size

    u_s = dmat @ u
    v_s = dmat @ v
    coeff = _Coefficients(u, v, u_s, v_s, s, alpha)
    lu_vec = lap @ u
    lv_vec = lap @ v

    inv3 = coeff.inv2 * coeff.inv
    dinv = 2.0 * alpha * coeff.m_am1 * coeff.inv2
    p = 8.0 * alpha * s * coeff.m_am1 * coeff.inv2
    r = 16.0 * alpha ** 2 * s * coeff.m ** (2 * alpha - 2) * inv3
    if alpha > 1:
        q = 8.0 * alpha * (alpha - 1.0) * s * coeff.m ** (alpha - 2) \
            * coeff.inv2
    else:
        q = np.zeros(nn)
    bm = (q + r) * coeff.m_s
    cm = (q + r) * coeff.g - 2.0 * alpha * coeff.m_am1

    half = 0.5 * h
    a_op = -(coeff.inv[:, None] * lap) - coeff.c1[:, None] * dmat
    a_op[np.diag_indices(nn)] += coeff.c0

    def m_block(lw, dw, w, x, x_s):
        # derivative of A[w] with respect to x, w held fixed
        diag_part = -lw * (x * dinv) - dw * (x * bm + x_s * p) \
            + w * (x * cm)
        slope_part = -dw * (x * p) + w * (x_s * p)
        block = slope_part[:, None] * dmat
        block[np.diag_indices(nn)] += diag_part
        return block

    jac = np.zeros((2 * nn, 2 * nn))
    jac[:nn, :nn] = -half * m_block(lv_vec, v_s, v, u, u_s)
    jac[:nn, :nn][np.diag_indices(nn)] += 1.0
    jac[:nn, nn:] = -half * (a_op + m_block(lv_vec, v_s, v, v, v_s))
    jac[nn:, :nn] = half * (a_op + m_block(lu_vec, u_s, u, u, u_s))
    jac[nn:, nn:] = half * m_block(lu_vec, u_s, u, v, v_s)
    jac[nn:, nn:][np.diag_indices(nn)] += 1.0

    jac[0, :] = 0.0
    jac[0, 0] = 1.0
    jac[nn, :] = 0.0
    jac[nn, nn] = 1.0
    return jac


def cn_newton_step(phi_old, h, params, tol=1e-10, max_iter=25):
    """One Crank-Nicolson step solved by Newton on the doubled system.

    The initial iterate is phi_old; iteration stops once the residual
    sup-norm drops below tol. The LU factorization of the first Jacobian
    is kept for the whole step only when the first iteration contracts
    the residual at least tenfold, otherwise every iteration refactors.
    """
    grid = phi_old.grid
    disc = _disc(grid, params.dim)
    alpha = params.alpha
    nn = grid.n + 1
    u0 = np.asarray(phi_old.re, dtype=float)
    v0 = np.asarray(phi_old.im, dtype=float)
    f_old = rhs_radial(phi_old, params)

    u, v = u0.copy(), v0.copy()
    res = _cn_residual_arrays(u, v, u0, v0, f_old.re, f_old.im, h, alpha,
                              disc)
    res_norm = float(np.max(np.abs(res)))
    lu = None
    reuse = None
    for _ in range(max_iter):
        if res_norm < tol:
            return RadialField(grid=grid, re=u, im=v)
        if lu is None:
            lu = lu_factor(_cn_jacobian(u, v, h, alpha, disc))
        step = lu_solve(lu, -res)
        u = u + step[:nn]
        v = v + step[nn:]
        res = _cn_residual_arrays(u, v, u0, v0, f_old.re, f_old.im, h,
                                  alpha, disc)
        new_norm = float(np.max(np.abs(res)))
        if reuse is None:
            reuse = new_norm <= 0.1 * res_norm
        if not reuse:
            lu = None
        res_norm = new_norm
    if res_norm < tol:
        return RadialField(grid=grid, re=u, im=v)
    raise NoConvergenceError(
        f"implicit step stalled at residual {res_norm:g} "
        f"after {max_iter} iterations (h = {h:g})")


def gaussian_initial(c, s1, grid):
    """Real seed c * exp(-s/s1) with the boundary value pinned to 0."""
    if not 0.0 < c < 1.0:
        raise InvalidParameterError(
            f"amplitude c must lie in (0, 1), got {c}")
    if not s1 > 0:
        raise InvalidParameterError(f"width s1 must be positive, got {s1}")
    values = c * np.exp(-grid.s_nodes / s1)
    values[0] = 0.0
    return RadialField(grid=grid, re=values, im=np.zeros_like(values))


def _soliton_initial(config, grid, controls):
    # ground state at the requested frequency, scaled by lam; reached by
    # continuation from omega = 0.1 where the standard seed converges
    start = config.initial
    target = start.omega
    base = 0.1
    if abs(target - base) < 1e-12:
        path = (target,)
    else:
        num = max(2, int(math.ceil(abs(target - base) / 0.02)) + 1)
        path = tuple(np.linspace(base, target, num))
    params = ModelParams(alpha=config.alpha, dim=config.dim)
    results = continuation(ContinuationPlan(omega_values=path), params,
                           controls=controls, grid=grid)
    values = start.lam * results[-1].profile.values
    top = float(np.max(np.abs(values)))
    if top >= 1.0:
        raise DenominatorBlowupError(
            f"lam * ground-state peak = {top:g} reaches saturation")
    return RadialField(grid=grid, re=values, im=np.zeros_like(values))


def evolve_radial(config, initial=None, controls=None):
    """Integrate nt Crank-Nicolson steps of size h.

    Returns (Diagnostics, snapshots) exactly as evolve_1d does. initial
    overrides the config descriptor with a prepared RadialField on the
    config grid; controls tune the stationary solver behind a soliton
    descriptor. A failed step re-raises with the partial records
    attached; relative energy drift above 1e-3 aborts the run.
    """
    if initial is not None:
        if initial.grid.n != config.n or initial.grid.s0 != config.s0:
            raise InvalidParameterError(
                "initial field does not match the configured grid")
        grid = initial.grid
    else:
        grid = cheb_grid(config.n, config.s0)
        if isinstance(config.initial, GaussianStart):
            initial = gaussian_initial(config.initial.c, config.initial.s1,
                                       grid)
        else:
            initial = _soliton_initial(config, grid, controls)
    params = ModelParams(alpha=config.alpha, dim=config.dim)
    state = RadialField(grid=grid,
                        re=np.array(initial.re, dtype=float),
                        im=np.array(initial.im, dtype=float))
    top = float(np.sqrt(np.max(state.modulus_sq())))
    if top >= 1.0:
        raise DenominatorBlowupError(
            f"initial max modulus = {top:g} reaches saturation")

    h = config.h
    times = [0.0]
    linf = [top]
    masses = [mass_radial(state, params)]
    energies = [energy_radial(state, params)]
    deltas = [0.0]
    e0 = energies[0]
    snapshots = []
    if config.snapshot_stride:
        snapshots.append((0.0, state.re + 1j * state.im))

    for step in range(1, config.nt + 1):
        try:
            state = cn_newton_step(state, h, params, tol=config.newton_tol)
        except (NoConvergenceError, DenominatorBlowupError) as exc:
            raise NoConvergenceError(
                f"step {step} (t = {step * h:g}) failed: {exc}",
                partial={
                    "diagnostics": _pack(times, linf, masses, energies,
                                         deltas),
                    "snapshots": snapshots,
                }) from exc
        t = step * h
        times.append(t)
        linf.append(float(np.sqrt(np.max(state.modulus_sq()))))
        masses.append(mass_radial(state, params))
        energies.append(energy_radial(state, params))
        deltas.append(abs(energies[-1] / e0 - 1.0) if e0 != 0.0 else 0.0)
        if config.snapshot_stride and step % config.snapshot_stride == 0:
            snapshots.append((t, state.re + 1j * state.im))
        if deltas[-1] > 1e-3 or not np.isfinite(deltas[-1]):
            raise AccuracyAbortError(
                f"energy drift delta = {deltas[-1]:.3e} exceeded 1e-3 at "
                f"t = {t:g}",
                diagnostics={
                    "diagnostics": _pack(times, linf, masses, energies,
                                         deltas),
                    "snapshots": snapshots,
                })
    return _pack(times, linf, masses, energies, deltas), snapshots
