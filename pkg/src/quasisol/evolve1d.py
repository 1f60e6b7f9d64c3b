"""Pseudospectral time evolution on a periodic 1D domain.

The field obeys i dphi/dt = -d/dx(phi_x / den) + alpha |phi|^(2 alpha - 2)
|phi_x|^2 phi / den^2 - |phi|^(2 alpha) phi with den = 1 - |phi|^(2 alpha);
spatial derivatives are Fourier, time stepping is classical fourth-order
Runge-Kutta with a fixed step, and runs abort once the relative energy
drift delta exceeds 1e-3.
"""

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .errors import (
    AccuracyAbortError,
    DenominatorBlowupError,
    InvalidParameterError,
)
from .model import Field1D, ModelParams, energy_1d, mass_1d, soliton_1d, \
    soliton_max
from .spectral import fourier_diff, fourier_grid

__all__ = [
    "Run1DConfig",
    "Diagnostics",
    "rhs_1d",
    "rk4_step",
    "evolve_1d",
    "perturbed_soliton_1d",
]


@dataclass(frozen=True)
class Run1DConfig:
    """Parameters of one periodic 1D run.

    lam scales soliton initial data (the lambda of the perturbation
    experiments); lx scales the domain lx*[-pi, pi); snapshot_stride = 0
    disables snapshots, otherwise it must divide nt.
    """

    alpha: int
    omega: float
    lam: float = 1.0
    lx: float = 30.0
    nx: int = 4096
    tmax: float = 10.0
    nt: int = 100000
    snapshot_stride: int = 0

    def __post_init__(self):
        if self.nt < 1:
            raise InvalidParameterError(f"nt must be >= 1, got {self.nt}")
        if not self.tmax > 0:
            raise InvalidParameterError("tmax must be positive")
        if self.snapshot_stride < 0 or (
                self.snapshot_stride and self.nt % self.snapshot_stride):
            raise InvalidParameterError(
                "snapshot_stride must be 0 or a positive divisor of nt")
        if self.omega is not None:
            peak = self.lam * soliton_max(
                ModelParams(alpha=self.alpha, dim=1, omega=self.omega))
            if peak >= 1.0:
                raise DenominatorBlowupError(
                    f"initial peak lam*max(phi) = {peak:g} reaches saturation")


@dataclass(frozen=True)
class Diagnostics:
    """Time series of conserved-quantity monitors.

    delta is the primary accuracy monitor |E(t)/E(0) - 1|; linf tracks
    max |phi|. All arrays share the length of times.
    """

    times: np.ndarray
    linf: np.ndarray
    mass: np.ndarray
    energy: np.ndarray
    delta: np.ndarray


def _saturation_gate(mod2alpha):
    top = float(np.max(mod2alpha))
    if top >= 1.0:
        raise DenominatorBlowupError(
            f"max |phi|^(2 alpha) = {top:g} >= 1; saturation reached")


def rhs_1d(field, alpha):
    """Time derivative of the field; the flux divergence is a literal
    outer spectral derivative of phi_x/den, not chain-rule expanded."""
    grid = field.grid
    phi = field.values
    mod_sq = phi.real ** 2 + phi.imag ** 2
    sat = mod_sq ** alpha
    _saturation_gate(sat)
    den = 1.0 - sat
    phi_x = fourier_diff(phi, grid, 1)
    div_flux = fourier_diff(phi_x / den, grid, 1)
    grad_sq = phi_x.real ** 2 + phi_x.imag ** 2
    quasi = alpha * mod_sq ** (alpha - 1) * grad_sq * phi / den ** 2
    return Field1D(grid=grid,
                   values=-1j * (-div_flux + quasi - sat * phi))


def rk4_step(field, h, alpha):
    """One classical Runge-Kutta step of size h."""
    grid = field.grid
    y = field.values
    k1 = rhs_1d(field, alpha).values
    k2 = rhs_1d(Field1D(grid, y + 0.5 * h * k1), alpha).values
    k3 = rhs_1d(Field1D(grid, y + 0.5 * h * k2), alpha).values
    k4 = rhs_1d(Field1D(grid, y + h * k3), alpha).values
    return Field1D(grid, y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


def perturbed_soliton_1d(alpha, omega, lam, grid):
    """Initial data lam * phi_omega(x) sampled on the periodic grid."""
    params = ModelParams(alpha=alpha, dim=1, omega=omega)
    if lam * soliton_max(params) >= 1.0:
        raise DenominatorBlowupError(
            "lam * soliton peak reaches the saturation bound 1")
    return Field1D(grid=grid,
                   values=lam * soliton_1d(params, grid.x_nodes) + 0.0j)


def evolve_1d(config, initial):
    """Integrate to tmax with nt fixed RK4 steps.

    Returns (Diagnostics, snapshots) with snapshots a list of
    (time, field values) taken every snapshot_stride steps (including
    t = 0 and the final time). Raises AccuracyAbortError carrying the
    partial records once delta = |E/E0 - 1| exceeds 1e-3.
    """
    grid = initial.grid
    h = config.tmax / config.nt
    alpha = config.alpha
    state = Field1D(grid, np.array(initial.values, dtype=complex))

    times = [0.0]
    linf = [float(np.max(np.abs(state.values)))]
    masses = [mass_1d(state)]
    energies = [energy_1d(state, alpha)]
    deltas = [0.0]
    e0 = energies[0]
    snapshots = []
    if config.snapshot_stride:
        snapshots.append((0.0, state.values.copy()))

    for step in range(1, config.nt + 1):
        state = rk4_step(state, h, alpha)
        t = step * h
        times.append(t)
        linf.append(float(np.max(np.abs(state.values))))
        masses.append(mass_1d(state))
        energies.append(energy_1d(state, alpha))
        deltas.append(abs(energies[-1] / e0 - 1.0) if e0 != 0.0 else 0.0)
        if config.snapshot_stride and step % config.snapshot_stride == 0:
            snapshots.append((t, state.values.copy()))
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


def _pack(times, linf, masses, energies, deltas):
    return Diagnostics(times=np.asarray(times), linf=np.asarray(linf),
                       mass=np.asarray(masses), energy=np.asarray(energies),
                       delta=np.asarray(deltas))
