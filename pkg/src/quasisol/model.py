"""Problem definition for the saturating quasi-linear Schroedinger equation.

The evolution equation is

    i dphi/dt = -div( grad(phi) / (1 - |phi|^(2 alpha)) )
                + alpha |phi|^(2 alpha - 2) |grad(phi)|^2 phi
                  / (1 - |phi|^(2 alpha))^2
                - |phi|^(2 alpha) phi,

whose solitary waves phi(t, x) = exp(i omega t) phi_omega(x) exist for
0 < omega < 1/(alpha + 1). This module holds the parameter record, the
explicit 1D profile, field containers on both grid types, mass and energy
functionals, and the stationary identity used to validate solver output.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DenominatorBlowupError,
    InvalidParameterError,
    NoSolitaryWaveError,
)
from .spectral import ChebGrid, Fourier1DGrid, fourier_diff, radial_weights

__all__ = [
    "ModelParams",
    "Field1D",
    "RadialProfile",
    "RadialField",
    "omega_star",
    "soliton_1d",
    "soliton_max",
    "fit_omega_from_max",
    "rescale_ab",
    "energy_1d",
    "mass_1d",
    "energy_radial",
    "mass_radial",
    "stationary_residual_identity",
    "surface_area",
]


def omega_star(alpha):
    """Existence threshold 1/(alpha + 1) for solitary-wave frequencies."""
    if alpha < 1:
        raise InvalidParameterError(f"alpha must be >= 1, got {alpha}")
    return 1.0 / (alpha + 1.0)


@dataclass(frozen=True)
class ModelParams:
    """Problem triple (alpha, dim, omega).

    alpha is the positive integer nonlinearity exponent, dim the spatial
    dimension, omega the solitary-wave frequency (may be None for
    operations that scan over omega). The derived threshold
    omega_star = 1/(alpha + 1) is exposed as a property.
    """

    alpha: int
    dim: int
    omega: float | None = None

    def __post_init__(self):
        if int(self.alpha) != self.alpha or self.alpha < 1:
            raise InvalidParameterError(
                f"alpha must be a positive integer, got {self.alpha}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidParameterError(
                f"dim must be a positive integer, got {self.dim}")

    @property
    def omega_star(self):
        return omega_star(self.alpha)

    def with_omega(self, omega):
        """Copy of the parameters with another frequency."""
        return replace(self, omega=float(omega))

    def require_solitary(self):
        """Check 0 < omega < omega_star, raising otherwise."""
        if self.omega is None or self.omega <= 0:
            raise InvalidParameterError(
                f"frequency must be positive, got {self.omega}")
        if self.omega >= self.omega_star:
            raise NoSolitaryWaveError(
                f"no solitary wave at omega={self.omega} >= "
                f"omega*={self.omega_star} (alpha={self.alpha})")


@dataclass(eq=False)
class Field1D:
    """Complex field sampled on a periodic Fourier grid."""

    grid: Fourier1DGrid
    values: np.ndarray


@dataclass(eq=False)
class RadialProfile:
    """Real radial profile phi(s) on a Chebyshev grid, solving frequency omega."""

    grid: ChebGrid
    values: np.ndarray
    omega: float | None = None


@dataclass(eq=False)
class RadialField:
    """Complex radial state on a Chebyshev grid, stored as real/imag parts."""

    grid: ChebGrid
    re: np.ndarray
    im: np.ndarray

    def modulus_sq(self):
        return self.re ** 2 + self.im ** 2


def soliton_1d(params, x):
    """Explicit 1D solitary-wave profile evaluated at positions x.

    phi(x) = (1 + (omega*/omega - 1) cosh^2(alpha sqrt(omega) x))^(-1/(2 alpha)),
    even and strictly decreasing in |x| with peak (omega/omega*)^(1/(2 alpha)).
    Evaluated in log form so that large |x| underflows cleanly to 0 instead
    of overflowing cosh; values below 1e-300 are clamped to 0.
    """
    params.require_solitary()
    alpha, om = params.alpha, params.omega
    beta = params.omega_star / om - 1.0
    y = alpha * math.sqrt(om) * np.abs(np.asarray(x, dtype=float))
    # log(cosh y) without overflow, valid for y >= 0
    log_cosh = y + np.log1p(np.exp(-2.0 * y)) - math.log(2.0)
    t = math.log(beta) + 2.0 * log_cosh
    log_phi = -np.logaddexp(0.0, t) / (2.0 * alpha)
    phi = np.exp(log_phi)
    phi = np.where(phi < 1e-300, 0.0, phi)
    return phi if phi.ndim else float(phi)


def soliton_max(params):
    """Peak value (omega/omega*)^(1/(2 alpha)) of the 1D profile."""
    params.require_solitary()
    return (params.omega / params.omega_star) ** (1.0 / (2.0 * params.alpha))


def fit_omega_from_max(peak, alpha):
    """Frequency whose 1D profile has the given peak: omega* peak^(2 alpha)."""
    if not 0.0 < peak < 1.0:
        raise InvalidParameterError(f"peak must lie in (0, 1), got {peak}")
    return omega_star(alpha) * peak ** (2.0 * alpha)


def rescale_ab(a, b):
    """Reduce the two-coupling stationary form to the one-parameter family.

    A profile solving the variant with gradient coupling a and frequency
    multiplier b equals the omega = b/a profile spatially rescaled by
    a^(-1/2). Returns (omega, scale).
    """
    if a <= 0 or b <= 0:
        raise InvalidParameterError(f"couplings must be positive, got a={a}, b={b}")
    return b / a, a ** -0.5


def _check_below_saturation(max_mod_sq):
    if max_mod_sq >= 1.0:
        raise DenominatorBlowupError(
            f"max |phi| = {math.sqrt(max_mod_sq)} >= 1; "
            "the saturating denominator vanished")


def mass_1d(field):
    """L2 mass of a periodic field by the rectangle rule."""
    dx = 2.0 * np.pi * field.grid.lx / field.grid.nx
    return float(np.sum(np.abs(field.values) ** 2) * dx)


def energy_1d(field, alpha):
    """Energy of a periodic 1D field.

    E = 1/2 int |phi_x|^2 / (1 - |phi|^(2 alpha)) dx
        - 1/(2(alpha+1)) int |phi|^(2 alpha + 2) dx,
    with the derivative spectral and integrals by the rectangle rule.
    """
    phi = field.values
    mod_sq = np.abs(phi) ** 2
    _check_below_saturation(mod_sq.max())
    den = 1.0 - mod_sq ** alpha
    dphi = fourier_diff(phi, field.grid, order=1)
    dx = 2.0 * np.pi * field.grid.lx / field.grid.nx
    kinetic = 0.5 * np.sum(np.abs(dphi) ** 2 / den) * dx
    potential = np.sum(mod_sq ** (alpha + 1)) * dx / (2.0 * (alpha + 1.0))
    return float(kinetic - potential)


def surface_area(dim):
    """Surface measure of the unit sphere in R^dim: 2 pi^(d/2) / Gamma(d/2)."""
    return 2.0 * math.pi ** (dim / 2.0) / math.gamma(dim / 2.0)


def _radial_parts(obj):
    # accept RadialProfile (real) or RadialField (re/im split)
    if isinstance(obj, RadialField):
        return obj.grid, obj.re, obj.im
    return obj.grid, np.asarray(obj.values, dtype=float), None


def mass_radial(obj, params):
    """L2 mass of a radial state over R^dim.

    Integrates |phi|^2 with the measure s^(d/2-1) ds / 2 per unit sphere
    area, using the endpoint-weighted Clenshaw-Curtis rule.
    """
    grid, re, im = _radial_parts(obj)
    mod_sq = re ** 2 if im is None else re ** 2 + im ** 2
    _check_below_saturation(mod_sq.max())
    w = radial_weights(grid, params.dim)
    shell = 0.5 * (grid.s0 / 2.0) ** (params.dim / 2.0)
    return float(surface_area(params.dim) * shell * np.dot(w, mod_sq))


def energy_radial(obj, params):
    """Energy of a radial state over R^dim.

    Same functional as energy_1d with |grad phi|^2 = 4 s |phi_s|^2 and the
    radial measure; phi_s is the mapped Chebyshev derivative (2/s0) diff1.
    """
    grid, re, im = _radial_parts(obj)
    mod_sq = re ** 2 if im is None else re ** 2 + im ** 2
    _check_below_saturation(mod_sq.max())
    alpha = params.alpha
    den = 1.0 - mod_sq ** alpha
    d1s = (2.0 / grid.s0) * grid.diff1
    grad_sq = 4.0 * grid.s_nodes * (
        (d1s @ re) ** 2 if im is None else (d1s @ re) ** 2 + (d1s @ im) ** 2)
    w = radial_weights(grid, params.dim)
    shell = 0.5 * (grid.s0 / 2.0) ** (params.dim / 2.0)
    kinetic = 0.5 * np.dot(w, grad_sq / den)
    potential = np.dot(w, mod_sq ** (alpha + 1)) / (2.0 * (alpha + 1.0))
    return float(surface_area(params.dim) * shell * (kinetic - potential))


def stationary_residual_identity(profile, params):
    """Sup-norm of spatial_operator(phi) + omega phi for a real radial profile.

    A solitary wave makes the spatial operator act as multiplication by
    -omega, so this vanishes (to solver tolerance) on converged profiles.
    The Dirichlet node at s0 is excluded. For a real profile the operator is

        -Delta(phi)/den - alpha phi^(2 alpha - 1) |grad phi|^2 / den^2
        - phi^(2 alpha + 1),

    with Delta = 4 s d2/ds2 + 2 d d/ds and |grad phi|^2 = 4 s phi_s^2.
    """
    grid = profile.grid
    phi = np.asarray(profile.values, dtype=float)
    alpha = params.alpha
    omega = params.omega if params.omega is not None else profile.omega
    mod_sq = phi ** 2
    _check_below_saturation(mod_sq.max())
    den = 1.0 - mod_sq ** alpha
    d1s = (2.0 / grid.s0) * grid.diff1
    dphi = d1s @ phi
    lap = 4.0 * grid.s_nodes * (d1s @ dphi) + 2.0 * params.dim * dphi
    grad_sq = 4.0 * grid.s_nodes * dphi ** 2
    op = (-lap / den
          - alpha * phi ** (2 * alpha - 1) * grad_sq / den ** 2
          - phi ** (2 * alpha + 1))
    return float(np.max(np.abs((op + omega * phi)[1:])))
