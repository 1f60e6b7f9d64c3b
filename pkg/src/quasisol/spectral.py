"""Spectral infrastructure.

Chebyshev collocation on l in [-1, 1] (nodes, differentiation matrix,
coefficients via fast cosine transform, Clenshaw-Curtis quadrature, and a
weighted quadrature variant for radial measures), plus periodic Fourier
differentiation on equispaced grids.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.fft import dct, fft, ifft

from .errors import InvalidParameterError

__all__ = [
    "ChebGrid",
    "Fourier1DGrid",
    "cheb_grid",
    "cheb_coeffs",
    "cheb_eval",
    "tail_estimate",
    "clenshaw_curtis",
    "radial_weights",
    "fourier_grid",
    "fourier_diff",
]


@dataclass(frozen=True, eq=False)
class ChebGrid:
    """Chebyshev collocation grid on [-1, 1] mapped to s in [0, s0].

    Nodes are l_k = cos(k pi / n), k = 0..n, decreasing from 1 to -1, so
    s_nodes = (s0/2)(1 + l) runs from s0 down to 0 (the origin is the last
    node). `diff1` differentiates with respect to l; the derivative with
    respect to s is (2/s0) * diff1. `weights` are Clenshaw-Curtis weights
    for the unit measure dl. All arrays are read-only.
    """

    n: int
    s0: float
    l_nodes: np.ndarray
    s_nodes: np.ndarray
    diff1: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True, eq=False)
class Fourier1DGrid:
    """Equispaced periodic grid x in lx*[-pi, pi) with nx a power of two.

    `wavenumbers` holds the integer FFT frequencies divided by lx, in
    standard FFT ordering, so multiplication by (i*k)**order in frequency
    space differentiates.
    """

    nx: int
    lx: float
    x_nodes: np.ndarray
    wavenumbers: np.ndarray


def cheb_grid(n, s0):
    """Build an (n+1)-point Chebyshev collocation grid.

    Parameters
    ----------
    n : int
        Polynomial degree; the grid has n+1 nodes cos(k pi / n).
    s0 : float
        Outer boundary of the mapped coordinate s = (s0/2)(1 + l).

    Returns
    -------
    ChebGrid

    Notes
    -----
    The differentiation matrix uses the closed-form collocation entries
    with the diagonal from the negative row-sum, which keeps roundoff
    under control for n of order 1000.
    """
    n = int(n)
    if n < 1:
        raise InvalidParameterError(f"polynomial degree must be >= 1, got {n}")
    if not s0 > 0:
        raise InvalidParameterError(f"outer boundary s0 must be positive, got {s0}")
    k = np.arange(n + 1)
    l_nodes = np.cos(np.pi * k / n)
    l_nodes[0] = 1.0
    l_nodes[-1] = -1.0

    c = np.ones(n + 1)
    c[0] = c[-1] = 2.0
    cs = c * (-1.0) ** k
    dl = l_nodes[:, None] - l_nodes[None, :]
    np.fill_diagonal(dl, 1.0)
    diff1 = np.outer(cs, 1.0 / cs) / dl
    np.fill_diagonal(diff1, 0.0)
    np.fill_diagonal(diff1, -diff1.sum(axis=1))

    s_nodes = (s0 / 2.0) * (1.0 + l_nodes)
    s_nodes[-1] = 0.0

    weights = _weights_from_moments(_unit_moments(n))

    grid = ChebGrid(n=n, s0=float(s0), l_nodes=l_nodes, s_nodes=s_nodes,
                    diff1=diff1, weights=weights)
    for arr in (grid.l_nodes, grid.s_nodes, grid.diff1, grid.weights):
        arr.flags.writeable = False
    return grid


def cheb_coeffs(values):
    """Chebyshev coefficients a_0..a_n interpolating samples on cos(k pi/n).

    The result solves sum_m a_m T_m(l_k) = values_k and is computed with a
    type-1 discrete cosine transform in O(n log n).
    """
    v = np.asarray(values)
    if v.ndim != 1 or v.size < 2:
        raise InvalidParameterError("need a 1-d sample vector of length >= 2")
    if np.iscomplexobj(v):
        return cheb_coeffs(v.real) + 1j * cheb_coeffs(v.imag)
    n = v.size - 1
    a = dct(v, type=1) / n
    a[0] /= 2.0
    a[-1] /= 2.0
    return a


def cheb_eval(coeffs, l):
    """Evaluate sum_m coeffs_m T_m(l)."""
    return np.polynomial.chebyshev.chebval(l, coeffs)


def tail_estimate(coeffs, fraction=0.1):
    """Resolution estimate: max |a_m| over the trailing fraction of indices."""
    a = np.asarray(coeffs)
    k = max(1, int(round(fraction * a.size)))
    return float(np.max(np.abs(a[-k:])))


def clenshaw_curtis(values, grid):
    """Integral of the interpolant over [-1, 1]: sum of values * weights."""
    v = np.asarray(values)
    if v.shape != grid.weights.shape:
        raise InvalidParameterError(
            f"expected {grid.weights.size} samples, got {v.size}")
    return float(np.dot(grid.weights, v))


def radial_weights(grid, dim):
    """Quadrature weights against the measure (1 + l)^(dim/2 - 1) dl.

    Returns w with sum(w * f(l_nodes)) equal to the integral of
    f(l) (1 + l)^(dim/2 - 1) over [-1, 1], exact for polynomials f of
    degree <= n. This is the l-space form of the radial measure
    s^(dim/2 - 1) ds; the half-integer power for odd dim would otherwise
    reduce plain Clenshaw-Curtis to algebraic accuracy.
    """
    if int(dim) != dim or dim < 2:
        raise InvalidParameterError(f"dim must be an integer >= 2, got {dim}")
    w = _weights_from_moments(_endpoint_weight_moments(grid.n, int(dim)))
    w.flags.writeable = False
    return w


def _weights_from_moments(mu):
    # Quadrature weights from modified moments mu_m = int T_m(l) w(l) dl:
    # w_k = dct1(mu)_k / (n * c_k) with c = 2 at the endpoints, 1 inside.
    n = mu.size - 1
    w = dct(mu, type=1) / n
    w[0] /= 2.0
    w[-1] /= 2.0
    return w


def _unit_moments(n):
    # int T_m(l) dl = 2/(1 - m^2) for even m, 0 for odd m
    m = np.arange(n + 1)
    mu = np.zeros(n + 1)
    even = m % 2 == 0
    mu[even] = 2.0 / (1.0 - m[even].astype(float) ** 2)
    return mu


def _sin_integral_quarter(c):
    # int_0^{pi/2} sin(c u) du for integer c
    if c == 0:
        return 0.0
    return (1.0 - (1.0, 0.0, -1.0, 0.0)[c % 4]) / c


def _endpoint_weight_moments(n, dim):
    # mu_m = int_{-1}^{1} T_m(l) (1+l)^(dim/2-1) dl. With l = cos(2u) this
    # becomes 2^(2-dim/2)... reduced to finite sums of int sin(c u) du over
    # [0, pi/2] after expanding cos^q(u) sin(u) cos(2mu), q = dim - 1.
    q = dim - 1
    binom = [math.comb(q, j) for j in range(q + 1)]
    pref = 2.0 ** (-dim / 2.0)
    mu = np.empty(n + 1)
    for m in range(n + 1):
        acc = 0.0
        for j in range(q + 1):
            a = 1 + q - 2 * j
            b = 1 - q + 2 * j
            acc += binom[j] * (
                _sin_integral_quarter(a + 2 * m)
                + _sin_integral_quarter(a - 2 * m)
                + _sin_integral_quarter(b + 2 * m)
                + _sin_integral_quarter(b - 2 * m)
            )
        mu[m] = pref * acc
    return mu


def fourier_grid(nx, lx):
    """Build a periodic grid on lx*[-pi, pi) with nx points.

    nx must be a power of two and at least 4.
    """
    nx = int(nx)
    if nx < 4 or nx & (nx - 1):
        raise InvalidParameterError(f"nx must be a power of two >= 4, got {nx}")
    if not lx > 0:
        raise InvalidParameterError(f"domain scale lx must be positive, got {lx}")
    x_nodes = lx * (-np.pi + 2.0 * np.pi * np.arange(nx) / nx)
    wavenumbers = np.fft.fftfreq(nx, d=1.0 / nx) / lx
    grid = Fourier1DGrid(nx=nx, lx=float(lx), x_nodes=x_nodes,
                         wavenumbers=wavenumbers)
    for arr in (grid.x_nodes, grid.wavenumbers):
        arr.flags.writeable = False
    return grid


def fourier_diff(field, grid, order=1):
    """Spectral derivative of periodic samples.

    Parameters
    ----------
    field : array_like
        Complex samples on grid.x_nodes.
    grid : Fourier1DGrid
    order : {1, 2}
        Derivative order; multiplication by (i k)^order in frequency space.
        The unsigned Nyquist mode is zeroed for the odd order.
    """
    if order not in (1, 2):
        raise InvalidParameterError(f"derivative order must be 1 or 2, got {order}")
    f = np.asarray(field, dtype=complex)
    if f.shape != grid.x_nodes.shape:
        raise InvalidParameterError(
            f"expected {grid.nx} samples, got {f.size}")
    mult = (1j * grid.wavenumbers) ** order
    if order == 1:
        mult = mult.copy()
        mult[grid.nx // 2] = 0.0
    return ifft(mult * fft(f))
