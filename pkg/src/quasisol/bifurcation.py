"""Mass/energy curves along the solitary-wave branch and their analysis.

For d = 1 the branch is explicit, so mass and energy reduce to
one-dimensional integrals evaluated by adaptive quadrature; for d >= 2 the
branch is traced by frequency continuation of the radial Newton solver.
Slope-based stability labels, the critical-frequency search, and the
divergence/power-law fits near the endpoints of (0, omega*) all operate on
the resulting (omega, M, E) records.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import (
    InsufficientWindowError,
    InvalidParameterError,
    NoConvergenceError,
    NoSignChangeError,
)
from .groundstate import ContinuationPlan, SolverControls, continuation
from .model import ModelParams, energy_radial, mass_radial, omega_star
from .spectral import cheb_grid

__all__ = [
    "BifurcationPoint",
    "AsymptoteFit",
    "mass_1d_reduced",
    "energy_1d_reduced",
    "sweep",
    "find_omega_c",
    "fit_asymptote_star",
    "fit_asymptote_zero",
    "mass_integrand",
    "mass_integrand_domega",
    "mass_integrand_domega2",
    "convexity_quadratic",
]

_QUAD_OPTS = dict(epsabs=1e-13, epsrel=1e-13, limit=200)


@dataclass(frozen=True)
class BifurcationPoint:
    """One (omega, mass, energy) record of a branch sweep.

    dmass_domega is the central finite difference over the sweep grid;
    stability follows the slope criterion (stable iff dM/domega > 0),
    with sweep endpoints labeled undetermined-endpoint since the central
    difference is not available there.
    """

    omega: float
    mass: float
    energy: float
    dmass_domega: float
    stability: str


@dataclass(frozen=True)
class AsymptoteFit:
    """Result of an asymptotic-law fit near an endpoint of (0, omega*).

    law is one of log-divergence-at-star, power-divergence-at-star,
    power-law-at-zero. For the power laws, mass ~ coefficient *
    (distance to endpoint)^exponent; for the log law the coefficient is
    the slope of mass against -ln(omega* - omega) and the exponent is 0.
    window is the (min, max) frequency range of the points used and
    residual the rms misfit in the fitted coordinates.
    """

    law: str
    coefficient: float
    exponent: float
    window: tuple
    residual: float


def _check_inside_branch(alpha, omega):
    ws = omega_star(alpha)
    if not 0.0 < omega < ws:
        raise InvalidParameterError(
            f"omega must lie in (0, {ws:g}) for alpha={alpha}, got {omega}")
    return ws


def mass_1d_reduced(alpha, omega):
    """L2 mass of the explicit 1D solitary wave, as a reduced integral.

    M = (2/alpha) omega^(1/alpha - 1/2) / omega*^(1/alpha)
        * int_0^inf (1+z^2)^(-1/alpha) ((1 - omega/omega*) + z^2)^(-1/2) dz.

    The integrand has a 1/sqrt knee of width eps = 1 - omega/omega* at the
    origin, which degenerates as omega -> omega*; z = sqrt(eps) sinh v
    absorbs it exactly on z <= 1. The z >= 1 piece maps to t = 1/z in
    [0, 1] with an algebraic endpoint weight t^(2/alpha - 1) handled by
    the weighted quadrature rule.
    """
    ws = _check_inside_branch(alpha, omega)
    eps = 1.0 - omega / ws
    inv_a = 1.0 / alpha
    pref = (2.0 / alpha) * omega ** (inv_a - 0.5) / ws ** inv_a
    v1 = float(np.arcsinh(1.0 / np.sqrt(eps)))
    near, _ = quad(lambda v: (1.0 + eps * np.sinh(v) ** 2) ** (-inv_a),
                   0.0, v1, **_QUAD_OPTS)
    tail, _ = quad(
        lambda t: (t * t + 1.0) ** (-inv_a) * (eps * t * t + 1.0) ** (-0.5),
        0.0, 1.0, weight="alg", wvar=(2.0 * inv_a - 1.0, 0.0), **_QUAD_OPTS)
    return pref * (near + tail)


def energy_1d_reduced(alpha, omega):
    """Energy of the explicit 1D solitary wave.

    In y = alpha sqrt(omega) x the saturation denominator cancels against
    the profile derivative, leaving two smooth integrals of
    g(y) = 1 + beta cosh^2 y with beta = omega*/omega - 1:

    E = (beta omega I_kin - I_pot/(alpha+1)) / (alpha sqrt(omega)),
    I_kin = int sinh^2 y g^(-1/alpha-1),  I_pot = int g^(-(alpha+1)/alpha).
    """
    ws = _check_inside_branch(alpha, omega)
    beta = ws / omega - 1.0
    inv_a = 1.0 / alpha
    cut = 30.0 * alpha  # integrands decay like e^(-2y/alpha)
    kin, _ = quad(
        lambda y: np.sinh(y) ** 2
        * (1.0 + beta * np.cosh(y) ** 2) ** (-inv_a - 1.0),
        0.0, cut, **_QUAD_OPTS)
    pot, _ = quad(
        lambda y: (1.0 + beta * np.cosh(y) ** 2) ** (-(alpha + 1.0) * inv_a),
        0.0, cut, **_QUAD_OPTS)
    return (beta * omega * kin - pot / (alpha + 1.0)) / (alpha * np.sqrt(omega))


def _label_points(omegas, masses, energies):
    """Assemble BifurcationPoints with central-difference slopes."""
    omegas = np.asarray(omegas, dtype=float)
    masses = np.asarray(masses, dtype=float)
    n = omegas.size
    slopes = np.empty(n)
    if n >= 2:
        slopes[0] = (masses[1] - masses[0]) / (omegas[1] - omegas[0])
        slopes[-1] = (masses[-1] - masses[-2]) / (omegas[-1] - omegas[-2])
    else:
        slopes[:] = np.nan
    if n >= 3:
        slopes[1:-1] = (masses[2:] - masses[:-2]) / (omegas[2:] - omegas[:-2])
    points = []
    for i in range(n):
        if i == 0 or i == n - 1:
            label = "undetermined-endpoint"
        else:
            label = "stable" if slopes[i] > 0.0 else "unstable"
        points.append(BifurcationPoint(
            omega=float(omegas[i]), mass=float(masses[i]),
            energy=float(energies[i]), dmass_domega=float(slopes[i]),
            stability=label))
    return points


def sweep(alpha, dim, omegas, controls=None, grid=None):
    """Mass/energy branch over a frequency grid inside (0, omega*).

    d = 1 uses the reduced closed-form integrals; d >= 2 traces the branch
    by continuation on the radial grid (default n=200, s0=1000). Solver
    failures propagate as NoConvergenceError whose partial attribute holds
    the BifurcationPoints completed before the failing frequency.
    """
    omegas = np.asarray(omegas, dtype=float)
    ws = omega_star(alpha)
    if omegas.size == 0:
        raise InvalidParameterError("empty frequency grid")
    if np.any(omegas <= 0.0) or np.any(omegas >= ws):
        raise InvalidParameterError(
            f"frequency grid must lie inside (0, {ws:g})")
    if dim == 1:
        masses = [mass_1d_reduced(alpha, w) for w in omegas]
        energies = [energy_1d_reduced(alpha, w) for w in omegas]
        return _label_points(omegas, masses, energies)

    if grid is None:
        grid = cheb_grid(200, 1000.0)
    controls = controls if controls is not None else SolverControls()
    params = ModelParams(alpha=alpha, dim=dim, omega=float(omegas[0]))
    plan = ContinuationPlan(omega_values=tuple(float(w) for w in omegas))
    try:
        results = continuation(plan, params, controls, grid=grid)
    except NoConvergenceError as exc:
        done = [r for r in exc.partial]
        masses, energies = _radial_mass_energy(done, alpha, dim)
        pts = _label_points(omegas[:len(done)], masses, energies)
        raise NoConvergenceError(
            str(exc), partial=pts, failed_omega=exc.failed_omega) from exc
    masses, energies = _radial_mass_energy(results, alpha, dim)
    return _label_points(omegas, masses, energies)


def _radial_mass_energy(results, alpha, dim):
    masses, energies = [], []
    for res in results:
        p = ModelParams(alpha=alpha, dim=dim, omega=res.profile.omega)
        masses.append(mass_radial(res.profile, p))
        energies.append(energy_radial(res.profile, p))
    return masses, energies


def find_omega_c(alpha, dim, bracket, controls=None, grid=None):
    """Frequency where the mass slope changes sign inside the bracket.

    d = 1 bisects the central-difference slope of the reduced mass
    (difference step 1e-6) until the bracket is narrower than 1e-6;
    d >= 2 sweeps a 25-point grid over the bracket and returns the
    midpoint of the sign-change cell. Raises NoSignChangeError when the
    slope has the same sign at both ends.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    ws = omega_star(alpha)
    delta = 1e-6
    if not (0.0 < lo < hi < ws):
        raise InvalidParameterError(
            f"bracket must be ordered inside (0, {ws:g})")
    if dim == 1:
        if lo <= 2.0 * delta or hi >= ws - 2.0 * delta:
            raise InvalidParameterError(
                "bracket too close to the branch endpoints for the "
                "finite-difference slope")

        def slope(w):
            return (mass_1d_reduced(alpha, w + delta)
                    - mass_1d_reduced(alpha, w - delta)) / (2.0 * delta)

        s_lo = slope(lo)
        if s_lo * slope(hi) > 0.0:
            raise NoSignChangeError(
                f"mass slope does not change sign over [{lo:g}, {hi:g}]")
        while hi - lo > 1e-6:
            mid = 0.5 * (lo + hi)
            if slope(mid) * s_lo < 0.0:
                hi = mid
            else:
                lo = mid
        return 0.5 * (lo + hi)

    omegas = np.linspace(lo, hi, 25)
    points = sweep(alpha, dim, omegas, controls=controls, grid=grid)
    slopes = [p.dmass_domega for p in points]
    for i in range(len(slopes) - 1):
        if slopes[i] * slopes[i + 1] < 0.0:
            return 0.5 * (points[i].omega + points[i + 1].omega)
    raise NoSignChangeError(
        f"mass slope does not change sign over [{lo:g}, {hi:g}]")


def _extract_curve(points):
    omegas, masses = [], []
    for p in points:
        if hasattr(p, "omega"):
            omegas.append(float(p.omega))
            masses.append(float(p.mass))
        else:
            w, m = p
            omegas.append(float(w))
            masses.append(float(m))
    return np.asarray(omegas), np.asarray(masses)


def _lstsq_line(x, y):
    coeffs, res, _, _ = np.linalg.lstsq(
        np.column_stack([x, np.ones_like(x)]), y, rcond=None)
    fit = coeffs[0] * x + coeffs[1]
    rms = float(np.sqrt(np.mean((y - fit) ** 2)))
    return float(coeffs[0]), float(coeffs[1]), rms


def fit_asymptote_star(points, alpha, dim):
    """Fit the mass divergence law as omega -> omega*.

    d = 1: least-squares slope of M against -ln(omega* - omega)
    (log-divergence law); d >= 2: log-log fit M ~ Gamma (omega*-omega)^e
    with e expected near -d. Requires at least 5 points whose distance to
    omega* spans 2 decades (d = 1) or 0.4 decades (d >= 2).
    """
    omegas, masses = _extract_curve(points)
    ws = omega_star(alpha)
    if omegas.size and (np.any(omegas <= 0.0) or np.any(omegas >= ws)):
        raise InvalidParameterError(
            f"fit window must lie strictly inside (0, {ws:g})")
    gap = ws - omegas
    need_decades = 2.0 if dim == 1 else 0.4
    if omegas.size < 5 or np.log10(gap.max() / gap.min()) < need_decades:
        raise InsufficientWindowError(
            f"need >= 5 points spanning >= {need_decades:g} decades of "
            "omega* - omega")
    window = (float(omegas.min()), float(omegas.max()))
    if dim == 1:
        slope, _, rms = _lstsq_line(-np.log(gap), masses)
        return AsymptoteFit(law="log-divergence-at-star", coefficient=slope,
                            exponent=0.0, window=window, residual=rms)
    expo, logc, rms = _lstsq_line(np.log(gap), np.log(masses))
    return AsymptoteFit(law="power-divergence-at-star",
                        coefficient=float(np.exp(logc)), exponent=expo,
                        window=window, residual=rms)


def fit_asymptote_zero(points, alpha, dim):
    """Fit the mass power law as omega -> 0.

    Log-log fit M ~ C omega^e; e is expected near 1/alpha - d/2, and for
    subcritical d >= 2 the coefficient approaches the squared L2 norm of
    the semilinear ground state. Requires at least 3 points spanning one
    decade of omega.
    """
    omegas, masses = _extract_curve(points)
    ws = omega_star(alpha)
    if omegas.size and (np.any(omegas <= 0.0) or np.any(omegas >= ws)):
        raise InvalidParameterError(
            f"fit window must lie strictly inside (0, {ws:g})")
    if omegas.size < 3 or np.log10(omegas.max() / omegas.min()) < 1.0:
        raise InsufficientWindowError(
            "need >= 3 points spanning >= 1 decade of omega")
    expo, logc, rms = _lstsq_line(np.log(omegas), np.log(masses))
    return AsymptoteFit(law="power-law-at-zero",
                        coefficient=float(np.exp(logc)), exponent=expo,
                        window=(float(omegas.min()), float(omegas.max())),
                        residual=rms)


def _check_property_domain(alpha, omega, z):
    ws = _check_inside_branch(alpha, omega)
    if np.any(np.asarray(z) <= 0.0):
        raise InvalidParameterError("z must be positive")
    return ws


def mass_integrand(alpha, omega, z):
    """Integrand f of the reduced 1D mass: (1+z^2)^(-1/alpha) X^(-1/2),
    X = (1 - omega/omega*) + z^2."""
    ws = _check_property_domain(alpha, omega, z)
    z = np.asarray(z, dtype=float)
    x_big = (1.0 - omega / ws) + z * z
    return (1.0 + z * z) ** (-1.0 / alpha) / np.sqrt(x_big)


def mass_integrand_domega(alpha, omega, z):
    """First omega-derivative of mass_integrand: f / (2 omega* X)."""
    ws = _check_property_domain(alpha, omega, z)
    z = np.asarray(z, dtype=float)
    x_big = (1.0 - omega / ws) + z * z
    return mass_integrand(alpha, omega, z) / (2.0 * ws * x_big)


def mass_integrand_domega2(alpha, omega, z):
    """Second omega-derivative of mass_integrand: 3 f / (4 omega*^2 X^2)."""
    ws = _check_property_domain(alpha, omega, z)
    z = np.asarray(z, dtype=float)
    x_big = (1.0 - omega / ws) + z * z
    return 3.0 * mass_integrand(alpha, omega, z) / (2.0 * ws * x_big) ** 2


def convexity_quadratic(alpha, omega, z):
    """Quadratic form controlling the sign of M'' for alpha > 2.

    G = (omega/omega* - c X)^2 + c ((8 alpha - 4)/(3 alpha)) X^2 with
    c = (alpha-2)/(3 alpha) and X = (1 - omega/omega*) + z^2; both terms
    are strictly positive for alpha > 2, which is the convexity proof's
    engine.
    """
    ws = _check_property_domain(alpha, omega, z)
    z = np.asarray(z, dtype=float)
    x_big = (1.0 - omega / ws) + z * z
    ratio = omega / ws
    c = (alpha - 2.0) / (3.0 * alpha)
    return (ratio - c * x_big) ** 2 + c * (8.0 * alpha - 4.0) / (
        3.0 * alpha) * x_big ** 2
