"""Solitary waves, bifurcation diagrams, and time evolution for a
quasi-linear Schrodinger equation with a saturating denominator.

The model is i phi_t = -div(grad phi / (1 - |phi|^(2 alpha))) +
alpha |phi|^(2 alpha - 2) |grad phi|^2 phi / (1 - |phi|^(2 alpha))^2
- |phi|^(2 alpha) phi. Solitary waves phi = e^(i omega t) u exist for
0 < omega < 1/(alpha + 1).
"""

from .errors import (
    AccuracyAbortError,
    DenominatorBlowupError,
    InsufficientWindowError,
    InvalidParameterError,
    NoConvergenceError,
    NoSignChangeError,
    NoSolitaryWaveError,
    QuasisolError,
)
from .model import (
    ModelParams,
    RadialField,
    RadialProfile,
    energy_1d,
    energy_radial,
    fit_omega_from_max,
    mass_1d,
    mass_radial,
    rescale_ab,
    soliton_1d,
    soliton_max,
    stationary_residual_identity,
)
from .spectral import (
    ChebGrid,
    Fourier1DGrid,
    cheb_coeffs,
    cheb_eval,
    cheb_grid,
    clenshaw_curtis,
    fourier_diff,
    fourier_grid,
    radial_weights,
    tail_estimate,
)
from .groundstate import (
    ContinuationPlan,
    NewtonResult,
    SolverControls,
    continuation,
    newton_relaxed,
    residual_qeqs,
    semilinear_groundstate,
)
from .bifurcation import (
    AsymptoteFit,
    BifurcationPoint,
    convexity_quadratic,
    energy_1d_reduced,
    find_omega_c,
    fit_asymptote_star,
    fit_asymptote_zero,
    mass_1d_reduced,
    sweep,
)
from .evolve1d import (
    Diagnostics,
    Run1DConfig,
    evolve_1d,
    perturbed_soliton_1d,
    rhs_1d,
)
from .evolver import (
    GaussianStart,
    RunRadialConfig,
    SolitonStart,
    cn_newton_step,
    cn_residual,
    evolve_radial,
    gaussian_initial,
    rhs_radial,
)
from .presets import ExperimentPreset, get_preset, preset_names

__version__ = "0.1.0"
