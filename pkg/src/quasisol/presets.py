"""Catalog of fully specified experiment presets.

Each preset bundles the parameters of one published-scale run together
with the qualitative checklist its output is expected to satisfy. The
full-scale evolution presets take hours; desk-scale variants of the
same physics live in the acceptance tests instead.
"""

from dataclasses import dataclass, field

from .errors import InvalidParameterError

__all__ = ["ExperimentPreset", "PRESETS", "get_preset", "preset_names"]


@dataclass(frozen=True)
class ExperimentPreset:
    """A named, fully specified run description.

    kind selects the runner (sweep, groundstate-family, evolve1d,
    evolver); params feeds it; expected is the human-readable checklist
    the acceptance tests encode.
    """

    name: str
    kind: str
    description: str
    params: dict = field(default_factory=dict)
    expected: tuple = ()


_CATALOG = (
    ExperimentPreset(
        name="fig3-mass-energy",
        kind="sweep",
        description="Mass and energy along the 1D alpha=3 branch; the "
                    "E(M) curve shows the two branches meeting in a cusp.",
        params=dict(alpha=3, dim=1, omega_min=0.002, omega_max=0.2498,
                    num=500),
        expected=("mass convex with a single slope sign change",
                  "E(M) traces two branches meeting at a cusp"),
    ),
    ExperimentPreset(
        name="fig7-alpha3-om022",
        kind="evolve1d",
        description="1D soliton alpha=3, omega=0.22 under a lambda=1.001 "
                    "amplitude perturbation, full published resolution.",
        params=dict(alpha=3, omega=0.22, lam=1.001, lx=30.0, nx=4096,
                    tmax=10.0, nt=1_000_000, snapshot_stride=100_000),
        expected=("central peak persists over t in [0, 10]",
                  "fitted final omega in [0.215, 0.225]",
                  "delta stays below 1e-3"),
    ),
    ExperimentPreset(
        name="fig9-alpha3-om002-low",
        kind="evolve1d",
        description="Small-frequency 1D soliton alpha=3, omega=0.02 under "
                    "lambda=0.99 on the wide domain and long horizon; the "
                    "solution disperses.",
        params=dict(alpha=3, omega=0.02, lam=0.99, lx=100.0, nx=4096,
                    tmax=200.0, nt=1_000_000, snapshot_stride=100_000),
        expected=("peak flattens over time",),
    ),
    ExperimentPreset(
        name="fig12-groundstates",
        kind="groundstate-family",
        description="Radial ground states alpha=1, d=3 at omega = 0.1, "
                    "0.2, 0.3, 0.4 on the wide high-resolution grid.",
        params=dict(alpha=1, dim=3, omegas=(0.1, 0.2, 0.3, 0.4), n=1000,
                    s0=1e4, mu=1e-2, path_step=0.0125),
        expected=("peaks increase toward 1 with omega",
                  "1 - max(phi) of order 1e-7 at omega = 0.4"),
    ),
    ExperimentPreset(
        name="fig16-unstable-grow",
        kind="evolver",
        description="Unstable-branch radial soliton omega=0.01 scaled by "
                    "lambda=1.01; the solution grows toward the stable "
                    "branch plus radiation.",
        params=dict(alpha=1, dim=3, initial=("soliton", 0.01, 1.01),
                    n=1000, s0=1e4, h=2e-3, nt=70_000,
                    snapshot_stride=7_000),
        expected=("L-inf grows and oscillates around an asymptotic value",),
    ),
    ExperimentPreset(
        name="fig18-gauss-wide",
        kind="evolver",
        description="Wide Gaussian 0.9 exp(-s/50) in d=3; radiation is "
                    "shed and a ground state emerges.",
        params=dict(alpha=1, dim=3, initial=("gaussian", 0.9, 50.0),
                    n=1000, s0=1e4, h=2e-3, nt=10_000,
                    snapshot_stride=1_000),
        expected=("L-inf slowly reaches a plateau",),
    ),
)

PRESETS = {preset.name: preset for preset in _CATALOG}


def preset_names():
    """Catalog names in definition order."""
    return [preset.name for preset in _CATALOG]


def get_preset(name):
    """Look up a preset by name, raising invalid-parameter if unknown."""
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(preset_names())
        raise InvalidParameterError(
            f"unknown preset {name!r}; available: {known}") from None
