"""Post-hoc figures from the solver suite's CSV/JSON files.

plotkit never computes physics: every number it renders is read from
the documented file schemas (bifurcation branches, diagnostics time
series, snapshot tables, stationary profiles, run manifests). Output is
SVG by default with the sha256 of the inputs embedded in the metadata.
"""

from .figures import (
    plot_linf_and_overlay,
    plot_linf_trace,
    plot_mass_energy,
    plot_profile_family,
    plot_waterfall,
)
from .schema import (
    FIGURE_KINDS,
    FigureSpec,
    SchemaMismatchError,
    input_checksum,
    read_bifurcation,
    read_diagnostics,
    read_manifest,
    read_profile,
    read_snapshot,
)

__version__ = "0.1.0"

__all__ = [
    "FIGURE_KINDS",
    "FigureSpec",
    "SchemaMismatchError",
    "input_checksum",
    "plot_linf_and_overlay",
    "plot_linf_trace",
    "plot_mass_energy",
    "plot_profile_family",
    "plot_waterfall",
    "read_bifurcation",
    "read_diagnostics",
    "read_manifest",
    "read_profile",
    "read_snapshot",
]
