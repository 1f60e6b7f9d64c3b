#!/usr/bin/env python3
"""
Mass/energy bifurcation diagram for the 1D saturating dispersion model.

Sweeps the solitary-wave branch for alpha = 3 over (0, omega*), locates
the turning frequency where dM/domega changes sign, and draws the
three-panel diagram: M(omega), E(omega), and the E(M) cusp. The same
CSV written here can be rendered with the figure package instead:

    plotkit mass-energy-triptych demo_output/bifurcation.csv -o fig.svg
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from quasisol import (fit_asymptote_star, fit_asymptote_zero, find_omega_c,
                      sweep)
from quasisol.output import write_bifurcation

OUT = os.environ.get("QUASISOL_OUT", "demo_output")

print("=" * 64)
print("1D solitary-wave branch, alpha = 3 (omega* = 1/4)")
print("=" * 64)

# ------------------------------------------------------------------
# 1. sweep the branch on a dense frequency grid
# ------------------------------------------------------------------
omegas = np.linspace(0.002, 0.2498, 400)
points = sweep(3, 1, omegas)
masses = np.array([p.mass for p in points])
energies = np.array([p.energy for p in points])
print(f"\n1. swept {len(points)} frequencies in "
      f"[{omegas[0]:g}, {omegas[-1]:g}]")
print(f"   mass range  : {masses.min():.4f} .. {masses.max():.4f}")
print(f"   stability   : "
      f"{sum(p.stability == 'unstable' for p in points)} unstable / "
      f"{sum(p.stability == 'stable' for p in points)} stable points")

# ------------------------------------------------------------------
# 2. the turning point: mass minimum = stability changeover
# ------------------------------------------------------------------
omega_c = find_omega_c(3, 1, (0.05, 0.2))
print(f"\n2. turning frequency omega_c = {omega_c:.8f}")
print("   dM/domega < 0 below it (unstable side), > 0 above (stable)")

# ------------------------------------------------------------------
# 3. the two asymptotic regimes, fitted on dedicated log-spaced grids
#    (the sweep grid is linear, too narrow in log terms for either end)
# ------------------------------------------------------------------
from quasisol import mass_1d_reduced

small = [(w, mass_1d_reduced(3, w)) for w in np.logspace(-5, -2, 15)]
fit0 = fit_asymptote_zero(small, 3, 1)
print(f"\n3. small-frequency fit : M ~ {fit0.coefficient:.3f} * "
      f"omega^({fit0.exponent:.3f})  (exponent 1/alpha - 1/2 = -1/6)")
near = [(0.25 - g, mass_1d_reduced(3, 0.25 - g))
        for g in np.logspace(-8, -4, 15)]
fit1 = fit_asymptote_star(near, 3, 1)
print(f"   near-star fit      : M ~ {fit1.coefficient:.3f} * "
      f"(-ln(omega* - omega)), log-divergence law")

# ------------------------------------------------------------------
# 4. draw the triptych and persist the branch as CSV + sidecar
# ------------------------------------------------------------------
os.makedirs(OUT, exist_ok=True)
files = write_bifurcation(OUT, points, fits=[fit0, fit1],
                          meta={"alpha": 3, "dim": 1})

fig, axes = plt.subplots(1, 3, figsize=(13, 4))
axes[0].plot(omegas, masses, lw=1.2)
axes[0].axvline(omega_c, color="k", ls=":", lw=0.8)
axes[0].set(xlabel=r"$\omega$", ylabel=r"$M(\omega)$")
axes[1].plot(omegas, energies, lw=1.2, color="tab:orange")
axes[1].axvline(omega_c, color="k", ls=":", lw=0.8)
axes[1].set(xlabel=r"$\omega$", ylabel=r"$E(\omega)$")
low = omegas <= omega_c
axes[2].plot(masses[low], energies[low], lw=1.2, label="unstable side")
axes[2].plot(masses[~low], energies[~low], lw=1.2, ls="--",
             label="stable side")
axes[2].set(xlabel=r"$M$", ylabel=r"$E$")
axes[2].legend(frameon=False)
fig.suptitle("solitary-wave branch, alpha = 3: cusp at the mass minimum")
fig.tight_layout()
fig_path = os.path.join(OUT, "bifurcation_triptych.png")
fig.savefig(fig_path, dpi=150)

print(f"\n4. wrote {', '.join(os.path.basename(f) for f in files)} "
      f"and {os.path.basename(fig_path)} to {OUT}/")
