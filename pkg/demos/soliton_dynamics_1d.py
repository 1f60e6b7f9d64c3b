#!/usr/bin/env python3
"""
1D dynamics on the periodic line: exact orbit, then a perturbed one.

Stage one integrates an unperturbed solitary wave and checks that the
numerical solution stays on the analytic orbit phi(x) e^{i omega t}.
Stage two amplifies the initial data by 0.1% and watches the amplitude
drift to a nearby solitary wave, recovered by refitting omega from the
peak. Both runs are desk-sized (seconds, not the long published ones).
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from quasisol import (Run1DConfig, evolve_1d, fit_omega_from_max,
                      fourier_grid, perturbed_soliton_1d, soliton_1d,
                      ModelParams)

OUT = os.environ.get("QUASISOL_OUT", "demo_output")
ALPHA, OMEGA, LX, NX = 3, 0.22, 30.0, 1024

print("=" * 64)
print(f"periodic-line runs: alpha={ALPHA}, omega={OMEGA}, "
      f"grid {NX} points on [-{LX}pi, {LX}pi)")
print("=" * 64)

grid = fourier_grid(NX, LX)

# ------------------------------------------------------------------
# 1. unperturbed initial data: the orbit is known in closed form
# ------------------------------------------------------------------
exact_field = perturbed_soliton_1d(ALPHA, OMEGA, 1.0, grid)
cfg = Run1DConfig(alpha=ALPHA, omega=OMEGA, lam=1.0, lx=LX, nx=NX,
                  tmax=1.0, nt=4000, snapshot_stride=4000)
diag, snaps = evolve_1d(cfg, exact_field)
orbit = exact_field.values * np.exp(1j * OMEGA * 1.0)
sup = np.max(np.abs(snaps[-1][1] - orbit))
print(f"\n1. exact orbit to t=1: sup error {sup:.3e}, "
      f"energy drift {diag.delta.max():.3e}")

# ------------------------------------------------------------------
# 2. 0.1% amplification: the state climbs toward a higher peak
# ------------------------------------------------------------------
field = perturbed_soliton_1d(ALPHA, OMEGA, 1.001, grid)
cfg2 = Run1DConfig(alpha=ALPHA, omega=OMEGA, lam=1.001, lx=LX, nx=NX,
                   tmax=10.0, nt=20000, snapshot_stride=20000)
diag2, snaps2 = evolve_1d(cfg2, field)
tail = diag2.linf[-len(diag2.linf) // 10:]
fitted = fit_omega_from_max(float(tail.mean()), ALPHA)
print(f"\n2. lam=1.001 to t=10: max|phi| {diag2.linf[0]:.5f} -> "
      f"{diag2.linf[-1]:.5f}")
print(f"   refitted frequency from the trailing peak: {fitted:.5f} "
      f"(started at {OMEGA})")

# ------------------------------------------------------------------
# 3. final state against the refitted solitary wave
# ------------------------------------------------------------------
refit = soliton_1d(ModelParams(alpha=ALPHA, dim=1, omega=fitted),
                   grid.x_nodes)
final = np.abs(snaps2[-1][1])
print(f"\n3. sup | |phi(T)| - refit | = {np.max(np.abs(final - refit)):.2e}"
      " (the state rings around the new orbit)")

os.makedirs(OUT, exist_ok=True)
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))
ax1.plot(diag2.times, diag2.linf, lw=0.8)
ax1.set(xlabel="t", ylabel=r"$\max|\varphi|$",
        title="amplified run: peak drifts upward")
ax2.plot(grid.x_nodes, final, lw=1.0, label=r"$|\varphi(T)|$")
ax2.plot(grid.x_nodes, refit, lw=1.0, ls="--", label="refitted wave")
ax2.set(xlim=(-25, 25), xlabel="x", title="final state vs refit")
ax2.legend(frameon=False)
fig.tight_layout()
path = os.path.join(OUT, "soliton_dynamics_1d.png")
fig.savefig(path, dpi=150)
print(f"\nwrote {path}")
