"""Shared fixtures: the small reference ground state used across files."""

import numpy as np
import pytest

from quasisol import ModelParams, SolverControls, cheb_grid, newton_relaxed
from quasisol.groundstate import default_seed


@pytest.fixture(scope="session")
def gs_a1d3():
    """Converged alpha=1, d=3, omega=0.1 ground state on the n=200 grid."""
    grid = cheb_grid(200, 1e3)
    params = ModelParams(alpha=1, dim=3, omega=0.1)
    controls = SolverControls(mu=0.1, tol=1e-12)
    return newton_relaxed(default_seed(grid), params, controls)
