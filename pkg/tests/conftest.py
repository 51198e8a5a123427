"""Shared helpers: random admissible states and small grids."""

from __future__ import annotations

import numpy as np
import pytest

from curvmhd.states import conserved_from_primitive


def random_primitives(rng, n, rho_range=(0.1, 10.0), p_range=(0.05, 50.0),
                      u_max=3.0, b_max=3.0):
    """Admissible random primitive states, shape (n, 8)."""
    w = np.empty((n, 8))
    w[:, 0] = rng.uniform(*rho_range, n)
    w[:, 1:4] = rng.uniform(-u_max, u_max, (n, 3))
    w[:, 4] = rng.uniform(*p_range, n)
    w[:, 5:8] = rng.uniform(-b_max, b_max, (n, 3))
    return w


def random_conserved(rng, n, gamma=5.0 / 3.0, **kw):
    return conserved_from_primitive(random_primitives(rng, n, **kw), gamma)


def random_unit_normals(rng, n, planar=False):
    v = rng.normal(size=(n, 3))
    if planar:
        v[:, 2] = 0.0
    v /= np.linalg.norm(v, axis=-1, keepdims=True)
    return v


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
