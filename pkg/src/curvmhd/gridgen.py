"""Structured curvilinear grids and their discrete metric terms.

A grid is a smooth (or node-perturbed) map (xi, eta) -> (x, y) sampled on
a uniform computational lattice.  The solver works with the transformed
system, so what it needs at every node are the scaled contravariant
vectors

    m_xi  = (xi_x / J,  xi_y / J) = ( y_eta, -x_eta)
    m_eta = (eta_x / J, eta_y / J) = (-y_xi,   x_xi)

and the Jacobian J = 1 / (x_xi y_eta - x_eta y_xi).

In the default "discrete" metric mode the coordinate derivatives above are
evaluated with the 7-point sixth-order central difference.  That operator
is exactly the telescoped form of the interface flux stencil (six-point
half-point interpolation plus the second/fourth central corrections), so
the mapped flux divergence of any constant state cancels to roundoff.
Half-point metrics are the six-point interpolants of the node metrics.
The "analytic" mode evaluates the mapping derivatives exactly instead and
is provided for accuracy comparisons; it does not preserve free streams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .weno import C_HALF

NG = 3          # ghost layers carried by field and metric arrays
_NGC = NG + 3   # coordinate ghost layers (metric stencil reaches 3 further)

# sixth-order first-derivative stencil, nodes i-3..i+3
_D6 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0


@dataclass
class Mapping:
    """Coordinate map of the unit computational square onto the domain.

    ``x`` and ``y`` take vectorized (xi, eta) and must be defined slightly
    beyond the computational domain (ghost nodes are mapped directly).
    ``deriv``, if given, returns (x_xi, x_eta, y_xi, y_eta) for the
    analytic metric mode.  ``node_jitter`` > 0 replaces the smooth map by
    a seeded random perturbation of the mapped nodes (fraction of the
    local spacing); such grids must be periodic in both directions and
    the ghost coordinates are produced by periodic wrapping.
    """
    x: Callable
    y: Callable
    deriv: Optional[Callable] = None
    node_jitter: float = 0.0
    name: str = "mapping"


def identity_mapping():
    return Mapping(x=lambda xi, eta: xi + 0.0 * eta,
                   y=lambda xi, eta: eta + 0.0 * xi,
                   deriv=lambda xi, eta: (np.ones_like(xi), np.zeros_like(xi),
                                          np.zeros_like(eta), np.ones_like(eta)),
                   name="identity")


def _apply_d6(arr, axis, h):
    """Sixth-order first derivative; output loses 3 layers on each end."""
    a = np.moveaxis(arr, axis, 0)
    n = a.shape[0] - 6
    out = np.zeros_like(a[3:-3])
    for k in range(7):
        if abs(_D6[k]) > 0.0:
            out += _D6[k] * a[k:k + n]
    return np.moveaxis(out / h, 0, axis)


def half_interp(arr, axis):
    """Six-point interpolation from nodes to half points along axis.

    Input carries NG ghost layers along ``axis``; output has one value per
    interior interface (n_interior + 1 of them), no ghosts.
    """
    a = np.moveaxis(np.asarray(arr, dtype=np.float64), axis, 0)
    nfaces = a.shape[0] - 2 * NG + 1
    out = np.zeros_like(a[:nfaces])
    for k in range(6):
        out += C_HALF[k] * a[NG - 3 + k:NG - 3 + k + nfaces]
    return np.moveaxis(out, 0, axis)


class Grid:
    """Curvilinear grid: coordinates, node metrics, half-point metrics.

    Arrays are indexed (eta, xi) = (j, i); field arrays carry NG ghost
    layers on every side.  ``interior`` slices a ghosted array down to the
    nx-by-ny interior block.
    """

    def __init__(self, mapping, nx, ny, xi_span=(0.0, 1.0),
                 eta_span=(0.0, 1.0), metric="discrete", seed=0):
        if nx < 12 or ny < 12:
            raise ValueError("grid needs at least 12 nodes per direction")
        if metric not in ("discrete", "analytic"):
            raise ValueError(f"unknown metric mode {metric!r}")
        if metric == "analytic" and mapping.deriv is None:
            raise ValueError("analytic metrics need mapping derivatives")
        self.mapping = mapping
        self.nx, self.ny = nx, ny
        self.g = NG
        self.metric_mode = metric
        self.xi0, xi1 = xi_span
        self.eta0, eta1 = eta_span
        self.dxi = (xi1 - self.xi0) / nx
        self.deta = (eta1 - self.eta0) / ny

        gc = _NGC
        i = np.arange(-gc, nx + gc)
        j = np.arange(-gc, ny + gc)
        xi = self.xi0 + i * self.dxi
        eta = self.eta0 + j * self.deta
        XI, ETA = np.meshgrid(xi, eta)            # (NyC, NxC)

        if mapping.node_jitter > 0.0:
            Xc, Yc = self._jittered_nodes(mapping, nx, ny, XI, ETA, seed, gc)
        else:
            Xc = np.asarray(mapping.x(XI, ETA), dtype=np.float64)
            Yc = np.asarray(mapping.y(XI, ETA), dtype=np.float64)

        sl = slice(gc - NG, Xc.shape[0] - (gc - NG))
        sx = slice(gc - NG, Xc.shape[1] - (gc - NG))
        self.X = Xc[sl, sx].copy()
        self.Y = Yc[sl, sx].copy()
        self.xi = xi[gc - NG:len(xi) - (gc - NG)]
        self.eta = eta[gc - NG:len(eta) - (gc - NG)]

        if metric == "discrete" or mapping.node_jitter > 0.0:
            x_xi = _apply_d6(Xc, 1, self.dxi)[3:-3, :]
            x_eta = _apply_d6(Xc, 0, self.deta)[:, 3:-3]
            y_xi = _apply_d6(Yc, 1, self.dxi)[3:-3, :]
            y_eta = _apply_d6(Yc, 0, self.deta)[:, 3:-3]
        else:
            XIm = XI[sl, sx]
            ETAm = ETA[sl, sx]
            x_xi, x_eta, y_xi, y_eta = mapping.deriv(XIm, ETAm)
            x_xi = np.broadcast_to(x_xi, XIm.shape).astype(np.float64)
            x_eta = np.broadcast_to(x_eta, XIm.shape).astype(np.float64)
            y_xi = np.broadcast_to(y_xi, XIm.shape).astype(np.float64)
            y_eta = np.broadcast_to(y_eta, XIm.shape).astype(np.float64)

        self.jinv = x_xi * y_eta - x_eta * y_xi   # 1/J at nodes
        if np.any(self.jinv <= 0.0):
            raise ValueError("mapping is folded: nonpositive Jacobian")
        self.J = 1.0 / self.jinv
        self.m_xi = np.stack([y_eta, -x_eta], axis=-1)
        self.m_eta = np.stack([-y_xi, x_xi], axis=-1)

        ii = slice(NG, NG + ny)
        self.mh_xi = half_interp(self.m_xi[ii, :, :], axis=1)
        jj = slice(NG, NG + nx)
        self.mh_eta = half_interp(self.m_eta[:, jj, :], axis=0)

    @staticmethod
    def _jittered_nodes(mapping, nx, ny, XI, ETA, seed, gc):
        """Seeded random node perturbation, periodic in both directions."""
        x0 = np.asarray(mapping.x(XI, ETA), dtype=np.float64)
        y0 = np.asarray(mapping.y(XI, ETA), dtype=np.float64)
        rng = np.random.default_rng(seed)
        hx = (x0[gc, gc + 1] - x0[gc, gc])
        hy = (y0[gc + 1, gc] - y0[gc, gc])
        dx = mapping.node_jitter * hx * rng.uniform(-1.0, 1.0, (ny, nx))
        dy = mapping.node_jitter * hy * rng.uniform(-1.0, 1.0, (ny, nx))
        X = x0.copy()
        Y = y0.copy()
        ix = (np.arange(-gc, nx + gc) % nx)
        jy = (np.arange(-gc, ny + gc) % ny)
        # wrap the perturbation periodically; x0/y0 carry the period offsets
        X += dx[np.ix_(jy, ix)]
        Y += dy[np.ix_(jy, ix)]
        return X, Y

    # ---- helpers ------------------------------------------------------

    def interior(self, arr):
        g = self.g
        return arr[g:g + self.ny, g:g + self.nx]

    @property
    def x_int(self):
        return self.interior(self.X)

    @property
    def y_int(self):
        return self.interior(self.Y)

    def grad_xi(self):
        """True gradient of xi at the nodes (ghosts included)."""
        return self.J[..., None] * self.m_xi

    def grad_eta(self):
        return self.J[..., None] * self.m_eta

    def interface_normal(self, direction):
        """Unit normals and metric scale at the half points.

        direction 0: xi-interfaces, arrays shaped (ny, nx+1, .);
        direction 1: eta-interfaces, (ny+1, nx, .).
        Returns (nhat3, scale) where the flux through the interface is
        scale * F(q, nhat).
        """
        mh = self.mh_xi if direction == 0 else self.mh_eta
        scale = np.hypot(mh[..., 0], mh[..., 1])
        nhat = np.zeros(mh.shape[:-1] + (3,))
        nhat[..., 0] = mh[..., 0] / scale
        nhat[..., 1] = mh[..., 1] / scale
        return nhat, scale
