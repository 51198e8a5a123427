"""Positivity-preserving flux limiter.

Each high-order interface flux is blended toward the first-order LF flux,
fhat_new = theta fhat + (1-theta) fhat_low, with theta in [0,1] chosen so
that every forward-Euler stage update keeps density and pressure above a
small floor.  The cell update is split into four equal-weight face
contributions; each face constraint yields a theta (closed form for the
linear density constraint, bisection for pressure), and an interface takes
the minimum over its two adjacent cells.  theta stays exactly 1 wherever
the unlimited update is already admissible.

If the low-order update itself violates positivity the step cannot be
saved by blending and a PositivityError naming the worst cell is raised.
"""

from __future__ import annotations

import numpy as np

from .gridgen import NG
from .states import pressure

EPS_POS = 1e-13
_BISECT_TOL = 1e-12
_BISECT_MAX = 60


class PositivityError(RuntimeError):
    pass


def density_theta(L, G, eps):
    """Closed-form linear blend bound: rho of (L + theta G) >= eps.

    Density is linear in theta and rho(L) >= eps is guaranteed, so theta
    is 1 when the full contribution stays admissible and the intercept
    (rho_L - eps)/(-G_rho) otherwise.
    """
    lr = np.asarray(L)[..., 0]
    gr = np.asarray(G)[..., 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        t_rho = np.where(lr + gr >= eps, 1.0,
                         np.clip((lr - eps) / np.where(gr < 0.0, -gr, 1.0),
                                 0.0, 1.0))
    return t_rho


def pressure_theta(t_rho, L, G, eps, gamma):
    """Bisection on [0, t_rho] for p(L + theta G) >= eps.

    p is concave along the blend and p(L) >= eps, so the admissible set is
    an interval containing 0; a non-bracketing search collapses to 0.
    """
    theta = np.array(t_rho, dtype=np.float64, copy=True)
    p_hi = pressure(L + theta[..., None] * G, gamma)
    need = p_hi < eps
    if np.any(need):
        lo = np.zeros_like(theta)
        hi = theta.copy()
        for _ in range(_BISECT_MAX):
            mid = 0.5 * (lo + hi)
            pm = pressure(L + mid[..., None] * G, gamma)
            ok = pm >= eps
            lo = np.where(need & ok, mid, lo)
            hi = np.where(need & ~ok, mid, hi)
            if np.max(hi - lo) < _BISECT_TOL:
                break
        theta = np.where(need, lo, theta)
    return theta


def _face_theta(L, G, eps, gamma):
    """theta in [0,1] with rho and p of (L + theta G) >= eps."""
    return pressure_theta(density_theta(L, G, eps), L, G, eps, gamma)


def limit_fluxes(fl, q_int, grid, dt, cfg, periodic_x=False, periodic_y=False):
    """Blend the flux dict from assembly.compute_fluxes in place.

    Returns the number of limited interfaces.  ``q_int`` is the interior
    conserved block the forward-Euler stage starts from.  On periodic
    edges the first and last interface of a row/column are the same
    physical face, so they must share one theta or the two copies of the
    blended flux disagree and conservation is lost at the seam.
    """
    eps = cfg.eps_pos
    gamma = cfg.gamma
    Jin = grid.interior(grid.J)
    lamx = (dt / grid.dxi) * Jin
    lamy = (dt / grid.deta) * Jin

    fx, fxl = fl["fx"], fl["fx_low"]
    fy, fyl = fl["fy"], fl["fy_low"]

    low = (q_int
           - lamx[..., None] * (fxl[:, 1:] - fxl[:, :-1])
           - lamy[..., None] * (fyl[1:, :] - fyl[:-1, :]))
    rho_low = low[..., 0]
    p_low = pressure(low, gamma)
    if np.min(rho_low) < eps or np.min(p_low) < eps:
        j, i = np.unravel_index(int(np.argmin(np.minimum(rho_low, p_low))),
                                rho_low.shape)
        raise PositivityError(
            f"low-order update inadmissible at cell (i={i}, j={j}): "
            f"rho={rho_low[j, i]:.3e}, p={p_low[j, i]:.3e}")

    dfx = fx - fxl
    dfy = fy - fyl

    # per-cell theta for each of the four faces (left, right, bottom, top)
    th_xr = _face_theta(low, -4.0 * lamx[..., None] * dfx[:, 1:], eps, gamma)
    th_xl = _face_theta(low, 4.0 * lamx[..., None] * dfx[:, :-1], eps, gamma)
    th_yt = _face_theta(low, -4.0 * lamy[..., None] * dfy[1:, :], eps, gamma)
    th_yb = _face_theta(low, 4.0 * lamy[..., None] * dfy[:-1, :], eps, gamma)

    ny, nx = rho_low.shape
    thx = np.ones((ny, nx + 1))
    thx[:, 1:] = th_xr
    thx[:, :-1] = np.minimum(thx[:, :-1], th_xl)
    thy = np.ones((ny + 1, nx))
    thy[1:, :] = th_yt
    thy[:-1, :] = np.minimum(thy[:-1, :], th_yb)

    if periodic_x:
        thx[:, 0] = thx[:, -1] = np.minimum(thx[:, 0], thx[:, -1])
    if periodic_y:
        thy[0, :] = thy[-1, :] = np.minimum(thy[0, :], thy[-1, :])

    n_limited = int(np.count_nonzero(thx < 1.0) + np.count_nonzero(thy < 1.0))
    if n_limited:
        fl["fx"] = thx[..., None] * fx + (1.0 - thx[..., None]) * fxl
        fl["fy"] = thy[..., None] * fy + (1.0 - thy[..., None]) * fyl
    return n_limited
