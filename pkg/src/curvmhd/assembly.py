"""Interface flux assembly: Riemann leading term plus limited corrections.

Per sweep direction the numerical flux at each half point is

    fhat = scale * F(q-, q+; nhat)  +  sigma * (-d2/24 + 7 d4/5760)

where q-/q+ are characteristic-wise WENO interpolants of the *conserved*
point values (not the Jacobian-scaled ones, which is what keeps constant
fields exact on mapped grids), F is any of the interface solvers, and
d2/d4 are central differences of the transformed node fluxes.  sigma is a
smoothness limiter shared by all components of an interface.

The module also returns the first-order local Lax-Friedrichs flux of the
neighboring point values, which the positivity limiter blends toward.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import riemann
from .eigen import eigen_matrices
from .gridgen import NG
from .states import (GAMMA_DEFAULT, max_signal_speed, physical_flux,
                     pressure, primitive_from_conserved)
from .weno import C_D2, C_D4, interp_pair, sigma_factor

RHO_FLOOR_INTERP = 1e-13


@dataclass
class SolverConfig:
    """Run-time numerical options shared across modules."""
    solver: str = "hlld"
    gamma: float = GAMMA_DEFAULT
    cfl: float = 0.5
    ct_on: bool = True
    pp_on: bool = True
    sigma_on: bool = True
    linear_weights: bool = False
    eps_pos: float = 1e-13
    max_steps: int = 10_000_000
    quasi_1d: bool = False


def correction_terms(f6, axis=-2):
    """Second/fourth central differences of six node fluxes at i+1/2.

    ``f6`` carries the stencil f_{i-2..i+3} along ``axis``; the returned
    pair approximates (dx^2 f'' , dx^4 f'''') at the half point.
    """
    f = np.moveaxis(np.asarray(f6, dtype=np.float64), axis, 0)
    d2 = np.zeros_like(f[0])
    d4 = np.zeros_like(f[0])
    for k in range(6):
        d2 += C_D2[k] * f[k]
        d4 += C_D4[k] * f[k]
    return d2, d4


def transformed_node_fluxes(qg, grid, gamma):
    """Transformed fluxes m.(f, g) at every node, both directions."""
    ex = np.array([1.0, 0.0, 0.0])
    ey = np.array([0.0, 1.0, 0.0])
    fx = physical_flux(qg, ex, gamma)
    fy = physical_flux(qg, ey, gamma)
    ft_xi = grid.m_xi[..., 0:1] * fx + grid.m_xi[..., 1:2] * fy
    ft_eta = grid.m_eta[..., 0:1] * fx + grid.m_eta[..., 1:2] * fy
    return ft_xi, ft_eta


def sweep_fluxes(qg, ft, mh, cfg, alpha_global=None):
    """Numerical and low-order fluxes at all interfaces of one direction.

    qg, ft : (nlines, N, 8) states / transformed node fluxes, ghosted
             with NG layers along axis 1.
    mh     : (nlines, nfaces, 2) half-point metric vectors.

    Returns (fhat, flow, sigma, n_fallback) with nfaces = N - 2 NG + 1.
    """
    nfaces = qg.shape[1] - 2 * NG + 1
    q6 = np.stack([qg[:, NG - 3 + k:NG - 3 + k + nfaces] for k in range(6)],
                  axis=2)                               # (L, F, 6, 8)
    f6 = np.stack([ft[:, NG - 3 + k:NG - 3 + k + nfaces] for k in range(6)],
                  axis=2)
    qi = q6[:, :, 2]
    qi1 = q6[:, :, 3]

    scale = np.hypot(mh[..., 0], mh[..., 1])
    nhat = np.zeros(mh.shape[:-1] + (3,))
    nhat[..., 0] = mh[..., 0] / scale
    nhat[..., 1] = mh[..., 1] / scale

    wbar = 0.5 * (primitive_from_conserved(qi, cfg.gamma)
                  + primitive_from_conserved(qi1, cfg.gamma))
    R, Rinv = eigen_matrices(wbar, nhat, cfg.gamma)

    dq = q6 - qi[:, :, None, :]
    v6 = np.einsum('lfab,lfsb->lfsa', Rinv, dq)
    vm, vp, bm, bp = interp_pair(v6, axis=2, linear=cfg.linear_weights)
    qm = qi + np.einsum('lfab,lfb->lfa', R, vm)
    qp = qi + np.einsum('lfab,lfb->lfa', R, vp)

    bad = ((qm[..., 0] <= RHO_FLOOR_INTERP)
           | (qp[..., 0] <= RHO_FLOOR_INTERP)
           | (pressure(qm, cfg.gamma) <= RHO_FLOOR_INTERP)
           | (pressure(qp, cfg.gamma) <= RHO_FLOOR_INTERP))
    n_fallback = int(np.count_nonzero(bad))
    if n_fallback:
        qm = np.where(bad[..., None], qi, qm)
        qp = np.where(bad[..., None], qi1, qp)

    lead = scale[..., None] * riemann.solve(
        cfg.solver, qm, qp, nhat, cfg.gamma, alpha_global=alpha_global)

    if cfg.linear_weights or not cfg.sigma_on:
        sig = np.ones(scale.shape) if cfg.linear_weights \
            else np.zeros(scale.shape)
    else:
        sig = np.min(sigma_factor(bm, bp), axis=-1)

    d2, d4 = correction_terms(f6, axis=2)
    fhat = lead + sig[..., None] * (-d2 / 24.0 + (7.0 / 5760.0) * d4)

    wl = primitive_from_conserved(qi, cfg.gamma)
    wr = primitive_from_conserved(qi1, cfg.gamma)
    alo = np.maximum(max_signal_speed(wl, nhat, cfg.gamma),
                     max_signal_speed(wr, nhat, cfg.gamma))
    flo = physical_flux(qi, nhat, cfg.gamma)
    fro = physical_flux(qi1, nhat, cfg.gamma)
    flow = scale[..., None] * (0.5 * (flo + fro)
                               - 0.5 * alo[..., None] * (qi1 - qi))
    return fhat, flow, sig, n_fallback


def compute_fluxes(qg, grid, cfg):
    """High/low interface fluxes in both directions for the interior block.

    Returns dict with fx, fx_low (ny, nx+1, 8), fy, fy_low (ny+1, nx, 8),
    sigma arrays and the fallback counter.
    """
    g = NG
    ny, nx = grid.ny, grid.nx
    ft_xi, ft_eta = transformed_node_fluxes(qg, grid, cfg.gamma)

    alpha_global = None
    if cfg.solver == "lf":
        # direction-independent bound: |u| + sqrt(a^2 + |B|^2/rho) >= cf(n)
        w = primitive_from_conserved(qg[g:g + ny, g:g + nx], cfg.gamma)
        a2 = cfg.gamma * w[..., 4] / w[..., 0]
        b2 = np.sum(w[..., 5:] ** 2, axis=-1) / w[..., 0]
        spd = np.linalg.norm(w[..., 1:4], axis=-1) + np.sqrt(a2 + b2)
        alpha_global = float(np.max(spd))

    rows = slice(g, g + ny)
    fx, fx_low, sig_x, nf1 = sweep_fluxes(
        qg[rows], ft_xi[rows], grid.mh_xi, cfg, alpha_global)

    if cfg.quasi_1d:
        fy = np.zeros((ny + 1, nx, 8))
        fy_low = np.zeros((ny + 1, nx, 8))
        sig_y = np.ones((ny + 1, nx))
        nf2 = 0
    else:
        cols = slice(g, g + nx)
        qT = np.swapaxes(qg[:, cols], 0, 1)
        ftT = np.swapaxes(ft_eta[:, cols], 0, 1)
        mhT = np.swapaxes(grid.mh_eta, 0, 1)
        fy, fy_low, sig_y, nf2 = sweep_fluxes(qT, ftT, mhT, cfg, alpha_global)
        fy = np.swapaxes(fy, 0, 1)
        fy_low = np.swapaxes(fy_low, 0, 1)
        sig_y = np.swapaxes(sig_y, 0, 1)

    return {"fx": fx, "fx_low": fx_low, "fy": fy, "fy_low": fy_low,
            "sigma_x": sig_x, "sigma_y": sig_y, "n_fallback": nf1 + nf2}


def residual_from_fluxes(fx, fy, grid, quasi_1d=False):
    """-J [D_xi fhat + D_eta ghat] on the interior block."""
    Jin = grid.interior(grid.J)
    rhs = (fx[:, 1:] - fx[:, :-1]) / grid.dxi
    if not quasi_1d:
        rhs = rhs + (fy[1:, :] - fy[:-1, :]) / grid.deta
    return -Jin[..., None] * rhs


def residual(qg, grid, cfg):
    """One-call flux divergence (no positivity limiting); ghosts filled."""
    fl = compute_fluxes(qg, grid, cfg)
    return residual_from_fluxes(fl["fx"], fl["fy"], grid, cfg.quasi_1d)
