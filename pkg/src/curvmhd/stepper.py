"""Three-stage TVD Runge-Kutta integration of the coupled (q, A) system.

Each stage: fill ghosts -> assemble (positivity-limited) fluxes -> advance
the conserved field and the potential by a forward-Euler substep -> take
the SSP convex combination -> overwrite the in-plane field from the
potential curl.  The step size follows the mapped CFL condition

    dt = cfl / max_cells( lam_xi/dxi + lam_eta/deta ),
    lam_r = |u . grad r| + c_f ||grad r||,

recomputed every step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import assembly, boundary, ct, positivity
from .gridgen import NG
from .states import max_signal_speed, primitive_from_conserved


class NanError(RuntimeError):
    pass


@dataclass
class StepDiagnostics:
    n_limited: int = 0
    n_fallback: int = 0


_SSP = ((0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0))


def _open_edges(spec):
    return tuple(e for e in boundary.EDGES
                 if spec[e]["type"] == "outflow")


def compute_dt(qg, grid, cfg):
    g = NG
    w = primitive_from_conserved(qg[g:g + grid.ny, g:g + grid.nx], cfg.gamma)
    gx = grid.interior(grid.grad_xi())
    ge = grid.interior(grid.grad_eta())
    n3 = np.zeros(gx.shape[:-1] + (3,))
    n3[..., :2] = gx
    lam = max_signal_speed(w, n3, cfg.gamma) / grid.dxi
    if not cfg.quasi_1d:
        n3[..., :2] = ge
        lam = lam + max_signal_speed(w, n3, cfg.gamma) / grid.deta
    return cfg.cfl / float(np.max(lam))


def _stage_rhs(qg, Ag, grid, spec, cfg, dt, diag):
    boundary.fill_ghosts(qg, Ag, grid, spec, cfg.gamma)
    fl = assembly.compute_fluxes(qg, grid, cfg)
    diag.n_fallback += fl["n_fallback"]
    g = NG
    q_int = qg[g:g + grid.ny, g:g + grid.nx]
    if cfg.pp_on:
        diag.n_limited += positivity.limit_fluxes(
            fl, q_int, grid, dt, cfg,
            periodic_x=spec["xi_lo"]["type"] == "periodic",
            periodic_y=spec["eta_lo"]["type"] == "periodic")
    rq = assembly.residual_from_fluxes(fl["fx"], fl["fy"], grid,
                                       cfg.quasi_1d)
    if cfg.ct_on:
        rA = ct.potential_rhs(Ag, qg, grid)
    else:
        rA = 0.0
    return rq, rA


def rk3_step(qg, Ag, grid, spec, cfg, dt):
    """Advance one full step in place; returns stage diagnostics."""
    g = NG
    ii = (slice(g, g + grid.ny), slice(g, g + grid.nx))
    q0 = qg[ii].copy()
    A0 = Ag[ii].copy()
    diag = StepDiagnostics()
    for c_old, c_new in _SSP:
        rq, rA = _stage_rhs(qg, Ag, grid, spec, cfg, dt, diag)
        qg[ii] = c_old * q0 + c_new * (qg[ii] + dt * rq)
        Ag[ii] = c_old * A0 + c_new * (Ag[ii] + dt * rA)
        if cfg.ct_on:
            boundary.fill_ghosts(qg, Ag, grid, spec, cfg.gamma)
            e_floor = cfg.eps_pos / (cfg.gamma - 1.0) if cfg.pp_on else None
            ct.ct_correct(qg[ii], Ag, grid, skip_edges=_open_edges(spec),
                          e_floor=e_floor)
        if not np.all(np.isfinite(qg[ii])):
            raise NanError("non-finite state after RK stage")
    return diag
