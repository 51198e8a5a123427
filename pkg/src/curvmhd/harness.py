"""Run orchestration: initialization, time-step loop, dumps, summaries,
and the refinement (convergence) harness."""

from __future__ import annotations

import logging
import os
import time as _time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import boundary, ct, dumpio, stepper
from .assembly import SolverConfig
from .positivity import PositivityError
from .gridgen import NG
from .problems import build_grid, get_problem
from .states import conserved_from_primitive, pressure, \
    primitive_from_conserved

log = logging.getLogger(__name__)

OUT_DIR_ENV = "CURVMHD_OUT"


@dataclass
class RunConfig:
    problem: str
    variant: Optional[str] = None
    nx: Optional[int] = None
    ny: Optional[int] = None
    solver: Optional[str] = None
    cfl: Optional[float] = None
    t_final: Optional[float] = None
    ct_on: Optional[bool] = None
    pp_on: Optional[bool] = None
    sigma_on: bool = True
    metric: str = "discrete"
    out_dir: Optional[str] = None
    dump_every: int = 0           # steps between dumps; 0 = final only
    seed: int = 0
    max_steps: int = 1_000_000
    monitor: Optional[callable] = None  # called as monitor(t, q_interior)


@dataclass
class RunResult:
    setup: object
    grid: object
    qg: np.ndarray
    Ag: np.ndarray
    summary: dict
    dumps: list = field(default_factory=list)


def _pick(override, default):
    return default if override is None else override


def initial_state(setup, grid, solver_cfg):
    """Ghosted conserved field and potential from the problem's data.

    The mapping is globally defined, so ghosts are seeded analytically;
    with constrained transport on, the in-plane field is replaced by the
    discrete curl of A so the setup starts divergence-free.
    """
    w = setup.initial(grid.X, grid.Y)
    qg = conserved_from_primitive(w, setup.gamma)
    Ag = np.asarray(setup.initial_A(grid.X, grid.Y), dtype=np.float64)
    if solver_cfg.ct_on:
        g = NG
        ct.ct_correct(qg[g:g + grid.ny, g:g + grid.nx], Ag, grid)
    return qg, Ag


def total_mass(qg, grid):
    g = NG
    rho = qg[g:g + grid.ny, g:g + grid.nx, 0]
    return float(np.sum(rho / grid.interior(grid.J)) * grid.dxi * grid.deta)


def _emit(cfg, res, step, t, out_dir):
    grid, setup = res.grid, res.setup
    g = NG
    q = res.qg[g:g + grid.ny, g:g + grid.nx]
    p = pressure(q, setup.gamma)
    name = f"{setup.name}_{setup.variant}_{step:06d}.dump"
    path = os.path.join(out_dir, name)
    dumpio.write_dump(path, problem=f"{setup.name}/{setup.variant}",
                      time=t, step=step, x=grid.x_int, y=grid.y_int,
                      q=q, A=res.Ag[g:g + grid.ny, g:g + grid.nx], p=p)
    res.dumps.append(path)
    return path


def run(cfg: RunConfig) -> RunResult:
    setup = get_problem(cfg.problem, cfg.variant, cfg.nx, cfg.ny)
    solver_cfg = SolverConfig(
        solver=_pick(cfg.solver, setup.solver),
        gamma=setup.gamma,
        cfl=_pick(cfg.cfl, setup.cfl),
        ct_on=_pick(cfg.ct_on, setup.ct_on),
        pp_on=_pick(cfg.pp_on, setup.pp_on),
        sigma_on=cfg.sigma_on,
        quasi_1d=setup.quasi_1d)
    t_final = _pick(cfg.t_final, setup.t_final)
    grid = build_grid(setup, metric=cfg.metric, seed=cfg.seed)
    qg, Ag = initial_state(setup, grid, solver_cfg)
    res = RunResult(setup=setup, grid=grid, qg=qg, Ag=Ag, summary={})

    out_dir = cfg.out_dir or os.environ.get(OUT_DIR_ENV)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)

    g = NG
    ii = (slice(g, g + grid.ny), slice(g, g + grid.nx))
    mass0 = total_mass(qg, grid)
    min_rho = float(np.min(qg[ii][..., 0]))
    min_p = float(np.min(pressure(qg[ii], setup.gamma)))
    n_limited = n_fallback = 0
    t, step = 0.0, 0
    if cfg.monitor is not None:
        cfg.monitor(t, qg[ii])
    wall0 = _time.perf_counter()
    status = "ok"
    try:
        while t < t_final and step < cfg.max_steps:
            dt = stepper.compute_dt(qg, grid, solver_cfg)
            dt = min(dt, t_final - t)
            diag = stepper.rk3_step(qg, Ag, grid, setup.boundary,
                                    solver_cfg, dt)
            n_limited += diag.n_limited
            n_fallback += diag.n_fallback
            t += dt
            step += 1
            min_rho = min(min_rho, float(np.min(qg[ii][..., 0])))
            min_p = min(min_p, float(np.min(pressure(qg[ii], setup.gamma))))
            if cfg.monitor is not None:
                cfg.monitor(t, qg[ii])
            if out_dir and cfg.dump_every and step % cfg.dump_every == 0:
                _emit(cfg, res, step, t, out_dir)
    except stepper.NanError:
        status = "nan"
        log.error("aborted: non-finite state at t=%.6g step %d", t, step)
    except PositivityError as exc:
        status = "positivity"
        log.error("aborted: %s at t=%.6g step %d", exc, t, step)
    mass1 = total_mass(qg, grid)
    res.summary = {
        "status": status,
        "t": t,
        "steps": step,
        "mass_initial": mass0,
        "mass_final": mass1,
        "mass_drift": abs(mass1 - mass0) / max(abs(mass0), 1e-300),
        "min_rho": min_rho,
        "min_p": min_p,
        "limited_interfaces": n_limited,
        "fallback_interfaces": n_fallback,
        "wall_seconds": _time.perf_counter() - wall0,
    }
    if out_dir:
        _emit(cfg, res, step, t, out_dir)
    return res


def solution_errors(res):
    """Max-norm errors (velocity, magnetic field, potential) vs exact."""
    setup, grid = res.setup, res.grid
    if setup.exact is None:
        raise ValueError(f"problem {setup.name!r} has no exact solution")
    g = NG
    q = res.qg[g:g + grid.ny, g:g + grid.nx]
    A = res.Ag[g:g + grid.ny, g:g + grid.nx]
    w = primitive_from_conserved(q, setup.gamma)
    w_ex, A_ex = setup.exact(res.summary["t"], grid.x_int, grid.y_int)
    du = np.linalg.norm(w[..., 1:4] - w_ex[..., 1:4], axis=-1)
    db = np.linalg.norm(w[..., 5:8] - w_ex[..., 5:8], axis=-1)
    return {"u": float(np.max(du)), "B": float(np.max(db)),
            "A": float(np.max(np.abs(A - A_ex)))}


def convergence(problem, sizes, solver=None, variant=None, out_dir=None,
                **cfg_kw):
    """Refinement study; returns rows of errors and log2 orders.

    With ``out_dir`` set, the final state of each run is dumped with the
    measured errors recorded as extra header entries (err_u/err_B/err_A)
    so downstream tools can rebuild the order table from the files alone.
    """
    rows = []
    for n in sizes:
        res = run(RunConfig(problem=problem, variant=variant,
                            nx=n, ny=n, solver=solver, **cfg_kw))
        err = solution_errors(res)
        row = {"n": n, **{f"err_{k}": v for k, v in err.items()}}
        if rows:
            prev = rows[-1]
            for k in err:
                ratio = prev[f"err_{k}"] / max(err[k], 1e-300)
                row[f"order_{k}"] = float(np.log2(ratio))
        rows.append(row)
        if out_dir:
            os.makedirs(out_dir, exist_ok=True)
            g = NG
            grid, setup = res.grid, res.setup
            q = res.qg[g:g + grid.ny, g:g + grid.nx]
            dumpio.write_dump(
                os.path.join(out_dir, f"{setup.name}_{n:04d}.dump"),
                problem=f"{setup.name}/{setup.variant}",
                time=res.summary["t"], step=res.summary["steps"],
                x=grid.x_int, y=grid.y_int, q=q,
                A=res.Ag[g:g + grid.ny, g:g + grid.nx],
                p=pressure(q, setup.gamma),
                extra={f"err_{k}": v for k, v in err.items()})
    return rows


def format_convergence(rows):
    cols = ["u", "B", "A"]
    head = "    n " + "".join(f"  {'err_' + c:>11s} {'order':>6s}"
                              for c in cols)
    lines = [head]
    for r in rows:
        cells = [f"{r['n']:5d} "]
        for c in cols:
            o = r.get(f"order_{c}")
            cells.append(f"  {r['err_' + c]:11.4e} "
                         f"{o:6.2f}" if o is not None
                         else f"  {r['err_' + c]:11.4e} {'---':>6s}")
        lines.append("".join(cells))
    return "\n".join(lines)
