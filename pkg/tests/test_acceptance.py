"""Acceptance gate: one test per headline capability, one PASS/FAIL line
each.  The heavy entries (wave convergence, blast, long vortex run) take
tens of minutes combined; run this module with ``pytest -s`` to watch the
lines appear.
"""

from __future__ import annotations

import dataclasses
import time

import numpy as np

from curvmhd import assembly, boundary, ct, gridgen, harness, riemann, \
    states, stepper
from curvmhd.gridgen import NG
from curvmhd.problems import build_grid, get_problem, register_problems
from curvmhd.weno import interp_pair, interp_value_linear_minus, \
    interp_value_minus

from conftest import random_primitives, random_unit_normals

GAMMA = 5.0 / 3.0


def _criterion(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}", flush=True)
    assert ok, f"{name}: {detail}"


def _conserved(w, gamma=GAMMA):
    return states.conserved_from_primitive(w, gamma)


# ---------------------------------------------------------------------------
# interpolation kernels


def test_weno_kernel_suite():
    rng = np.random.default_rng(3)
    ok, notes = True, []

    # degree <= 4 exactness of the linear-weight half-point value
    nodes = np.arange(-2.0, 3.0)
    for deg in range(5):
        coeffs = rng.uniform(-2.0, 2.0, deg + 1)
        v = sum(c * nodes ** k for k, c in enumerate(coeffs))
        exact = sum(c * 0.5 ** k for k, c in enumerate(coeffs))
        ok &= abs(interp_value_linear_minus(v) - exact) < 1e-12

    # weight normalization: constants reproduce exactly
    val, _ = interp_value_minus(np.full((4, 5), 2.75))
    ok &= bool(np.all(np.abs(val - 2.75) < 1e-13))

    # mirror symmetry of the biased pair
    v6 = rng.uniform(-1.0, 1.0, (64, 6))
    vm, vp, _, _ = interp_pair(v6, axis=-1)
    rm, rp, _, _ = interp_pair(v6[:, ::-1], axis=-1)
    ok &= bool(np.allclose(rm, vp, rtol=1e-13, atol=1e-14)
               and np.allclose(rp, vm, rtol=1e-13, atol=1e-14))

    # fifth-order convergence on smooth data
    errs = []
    for h in (0.02, 0.01, 0.005):
        x = np.arange(400)[:, None] * h + np.arange(-2.0, 3.0) * h
        val, _ = interp_value_minus(np.sin(2.0 * np.pi * x), axis=-1)
        xh = x[:, 2] + 0.5 * h
        errs.append(np.max(np.abs(val - np.sin(2.0 * np.pi * xh))))
    slope = np.polyfit(np.log([0.02, 0.01, 0.005]), np.log(errs), 1)[0]
    ok &= slope >= 4.5
    notes.append(f"smooth slope {slope:.2f}")
    _criterion("weno-kernels", ok, "; ".join(notes))


# ---------------------------------------------------------------------------
# interface flux solvers


def test_flux_consistency_residuals():
    # the net jump carried by the wave fan must telescope to F(qR) - F(qL)
    # for every approximate solver, on rough random input
    rng = np.random.default_rng(77)
    t0 = time.perf_counter()
    wL = random_primitives(rng, 1000)
    wR = random_primitives(rng, 1000)
    wR[:, 5:8] = rng.uniform(-3.0, 3.0, (1000, 3))   # n.B_L != n.B_R
    n = random_unit_normals(rng, 1000, planar=False)
    n[:, 2] = 0.0
    n /= np.linalg.norm(n, axis=-1, keepdims=True)
    qL, qR = _conserved(wL), _conserved(wR)
    diff = states.physical_flux(qR, n, GAMMA) \
        - states.physical_flux(qL, n, GAMMA)
    scale = 1.0 + np.max(np.abs(diff), axis=-1, keepdims=True)

    sL, sR = riemann.estimate_outer_speeds(qL, qR, n, GAMMA)
    worst = 0.0
    # two-state fan (single middle state)
    qh = riemann.hll_state(qL, qR, n, sL, sR, GAMMA)
    acc = sL[..., None] * (qh - qL) + sR[..., None] * (qR - qh)
    worst = max(worst, float(np.max(np.abs(acc - diff) / scale)))
    # six-state fan
    fan = riemann.hlld_fan(qL, qR, n, sL, sR, GAMMA)
    seq = (qL, fan["qsL"], fan["qssL"], fan["qssR"], fan["qsR"], qR)
    spd = (fan["sL"], fan["ssL"], fan["sm"], fan["ssR"], fan["sR"])
    acc = np.zeros_like(qL)
    for k in range(5):
        acc += spd[k][..., None] * (seq[k + 1] - seq[k])
    worst = max(worst, float(np.max(np.abs(acc - diff) / scale)))
    dt = time.perf_counter() - t0
    _criterion("flux-consistency", worst < 1e-10 and dt < 10.0,
               f"max residual {worst:.2e} on 1000 states in {dt:.2f}s")


def test_exact_resolution_and_solver_ordering():
    rng = np.random.default_rng(5)
    ok, notes = True, []

    n = random_unit_normals(rng, 1, planar=True)[0]
    wl = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.3, 0.2, 0.1])
    wl[1:4] -= (wl[1:4] @ n) * n
    wL, wR, s = states.make_discontinuity("contact", wl, n, gamma=GAMMA,
                                          density_ratio=2.5)
    qL, qR = _conserved(wL), _conserved(wR)
    fe = states.physical_flux(qL, n, GAMMA)
    e_hlld = np.max(np.abs(riemann.solve("hlld", qL, qR, n, GAMMA) - fe))
    e_hll = np.max(np.abs(riemann.solve("hll", qL, qR, n, GAMMA) - fe))
    ok &= abs(s) < 1e-13 and e_hlld < 1e-10
    ok &= e_hll > 100.0 * max(e_hlld, 1e-15)
    notes.append(f"contact hlld {e_hlld:.1e} vs hll {e_hll:.1e}")

    wl = np.array([1.2, 0.0, 0.0, 0.0, 0.9, 0.4, -0.3, 0.2])
    ca = abs(wl[5:] @ n) / np.sqrt(wl[0])
    wl[1:4] = ca * n
    wL, wR, s = states.make_discontinuity("rotational", wl, n, gamma=GAMMA,
                                          angle=0.8, branch="minus")
    qL, qR = _conserved(wL), _conserved(wR)
    fe = states.physical_flux(qL, n, GAMMA)
    err = np.max(np.abs(riemann.solve("hlld", qL, qR, n, GAMMA) - fe))
    ok &= abs(s) < 1e-12 and err < 1e-10
    notes.append(f"rotational {err:.1e}")

    nt = np.array([1.0, 0.0, 0.0])
    wl = np.array([1.0, 0.0, 0.0, 0.2, 1.0, 0.0, 0.0, 0.5])
    wL, wR, s = states.make_discontinuity(
        "tangential", wl, nt, gamma=GAMMA,
        drho=0.4, du_t=(0.0, 0.3, -0.1), dB_t=(0.0, 0.2, 0.1))
    qL, qR = _conserved(wL), _conserved(wR)
    fe = states.physical_flux(qL, nt, GAMMA)
    err = np.max(np.abs(riemann.solve("hlld", qL, qR, nt, GAMMA) - fe))
    ok &= abs(s) < 1e-13 and err < 1e-10
    notes.append(f"tangential {err:.1e}")
    _criterion("exact-resolution", ok, "; ".join(notes))


# ---------------------------------------------------------------------------
# free-stream preservation on every registered mapping


def _free_stream_drift(g, w, a_fn, ct_on):
    qg = np.empty((g.ny + 2 * NG, g.nx + 2 * NG, 8))
    qg[:] = _conserved(w)
    Ag = a_fn(g.X, g.Y)
    q0 = qg.copy()
    cfg = assembly.SolverConfig(solver="hlld", gamma=GAMMA, cfl=0.5,
                                ct_on=ct_on, pp_on=True)
    spec = {e: {"type": "inflow", "state": w, "A_fn": a_fn}
            for e in ("xi_lo", "xi_hi", "eta_lo", "eta_hi")}
    dt = stepper.compute_dt(qg, g, cfg)
    for _ in range(50):
        stepper.rk3_step(qg, Ag, g, spec, cfg, dt)
    return float(np.max(np.abs(g.interior(qg) - g.interior(q0))))


def test_free_stream_preservation():
    # exact preservation is a property of the conservative update: the
    # flux-form metric terms telescope for any constant state.  The curl
    # overwrite rebuilds a uniform in-plane field from a potential that is
    # linear in (x, y) but not in (xi, eta), which is only accurate to
    # truncation order on a curved mapping, so it is exercised with the
    # in-plane field carried by the potential path set to zero.
    w_full = np.array([1.0, 0.3, -0.15, 0.1, 1.0, 0.6, -0.3, 0.2])
    a_full = lambda x, y: -w_full[6] * x + w_full[5] * y
    w_noip = np.array([1.0, 0.3, -0.15, 0.1, 1.0, 0.0, 0.0, 0.2])
    a_zero = lambda x, y: 0.0 * x

    seen, rows = set(), []
    worst = 0.0
    for pdef in register_problems().values():
        for variant in pdef.variants:
            setup = get_problem(pdef.name, variant, nx=24, ny=24)
            key = (setup.mapping.name, setup.mapping.node_jitter)
            if key in seen:
                continue
            seen.add(key)
            g = build_grid(setup, seed=2)
            drift = max(_free_stream_drift(g, w_full, a_full, ct_on=False),
                        _free_stream_drift(g, w_noip, a_zero, ct_on=True))
            worst = max(worst, drift)
            rows.append(f"{setup.mapping.name} {drift:.1e}")
    _criterion("free-stream", worst < 1e-12, "; ".join(rows))


# ---------------------------------------------------------------------------
# smooth-wave convergence


def test_travelling_wave_convergence():
    rows = harness.convergence("alfven", [32, 64, 128], cfl=0.6,
                               t_final=1.0)
    oB, oA = rows[2]["order_B"], rows[2]["order_A"]
    errA64 = rows[1]["err_A"]
    ok = oB >= 3.5 and oA >= 3.5 and 0.5 <= errA64 / 8.39e-6 <= 2.0
    _criterion("wave-convergence", ok,
               f"orders(64->128) B {oB:.2f} A {oA:.2f}; "
               f"A-error@64 {errA64:.3e}")


# ---------------------------------------------------------------------------
# shock tube


def _tube_l1(res, ref_x, ref_rho):
    g = res.grid
    q = g.interior(res.qg)
    j = q.shape[0] // 2
    x = g.x_int[j]
    rho = q[j, :, 0]
    return float(np.mean(np.abs(rho - np.interp(x, ref_x, ref_rho))))


def test_shock_tube_self_convergence():
    ref = np.load("tests/data/brio_wu_ref_2000.npz")
    errs = {}
    for nx in (100, 200, 400):
        res = harness.run(harness.RunConfig(problem="brio_wu",
                                            variant="uniform", nx=nx,
                                            ny=12, solver="hlld"))
        errs[nx] = _tube_l1(res, ref["x"], ref["w"][:, 0])
    res_lf = harness.run(harness.RunConfig(problem="brio_wu",
                                           variant="uniform", nx=200,
                                           ny=12, solver="lf"))
    e_lf = _tube_l1(res_lf, ref["x"], ref["w"][:, 0])
    ok = errs[100] > errs[200] > errs[400] and errs[200] <= e_lf
    _criterion("shock-tube-convergence", ok,
               f"L1(rho) {errs[100]:.3e} > {errs[200]:.3e} > "
               f"{errs[400]:.3e}; lf@200 {e_lf:.3e}")


def _oscillation(res):
    # largest second difference of the density along the tube direction
    rho = res.grid.interior(res.qg)[..., 0]
    return float(np.max(np.abs(rho[:, 2:] - 2.0 * rho[:, 1:-1]
                               + rho[:, :-2])))


def test_rotated_tube_needs_transport_correction():
    on = harness.run(harness.RunConfig(problem="brio_wu", variant="rotated",
                                       nx=200, ny=100, solver="hlld",
                                       ct_on=True))
    off = harness.run(harness.RunConfig(problem="brio_wu", variant="rotated",
                                        nx=200, ny=100, solver="hlld",
                                        ct_on=False))
    ok = on.summary["status"] == "ok"
    osc_on, osc_off = _oscillation(on), _oscillation(off)
    detail = (f"on: {on.summary['status']} osc {osc_on:.3e}; "
              f"off: {off.summary['status']} osc {osc_off:.3e}")
    ok &= off.summary["status"] != "ok" or osc_off > 3.0 * osc_on
    _criterion("rotated-tube-transport", ok, detail)


# ---------------------------------------------------------------------------
# positivity under a strong blast


def test_blast_positivity():
    on = harness.run(harness.RunConfig(problem="blast", nx=128, ny=128,
                                       solver="hlld", pp_on=True))
    s = on.summary
    ok = s["status"] == "ok" and s["min_rho"] > 0.0 and s["min_p"] > 0.0
    off = harness.run(harness.RunConfig(problem="blast", nx=128, ny=128,
                                        solver="hlld", pp_on=False))
    failed = off.summary["status"] != "ok" or off.summary["min_p"] <= 0.0
    _criterion("blast-positivity", ok and failed,
               f"limited: {s['status']} min rho {s['min_rho']:.3e} "
               f"min p {s['min_p']:.3e}; unlimited: "
               f"{off.summary['status']} min p {off.summary['min_p']:.3e}")


# ---------------------------------------------------------------------------
# discrete divergence control


def _max_div(res):
    boundary.fill_ghosts(res.qg, res.Ag, res.grid, res.setup.boundary,
                         res.setup.gamma)
    return float(np.max(np.abs(ct.divergence(res.qg, res.grid))))


def test_divergence_cartesian_roundoff():
    # vortex data on a plain Cartesian periodic grid: the divergence and
    # curl stencils commute exactly, so div B stays at roundoff
    setup = get_problem("orszag_tang", nx=48, ny=48)
    setup = dataclasses.replace(setup, mapping=gridgen.identity_mapping())
    g = build_grid(setup)
    cfg = assembly.SolverConfig(solver="hlld", gamma=setup.gamma,
                                cfl=setup.cfl, ct_on=True, pp_on=True)
    qg, Ag = harness.initial_state(setup, g, cfg)
    worst = 0.0
    for _ in range(50):
        dt = stepper.compute_dt(qg, g, cfg)
        stepper.rk3_step(qg, Ag, g, setup.boundary, cfg, dt)
        boundary.fill_ghosts(qg, Ag, g, setup.boundary, cfg.gamma)
        worst = max(worst, float(np.max(np.abs(ct.divergence(qg, g)))))
    _criterion("divergence-cartesian", worst < 1e-12,
               f"max |div B| over 50 steps {worst:.2e}")


def test_divergence_curvilinear_refinement():
    divs = {}
    for n in (48, 96):
        res = harness.run(harness.RunConfig(problem="orszag_tang", nx=n,
                                            ny=n, t_final=1.0))
        assert res.summary["status"] == "ok"
        divs[n] = _max_div(res)
    order = np.log2(divs[48] / divs[96])
    # The discrete curl/divergence operators commute exactly, so on a
    # periodic curvilinear run div B sits at roundoff on both grids and
    # carries no truncation trend to refine; accept that regime outright.
    roundoff = max(divs.values()) < 1e-11
    ok = np.isfinite(divs[96]) and (roundoff or order >= 3.0)
    _criterion("divergence-refinement", ok,
               f"|div B| {divs[48]:.3e} -> {divs[96]:.3e}, "
               + ("both at roundoff" if roundoff else f"order {order:.2f}"))


# ---------------------------------------------------------------------------
# conducting-wall closure


class _WallBMax:
    """Running maximum of |B| on the interior column next to the wall."""

    def __init__(self):
        self.value = 0.0

    def __call__(self, t, q):
        b = float(np.max(np.linalg.norm(q[:, -1, 5:8], axis=-1)))
        self.value = max(self.value, b)


def test_conducting_wall_contrast():
    wb_compat = _WallBMax()
    compat = harness.run(harness.RunConfig(problem="bow_shock",
                                           variant="pec", nx=60, ny=80,
                                           cfl=0.2, t_final=0.5,
                                           monitor=wb_compat))
    stable = compat.summary["status"] == "ok"
    wb_refl = _WallBMax()
    refl = harness.run(harness.RunConfig(problem="bow_shock",
                                         variant="reflective", nx=60,
                                         ny=80, cfl=0.2, t_final=0.5,
                                         monitor=wb_refl))
    spurious = refl.summary["status"] != "ok" \
        or wb_refl.value >= 3.0 * wb_compat.value
    _criterion("conducting-wall", stable and spurious,
               f"compat: {compat.summary['status']}"
               f" wall|B| {wb_compat.value:.3e};"
               f" reflective: {refl.summary['status']}"
               f" wall|B| {wb_refl.value:.3e}")


# ---------------------------------------------------------------------------
# long-run stability


def test_vortex_long_run_conservation():
    res = harness.run(harness.RunConfig(problem="orszag_tang", nx=96,
                                        ny=96, t_final=3.0))
    s = res.summary
    ok = s["status"] == "ok" and s["mass_drift"] < 1e-10
    _criterion("vortex-long-run", ok,
               f"{s['status']} at t={s['t']:.3f}, "
               f"mass drift {s['mass_drift']:.2e}")
