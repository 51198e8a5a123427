"""Time stepping: CFL sizing, invariance, SSP order, failure detection."""

import numpy as np
import pytest

from curvmhd import assembly, gridgen, harness, problems, stepper
from curvmhd.gridgen import NG
from curvmhd.states import conserved_from_primitive, max_signal_speed

GAMMA = 5.0 / 3.0


def _uniform_setup(w, nx=16, ny=16, **cfg_kw):
    g = gridgen.Grid(gridgen.identity_mapping(), nx, ny)
    qg = np.empty((ny + 2 * NG, nx + 2 * NG, 8))
    qg[:] = conserved_from_primitive(np.asarray(w, dtype=np.float64), GAMMA)
    Ag = -w[6] * g.X + w[5] * g.Y    # uniform B = (dA/dy, -dA/dx)
    kw = dict(solver="hlld", gamma=GAMMA, cfl=0.5, ct_on=True, pp_on=True)
    kw.update(cfg_kw)
    cfg = assembly.SolverConfig(**kw)
    spec = {e: {"type": "periodic", "A_offset": 0.0} for e in
            ("xi_lo", "xi_hi", "eta_lo", "eta_hi")}
    spec["xi_lo"]["A_offset"] = spec["xi_hi"]["A_offset"] = -w[6]
    spec["eta_lo"]["A_offset"] = spec["eta_hi"]["A_offset"] = w[5]
    return g, qg, Ag, cfg, spec


class TestComputeDt:
    def test_static_gas_matches_hand_formula(self):
        # u = 0, B = 0: lam = a/dx in each direction, dt = cfl/(a/dx + a/dy)
        w = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
        g, qg, Ag, cfg, _ = _uniform_setup(w)
        a = np.sqrt(GAMMA * w[4] / w[0])
        expect = cfg.cfl / (a / g.dxi + a / g.deta)
        assert stepper.compute_dt(qg, g, cfg) == pytest.approx(expect,
                                                               rel=1e-13)

    def test_quasi_1d_ignores_eta_direction(self):
        w = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
        g, qg, Ag, cfg, _ = _uniform_setup(w, quasi_1d=True)
        a = np.sqrt(GAMMA * w[4] / w[0])
        assert stepper.compute_dt(qg, g, cfg) == pytest.approx(
            cfg.cfl / (a / g.dxi), rel=1e-13)

    def test_dt_halves_with_resolution(self):
        w = np.array([1.0, 0.4, -0.2, 0.0, 1.0, 0.3, 0.1, 0.0])
        g1, q1, _, cfg, _ = _uniform_setup(w, nx=16, ny=16)
        g2, q2, _, _, _ = _uniform_setup(w, nx=32, ny=32)
        d1 = stepper.compute_dt(q1, g1, cfg)
        d2 = stepper.compute_dt(q2, g2, cfg)
        assert d1 / d2 == pytest.approx(2.0, rel=1e-12)

    def test_dt_scales_inversely_with_signal_speed(self):
        w = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
        w4 = w.copy()
        w4[4] = 4.0                      # doubles the sound speed
        g, q1, _, cfg, _ = _uniform_setup(w)
        _, q4, _, _, _ = _uniform_setup(w4)
        assert stepper.compute_dt(q1, g, cfg) \
            == pytest.approx(2.0 * stepper.compute_dt(q4, g, cfg), rel=1e-12)


class TestUniformState:
    def test_uniform_state_is_a_fixed_point(self):
        w = np.array([1.2, 0.5, -0.3, 0.1, 0.9, 0.4, -0.2, 0.3])
        g, qg, Ag, cfg, spec = _uniform_setup(w)
        q0 = qg.copy()
        dt = stepper.compute_dt(qg, g, cfg)
        for _ in range(3):
            stepper.rk3_step(qg, Ag, g, spec, cfg, dt)
        ii = (slice(NG, NG + 16), slice(NG, NG + 16))
        assert np.max(np.abs(qg[ii] - q0[ii])) < 1e-12

    def test_no_limiting_on_uniform_state(self):
        w = np.array([1.0, 0.3, 0.2, 0.0, 1.0, 0.2, 0.1, 0.0])
        g, qg, Ag, cfg, spec = _uniform_setup(w)
        dt = stepper.compute_dt(qg, g, cfg)
        diag = stepper.rk3_step(qg, Ag, g, spec, cfg, dt)
        assert diag.n_limited == 0


class TestSSPOrder:
    def test_third_order_local_error_decay(self):
        # Richardson self-difference of a smooth problem: one step of dt
        # against two steps of dt/2 decays ~ dt^4 for a 3rd-order method.
        # The potential overwrite couples an operator split into the step,
        # so the pure integrator is measured with ct off.
        s = problems.get_problem("alfven", nx=16, ny=16)
        g = problems.build_grid(s)
        cfg = assembly.SolverConfig(solver="hlld", gamma=s.gamma, cfl=0.5,
                                    ct_on=False, pp_on=False)
        qa, Aa = harness.initial_state(s, g, cfg)
        errs = []
        for dt in (1.6e-2, 8e-3):
            q1, A1 = qa.copy(), Aa.copy()
            q2, A2 = qa.copy(), Aa.copy()
            stepper.rk3_step(q1, A1, g, s.boundary, cfg, dt)
            stepper.rk3_step(q2, A2, g, s.boundary, cfg, 0.5 * dt)
            stepper.rk3_step(q2, A2, g, s.boundary, cfg, 0.5 * dt)
            errs.append(np.max(np.abs(g.interior(q1) - g.interior(q2))))
        order = np.log2(errs[0] / errs[1])
        assert order > 3.0

    def test_convex_combination_weights(self):
        a = np.array(stepper._SSP)
        np.testing.assert_allclose(a[:, 0] + a[:, 1], 1.0, atol=1e-15)


class TestFailureDetection:
    def test_nan_state_raises(self):
        w = np.array([1.0, 0.3, 0.2, 0.0, 1.0, 0.2, 0.1, 0.0])
        g, qg, Ag, cfg, spec = _uniform_setup(w)
        qg[NG + 4, NG + 4, 4] = np.nan
        dt = 1e-4
        with pytest.raises(stepper.NanError):
            stepper.rk3_step(qg, Ag, g, spec, cfg, dt)
