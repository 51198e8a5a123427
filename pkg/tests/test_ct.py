"""Constrained transport: curl consistency, divergence, selective overwrite."""

import numpy as np
import pytest

from curvmhd import assembly, ct, gridgen, harness, problems


def _loop_setup(nx=24, variant="curve"):
    s = problems.get_problem("field_loop", variant, nx=nx, ny=nx)
    g = problems.build_grid(s)
    cfg = assembly.SolverConfig(solver="hlld", gamma=s.gamma, cfl=0.4,
                                ct_on=True, pp_on=True)
    qg, Ag = harness.initial_state(s, g, cfg)
    return s, g, qg, Ag


class TestCurl:
    def test_initial_field_is_discrete_curl(self):
        _, g, qg, Ag = _loop_setup()
        b1, b2 = ct.curl_to_b(Ag, g)
        np.testing.assert_array_equal(g.interior(qg)[..., 5], b1)
        np.testing.assert_array_equal(g.interior(qg)[..., 6], b2)

    def test_curl_of_constant_potential_vanishes(self):
        _, g, qg, Ag = _loop_setup()
        b1, b2 = ct.curl_to_b(np.full_like(Ag, 3.7), g)
        assert np.max(np.abs(b1)) < 1e-13
        assert np.max(np.abs(b2)) < 1e-13

    def test_linear_potential_gives_uniform_field(self):
        # A = c1 x + c2 y  ->  B = (dA/dy, -dA/dx) = (c2, -c1)
        g = gridgen.Grid(gridgen.identity_mapping(), 24, 24)
        A = 0.3 * g.X + 0.8 * g.Y
        b1, b2 = ct.curl_to_b(A, g)
        np.testing.assert_allclose(b1, 0.8, atol=1e-12)
        np.testing.assert_allclose(b2, -0.3, atol=1e-12)

    def test_curl_field_divergence_free(self):
        _, g, qg, Ag = _loop_setup()
        div = ct.divergence(qg, g)
        assert np.max(np.abs(div)) < 1e-13


class TestDivergence:
    def test_uniform_field_divergence_free(self):
        _, g, qg, _ = _loop_setup()
        qg = qg.copy()
        qg[..., 5] = 0.6
        qg[..., 6] = -0.4
        assert np.max(np.abs(ct.divergence(qg, g))) < 1e-12

    def test_linear_divergent_field_detected(self):
        g = gridgen.Grid(gridgen.identity_mapping(), 24, 24)
        qg = np.zeros((24 + 2 * g.g, 24 + 2 * g.g, 8))
        qg[..., 0] = 1.0
        qg[..., 5] = g.X          # div B = 1 exactly
        np.testing.assert_allclose(ct.divergence(qg, g), 1.0, atol=1e-11)


class TestCorrect:
    def test_overwrites_interior_field(self):
        _, g, qg, Ag = _loop_setup()
        q_int = g.interior(qg).copy()
        q_int[..., 5] += 0.01
        q_int[..., 6] -= 0.01
        ct.ct_correct(q_int, Ag, g)
        b1, b2 = ct.curl_to_b(Ag, g)
        np.testing.assert_array_equal(q_int[..., 5], b1)
        np.testing.assert_array_equal(q_int[..., 6], b2)

    def test_skip_edges_preserves_boundary_band(self):
        _, g, qg, Ag = _loop_setup()
        q_int = g.interior(qg).copy()
        q_int[..., 5] += 0.01
        kept = q_int[..., 5].copy()
        ct.ct_correct(q_int, Ag, g, skip_edges=("xi_lo", "eta_hi"))
        m = ct.CT_MARGIN
        np.testing.assert_array_equal(q_int[:, :m, 5], kept[:, :m])
        np.testing.assert_array_equal(q_int[-m:, :, 5], kept[-m:, :])
        b1, _ = ct.curl_to_b(Ag, g)
        np.testing.assert_array_equal(q_int[m:-m, m:, 5], b1[m:-m, m:])

    def test_energy_floor_protects_internal_energy(self):
        # drain the energy so the curl field would leave e < floor: the
        # overwrite must be skipped there and the state stays admissible
        _, g, qg, Ag = _loop_setup()
        q_int = g.interior(qg).copy()
        b1, b2 = ct.curl_to_b(Ag, g)
        kin = 0.5 * np.sum(q_int[..., 1:4] ** 2, axis=-1) / q_int[..., 0]
        mag = 0.5 * (b1 ** 2 + b2 ** 2 + q_int[..., 7] ** 2)
        q_int[..., 4] = kin + mag + 1e-8          # nearly zero pressure
        q_int[..., 5] = 0.0
        q_int[..., 6] = 0.0
        ct.ct_correct(q_int, Ag, g, e_floor=1e-6)
        e = q_int[..., 4] - 0.5 * np.sum(q_int[..., 1:4] ** 2, axis=-1) \
            / q_int[..., 0] - 0.5 * np.sum(q_int[..., 5:8] ** 2, axis=-1)
        assert np.all(e > 0.0)

    def test_energy_floor_inactive_when_affordable(self):
        _, g, qg, Ag = _loop_setup()
        q_int = g.interior(qg).copy()
        q_int[..., 4] += 10.0                     # plenty of pressure
        q_int[..., 5] += 0.01
        ct.ct_correct(q_int, Ag, g, e_floor=1e-6)
        b1, _ = ct.curl_to_b(Ag, g)
        np.testing.assert_array_equal(q_int[..., 5], b1)


class TestPotentialTransport:
    def test_static_state_freezes_potential(self):
        _, g, qg, Ag = _loop_setup()
        qg = qg.copy()
        qg[..., 1:4] = 0.0       # u = 0 everywhere
        rhs = ct.potential_rhs(Ag, qg, g)
        assert np.max(np.abs(rhs)) < 1e-13

    def test_uniform_advection_transports_potential(self):
        # dA/dt = -u . grad A; uniform u and linear A give a constant rhs
        g = gridgen.Grid(gridgen.identity_mapping(), 24, 24)
        qg = np.zeros((24 + 2 * g.g, 24 + 2 * g.g, 8))
        qg[..., 0] = 1.0
        qg[..., 1] = 0.7
        qg[..., 2] = -0.2
        qg[..., 4] = 1.0
        A = 0.5 * g.X + 0.25 * g.Y
        rhs = ct.potential_rhs(A, qg, g)
        expect = -(0.7 * 0.5 + (-0.2) * 0.25)
        np.testing.assert_allclose(rhs, expect, atol=1e-11)

    def test_advection_velocities_match_momentum(self):
        _, g, qg, _ = _loop_setup()
        out = ct.advection_velocities(qg, g)
        q = g.interior(qg)
        u = q[..., 1] / q[..., 0]
        v = q[..., 2] / q[..., 0]
        gx = g.interior(g.grad_xi())
        ge = g.interior(g.grad_eta())
        uxi = u * gx[..., 0] + v * gx[..., 1]
        ueta = u * ge[..., 0] + v * ge[..., 1]
        np.testing.assert_allclose(out[0], uxi, atol=1e-13)
        np.testing.assert_allclose(out[1], ueta, atol=1e-13)
