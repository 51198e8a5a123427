"""WENO kernels: interface interpolation, Hamilton-Jacobi derivatives,
and boundary extrapolation.

The interface kernel interpolates point values to the half point i+1/2
(fifth order on the 5-node stencil) rather than reconstructing cell
averages.  Smoothness indicators are returned alongside the value because
the flux correction limiter reuses them.
"""

from __future__ import annotations

import numpy as np

EPS_WENO = 1e-6

# linear weights of the three quadratic candidates at the half point
_D_INTERP = (5.0 / 16.0, 5.0 / 8.0, 1.0 / 16.0)


def interp_value_minus(v, axis=-1):
    """Left-biased WENO value at i+1/2 from point values (v_{i-2},...,v_{i+2}).

    ``v`` carries the 5-point stencil along ``axis``.  Returns
    (value, (beta0, beta1, beta2)) with the stencil axis removed.
    """
    v = np.moveaxis(np.asarray(v, dtype=np.float64), axis, 0)
    v0, v1, v2, v3, v4 = v[0], v[1], v[2], v[3], v[4]
    c0 = 0.375 * v2 + 0.75 * v3 - 0.125 * v4
    c1 = -0.125 * v1 + 0.75 * v2 + 0.375 * v3
    c2 = 0.375 * v0 - 1.25 * v1 + 1.875 * v2
    b0 = (13.0 / 12.0) * (v2 - 2.0 * v3 + v4) ** 2 \
        + 0.25 * (3.0 * v2 - 4.0 * v3 + v4) ** 2
    b1 = (13.0 / 12.0) * (v1 - 2.0 * v2 + v3) ** 2 + 0.25 * (v1 - v3) ** 2
    b2 = (13.0 / 12.0) * (v0 - 2.0 * v1 + v2) ** 2 \
        + 0.25 * (v0 - 4.0 * v1 + 3.0 * v2) ** 2
    a0 = _D_INTERP[0] / (b0 + EPS_WENO) ** 2
    a1 = _D_INTERP[1] / (b1 + EPS_WENO) ** 2
    a2 = _D_INTERP[2] / (b2 + EPS_WENO) ** 2
    asum = a0 + a1 + a2
    val = (a0 * c0 + a1 * c1 + a2 * c2) / asum
    return val, (b0, b1, b2)


def interp_value_linear_minus(v, axis=-1):
    """Same stencil with the linear (unlimited) weights; fifth order always."""
    v = np.moveaxis(np.asarray(v, dtype=np.float64), axis, 0)
    c0 = 0.375 * v[2] + 0.75 * v[3] - 0.125 * v[4]
    c1 = -0.125 * v[1] + 0.75 * v[2] + 0.375 * v[3]
    c2 = 0.375 * v[0] - 1.25 * v[1] + 1.875 * v[2]
    return _D_INTERP[0] * c0 + _D_INTERP[1] * c1 + _D_INTERP[2] * c2


def interp_pair(v6, axis=-1, linear=False):
    """Left and right biased interface values from the 6-node stencil.

    ``v6`` holds (v_{i-2}, ..., v_{i+3}) along ``axis``.  The right-biased
    value mirrors the left-biased kernel about the interface.  Returns
    (v_minus, v_plus, betas_minus, betas_plus).
    """
    v6 = np.moveaxis(np.asarray(v6, dtype=np.float64), axis, 0)
    vm_sten = v6[0:5]
    vp_sten = v6[5:0:-1]
    if linear:
        return (interp_value_linear_minus(vm_sten, axis=0),
                interp_value_linear_minus(vp_sten, axis=0), None, None)
    vm, bm = interp_value_minus(vm_sten, axis=0)
    vp, bp = interp_value_minus(vp_sten, axis=0)
    return vm, vp, bm, bp


def hj_derivative(d5, axis=-1):
    """Fifth-order WENO derivative value from five one-sided differences.

    ``d5`` holds the divided differences (D+phi_{i-3}, ..., D+phi_{i+1})
    along ``axis`` for the left-biased derivative at node i; feed the
    reversed stencil for the right-biased one.
    """
    d = np.moveaxis(np.asarray(d5, dtype=np.float64), axis, 0)
    v1, v2, v3, v4, v5 = d[0], d[1], d[2], d[3], d[4]
    p1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0
    p2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0
    p3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0
    b1 = (13.0 / 12.0) * (v1 - 2.0 * v2 + v3) ** 2 \
        + 0.25 * (v1 - 4.0 * v2 + 3.0 * v3) ** 2
    b2 = (13.0 / 12.0) * (v2 - 2.0 * v3 + v4) ** 2 + 0.25 * (v2 - v4) ** 2
    b3 = (13.0 / 12.0) * (v3 - 2.0 * v4 + v5) ** 2 \
        + 0.25 * (3.0 * v3 - 4.0 * v4 + v5) ** 2
    a1 = 0.1 / (b1 + EPS_WENO) ** 2
    a2 = 0.6 / (b2 + EPS_WENO) ** 2
    a3 = 0.3 / (b3 + EPS_WENO) ** 2
    return (a1 * p1 + a2 * p2 + a3 * p3) / (a1 + a2 + a3)


def extrapolate(q0, q1, q2, dxi, offset):
    """WENO extrapolation past a boundary from three interior samples.

    ``q0`` sits on the boundary node (coordinate 0), ``q1`` and ``q2`` at
    coordinates dxi and 2 dxi inward.  Evaluates the nonlinearly weighted
    extrapolant at coordinate ``offset`` (negative outside the domain).
    When the interior data is rough the weights collapse toward the
    constant candidate q0.
    """
    q0 = np.asarray(q0, dtype=np.float64)
    q1 = np.asarray(q1, dtype=np.float64)
    q2 = np.asarray(q2, dtype=np.float64)
    x = offset
    p0 = q0
    p1 = q0 + (q1 - q0) * (x / dxi)
    p2 = q0 + (-1.5 * q0 + 2.0 * q1 - 0.5 * q2) * (x / dxi) \
        + (0.5 * q0 - q1 + 0.5 * q2) * (x / dxi) ** 2
    d0 = dxi * dxi
    d1 = dxi
    d2 = 1.0 - d1 - d0
    b0 = dxi * dxi
    b1 = (q1 - q0) ** 2
    b2 = (13.0 / 12.0) * (q0 - 2.0 * q1 + q2) ** 2 \
        + (2.0 * q0 - 3.0 * q1 + q2) ** 2
    a0 = d0 / (b0 + EPS_WENO) ** 2
    a1 = d1 / (b1 + EPS_WENO) ** 2
    a2 = d2 / (b2 + EPS_WENO) ** 2
    return (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2)


# six-point interpolation of node metrics to the half point, and the
# central-difference stencils for the second/fourth flux derivatives;
# together their interface difference telescopes to the 7-point sixth-order
# first-derivative stencil, which is what makes constant states exact on
# mapped grids.
C_HALF = np.array([3.0, -25.0, 150.0, 150.0, -25.0, 3.0]) / 256.0
C_D2 = np.array([-5.0, 39.0, -34.0, -34.0, 39.0, -5.0]) / 48.0
C_D4 = np.array([1.0, -3.0, 2.0, 2.0, -3.0, 1.0]) / 2.0
SIGMA_EPS = 1e-6


def sigma_factor(betas_minus, betas_plus):
    """Correction limiter built from the outer smoothness indicators.

    Each argument is the (beta0, beta1, beta2) triple of one interpolation
    process; the factor approaches 1 in smooth data and vanishes near
    discontinuities.  Inputs broadcast; the caller reduces over components.
    """
    def one_side(b):
        b0, _, b2 = b
        lo = np.minimum(b0, b2)
        hi = np.maximum(b0, b2)
        diff = np.abs(b0 - b2)
        smax = 1.0 + diff / (SIGMA_EPS + lo)
        smin = 1.0 + diff / (SIGMA_EPS + hi)
        return smin / smax

    return np.minimum(one_side(betas_minus), one_side(betas_plus))
