"""Characteristic decomposition of the ideal-MHD flux along a direction.

The conservative flux Jacobian along a unit direction n has seven genuine
wave families (two fast, two Alfven, two slow, one entropy).  The eighth
row (normal magnetic field) is identically zero, so the Jacobian is
completed with the divergence wave: eigenvalue u.n and eigenvector e_{B.n}.
With that convention the matrix R returned here diagonalizes the augmented
quasi-linear system, while the remaining seven columns are exact
eigenvectors of the plain flux Jacobian.

Degenerate limits (vanishing tangential field, Alfven speed crossing the
sound speed) use the customary normalized projections so R stays smooth
and invertible.
"""

from __future__ import annotations

import numpy as np

from .states import (RHO, PR, VU, VW, BX, GAMMA_DEFAULT, _tangent_basis,
                     wave_speeds)

_TINY = 1e-300


def eigen_matrices(w, n, gamma=GAMMA_DEFAULT):
    """Right/left eigenvector matrices at primitive state(s) w along unit n.

    Parameters
    ----------
    w : (..., 8) primitive states
    n : (..., 3) unit directions

    Returns
    -------
    R, Rinv : (..., 8, 8) arrays with columns of R ordered
        [fast-, alfven-, slow-, entropy, divergence, slow+, alfven+, fast+].
    """
    w = np.asarray(w, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    shp = np.broadcast_shapes(w.shape[:-1], n.shape[:-1])
    w = np.broadcast_to(w, shp + (8,))
    n = np.broadcast_to(n, shp + (3,))

    t1, t2 = _tangent_basis(n)
    rho = w[..., RHO]
    b = w[..., BX:]
    vel = w[..., VU:VW + 1]

    # Wall-compatibility ghost closures may carry negative thermal
    # pressure; the projection basis only needs some positive sound speed
    # there, so floor p at a tiny fraction of the magnetic energy density.
    p = np.maximum(w[..., PR],
                   1e-6 * 0.5 * np.sum(b * b, axis=-1) + _TINY)
    if np.any(p != w[..., PR]):
        w = np.array(w)
        w[..., PR] = p

    bx = np.sum(b * n, axis=-1)
    by = np.sum(b * t1, axis=-1)
    bz = np.sum(b * t2, axis=-1)
    u = np.sum(vel * n, axis=-1)
    v = np.sum(vel * t1, axis=-1)
    ww = np.sum(vel * t2, axis=-1)

    a, ca, cs, cf = wave_speeds(w, n, gamma)
    a2 = a * a
    sqr = np.sqrt(rho)
    sgn = np.where(bx >= 0.0, 1.0, -1.0)

    df = np.maximum(cf * cf - cs * cs, _TINY)
    af2 = np.clip((a2 - cs * cs) / df, 0.0, 1.0)
    degen = (cf * cf - cs * cs) < 1e-12 * np.maximum(a2, 1e-30)
    af2 = np.where(degen, 1.0, af2)
    af = np.sqrt(af2)
    als = np.sqrt(np.clip(1.0 - af2, 0.0, 1.0))

    bt = np.hypot(by, bz)
    small = bt < 1e-150
    isq = 1.0 / np.sqrt(2.0)
    bey = np.where(small, isq, by / np.where(small, 1.0, bt))
    bez = np.where(small, isq, bz / np.where(small, 1.0, bt))

    # right eigenvectors in the rotated primitive basis
    # (rho, u, v, w, Bx, By, Bz, p)
    Rw = np.zeros(shp + (8, 8))
    gp = gamma * p

    def fast(sign, col):
        Rw[..., 0, col] = rho * af
        Rw[..., 1, col] = sign * af * cf
        Rw[..., 2, col] = -sign * als * cs * bey * sgn
        Rw[..., 3, col] = -sign * als * cs * bez * sgn
        Rw[..., 5, col] = als * a * sqr * bey
        Rw[..., 6, col] = als * a * sqr * bez
        Rw[..., 7, col] = af * gp

    def slow(sign, col):
        Rw[..., 0, col] = rho * als
        Rw[..., 1, col] = sign * als * cs
        Rw[..., 2, col] = sign * af * cf * bey * sgn
        Rw[..., 3, col] = sign * af * cf * bez * sgn
        Rw[..., 5, col] = -af * a * sqr * bey
        Rw[..., 6, col] = -af * a * sqr * bez
        Rw[..., 7, col] = als * gp

    def alfven(sign, col):
        Rw[..., 2, col] = sign * bez * sgn
        Rw[..., 3, col] = -sign * bey * sgn
        Rw[..., 5, col] = bez * sqr
        Rw[..., 6, col] = -bey * sqr

    fast(-1.0, 0)
    alfven(+1.0, 1)
    slow(-1.0, 2)
    Rw[..., 0, 3] = 1.0           # entropy
    Rw[..., 4, 4] = 1.0           # divergence wave
    slow(+1.0, 5)
    alfven(-1.0, 6)
    fast(+1.0, 7)

    # conserved-from-primitive Jacobian in the rotated basis
    M = np.zeros(shp + (8, 8))
    M[..., 0, 0] = 1.0
    for k, velk in enumerate((u, v, ww)):
        M[..., 1 + k, 0] = velk
        M[..., 1 + k, 1 + k] = rho
    M[..., 4, 0] = 0.5 * (u * u + v * v + ww * ww)
    M[..., 4, 1] = rho * u
    M[..., 4, 2] = rho * v
    M[..., 4, 3] = rho * ww
    M[..., 4, 4] = bx
    M[..., 4, 5] = by
    M[..., 4, 6] = bz
    M[..., 4, 7] = 1.0 / (gamma - 1.0)
    M[..., 5, 4] = 1.0
    M[..., 6, 5] = 1.0
    M[..., 7, 6] = 1.0

    Rrot = M @ Rw

    # rotate momentum and field rows back to the global frame
    R = np.empty_like(Rrot)
    R[..., 0, :] = Rrot[..., 0, :]
    R[..., 4, :] = Rrot[..., 4, :]
    for rows in ((1, 2, 3), (5, 6, 7)):
        r0, r1, r2 = rows
        for ax in range(3):
            R[..., r0 + ax, :] = (n[..., ax, None] * Rrot[..., r0, :]
                                  + t1[..., ax, None] * Rrot[..., r1, :]
                                  + t2[..., ax, None] * Rrot[..., r2, :])
    Rinv = np.linalg.inv(R)
    return R, Rinv
