"""State algebra for ideal MHD.

Conserved vector layout (last axis, length 8):

    0: rho        mass density
    1: rho*u      x-momentum
    2: rho*v      y-momentum
    3: rho*w      z-momentum
    4: E          total energy (thermal + kinetic + magnetic)
    5: B1         x magnetic field
    6: B2         y magnetic field
    7: B3         z magnetic field

Primitive vector layout mirrors it with velocity and gas pressure:

    0: rho, 1: u, 2: v, 3: w, 4: p, 5: B1, 6: B2, 7: B3

All routines are vectorized over arbitrary leading dimensions.
"""

from __future__ import annotations

import numpy as np

GAMMA_DEFAULT = 5.0 / 3.0

# Component indices, used throughout the package.
RHO, MX, MY, MZ, EN, BX, BY, BZ = range(8)
# Primitive indices share RHO/BX/BY/BZ; velocity and pressure:
VU, VV, VW, PR = 1, 2, 3, 4


def conserved_from_primitive(w, gamma=GAMMA_DEFAULT):
    """Map primitive variables (rho, u, v, w, p, B) to conserved ones."""
    w = np.asarray(w, dtype=np.float64)
    q = np.empty_like(w)
    rho = w[..., RHO]
    vel = w[..., VU:VW + 1]
    p = w[..., PR]
    b = w[..., BX:]
    q[..., RHO] = rho
    q[..., MX:MZ + 1] = rho[..., None] * vel
    ke = 0.5 * rho * np.sum(vel * vel, axis=-1)
    me = 0.5 * np.sum(b * b, axis=-1)
    q[..., EN] = p / (gamma - 1.0) + ke + me
    q[..., BX:] = b
    return q


def primitive_from_conserved(q, gamma=GAMMA_DEFAULT):
    """Map conserved variables to primitive ones.  No positivity checks."""
    q = np.asarray(q, dtype=np.float64)
    w = np.empty_like(q)
    rho = q[..., RHO]
    vel = q[..., MX:MZ + 1] / rho[..., None]
    b = q[..., BX:]
    ke = 0.5 * rho * np.sum(vel * vel, axis=-1)
    me = 0.5 * np.sum(b * b, axis=-1)
    w[..., RHO] = rho
    w[..., VU:VW + 1] = vel
    w[..., PR] = (gamma - 1.0) * (q[..., EN] - ke - me)
    w[..., BX:] = b
    return w


def pressure(q, gamma=GAMMA_DEFAULT):
    """Gas pressure from a conserved state."""
    q = np.asarray(q, dtype=np.float64)
    rho = q[..., RHO]
    ke = 0.5 * np.sum(q[..., MX:MZ + 1] ** 2, axis=-1) / rho
    me = 0.5 * np.sum(q[..., BX:] ** 2, axis=-1)
    return (gamma - 1.0) * (q[..., EN] - ke - me)


def total_pressure(w):
    """Gas plus magnetic pressure from a primitive state."""
    return w[..., PR] + 0.5 * np.sum(w[..., BX:] ** 2, axis=-1)


def physical_flux(q, n, gamma=GAMMA_DEFAULT):
    """Directional flux F(q).n for a unit (or general) direction n.

    ``n`` has shape (..., 3) broadcastable against q's leading dims.  For a
    non-unit n the result is the flux tensor contracted with n, which scales
    linearly with |n|.
    """
    q = np.asarray(q, dtype=np.float64)
    n = np.asarray(n, dtype=np.float64)
    rho = q[..., RHO]
    vel = q[..., MX:MZ + 1] / rho[..., None]
    b = q[..., BX:]
    p = pressure(q, gamma)
    ptot = p + 0.5 * np.sum(b * b, axis=-1)
    un = np.sum(vel * n, axis=-1)
    bn = np.sum(b * n, axis=-1)
    ub = np.sum(vel * b, axis=-1)
    f = np.empty_like(q)
    f[..., RHO] = rho * un
    f[..., MX:MZ + 1] = (rho * un)[..., None] * vel + ptot[..., None] * n \
        - bn[..., None] * b
    f[..., EN] = (q[..., EN] + ptot) * un - bn * ub
    # induction row: n.(u B - B u); its own projection on n vanishes
    f[..., BX:] = un[..., None] * b - bn[..., None] * vel
    return f


def sound_speed(w, gamma=GAMMA_DEFAULT):
    return np.sqrt(gamma * w[..., PR] / w[..., RHO])


def wave_speeds(w, n, gamma=GAMMA_DEFAULT):
    """Characteristic speeds (a, c_a, c_s, c_f) for unit direction n.

    Returns the acoustic speed a, the Alfven speed c_a, and the slow and
    fast magnetosonic speeds.  ``n`` must be normalized.
    """
    w = np.asarray(w, dtype=np.float64)
    rho = w[..., RHO]
    # ghost closures may carry negative thermal pressure; treat the sound
    # speed as zero there (c_f below stays real and positive regardless)
    a2 = np.maximum(gamma * w[..., PR] / rho, 0.0)
    b = w[..., BX:]
    bn = np.sum(b * n, axis=-1)
    ca2 = bn * bn / rho
    bb2 = np.sum(b * b, axis=-1) / rho
    s = a2 + bb2
    disc = np.sqrt(np.maximum(s * s - 4.0 * a2 * ca2, 0.0))
    cf2 = 0.5 * (s + disc)
    cs2 = np.where(cf2 > 0.0, a2 * ca2 / np.where(cf2 > 0.0, cf2, 1.0), 0.0)
    return np.sqrt(a2), np.sqrt(ca2), np.sqrt(np.maximum(cs2, 0.0)), \
        np.sqrt(cf2)


def eigenvalues(w, n, gamma=GAMMA_DEFAULT):
    """The eight characteristic speeds along unit n, sorted slow-to-fast.

    Order: u.n - cf, u.n - ca, u.n - cs, u.n, u.n, u.n + cs, u.n + ca,
    u.n + cf.  The two middle entries are the entropy and divergence waves.
    """
    _, ca, cs, cf = wave_speeds(w, n, gamma)
    un = np.sum(w[..., VU:VW + 1] * n, axis=-1)
    lam = np.stack([un - cf, un - ca, un - cs, un, un,
                    un + cs, un + ca, un + cf], axis=-1)
    return lam


def max_signal_speed(w, nvec, gamma=GAMMA_DEFAULT):
    """|u.n| + c_f(n) for a possibly non-unit direction vector nvec.

    Scales with |nvec|; used both for LF dissipation (unit n) and for the
    CFL estimate on mapped grids (nvec = grad xi).
    """
    nvec = np.asarray(nvec, dtype=np.float64)
    norm = np.sqrt(np.sum(nvec * nvec, axis=-1))
    safe = np.where(norm > 0.0, norm, 1.0)
    nhat = nvec / safe[..., None]
    _, _, _, cf = wave_speeds(w, nhat, gamma)
    un = np.sum(w[..., VU:VW + 1] * nhat, axis=-1)
    return norm * (np.abs(un) + cf)


def _tangent_basis(n):
    """Two unit tangents completing unit normal n to a right-handed triad."""
    n = np.asarray(n, dtype=np.float64)
    ez = np.zeros_like(n)
    ez[..., 2] = 1.0
    ex = np.zeros_like(n)
    ex[..., 0] = 1.0
    alt = np.where(np.abs(n[..., 2:3]) < 0.9, ez, ex)
    t1 = np.cross(alt, n)
    t1 /= np.linalg.norm(t1, axis=-1, keepdims=True)
    t2 = np.cross(n, t1)
    return t1, t2


def make_discontinuity(kind, left, n, gamma=GAMMA_DEFAULT, **params):
    """Construct an exact MHD discontinuity from a left primitive state.

    Returns (w_left, w_right, speed) such that the Rankine-Hugoniot
    condition S (q_R - q_L) = F(q_R).n - F(q_L).n holds exactly.

    kind = "contact": requires B.n != 0; params: density_ratio.
    kind = "rotational": tangential B rotated by params["angle"]; the
        tangential velocity jump follows the Alfven relation.  params:
        angle, branch ("minus" -> S = u.n - c_a, "plus" -> S = u.n + c_a).
    kind = "tangential": requires B.n == 0; arbitrary jumps in rho, u_t,
        B_t with continuous total pressure.  params: drho, du_t (3-vector,
        tangential), dB_t (3-vector, tangential).
    """
    wl = np.asarray(left, dtype=np.float64).copy()
    n = np.asarray(n, dtype=np.float64)
    n = n / np.linalg.norm(n)
    bn = float(wl[BX:] @ n)
    un = float(wl[VU:VW + 1] @ n)
    wr = wl.copy()
    if kind == "contact":
        if abs(bn) < 1e-12:
            raise ValueError("contact discontinuity needs B.n != 0")
        wr[RHO] = wl[RHO] * params["density_ratio"]
        return wl, wr, un
    if kind == "rotational":
        angle = params["angle"]
        branch = params.get("branch", "minus")
        t1, t2 = _tangent_basis(n)
        bt1, bt2 = float(wl[BX:] @ t1), float(wl[BX:] @ t2)
        c, s = np.cos(angle), np.sin(angle)
        bt1r, bt2r = c * bt1 - s * bt2, s * bt1 + c * bt2
        wr[BX:] = bn * n + bt1r * t1 + bt2r * t2
        db = wr[BX:] - wl[BX:]
        sgn = np.sign(bn) if bn != 0.0 else 1.0
        sr = np.sqrt(wl[RHO])
        ca = abs(bn) / sr
        if branch == "minus":
            wr[VU:VW + 1] = wl[VU:VW + 1] + sgn * db / sr
            speed = un - ca
        else:
            wr[VU:VW + 1] = wl[VU:VW + 1] - sgn * db / sr
            speed = un + ca
        return wl, wr, speed
    if kind == "tangential":
        if abs(bn) > 1e-12:
            raise ValueError("tangential discontinuity needs B.n == 0")
        wr[RHO] = wl[RHO] + params.get("drho", 0.0)
        dut = np.asarray(params.get("du_t", (0.0, 0.0, 0.0)), dtype=np.float64)
        dbt = np.asarray(params.get("dB_t", (0.0, 0.0, 0.0)), dtype=np.float64)
        for vec in (dut, dbt):
            if abs(float(vec @ n)) > 1e-12:
                raise ValueError("jump vectors must be tangential")
        wr[VU:VW + 1] = wl[VU:VW + 1] + dut
        wr[BX:] = wl[BX:] + dbt
        # keep total pressure continuous
        wr[PR] = wl[PR] + 0.5 * (wl[BX:] @ wl[BX:] - wr[BX:] @ wr[BX:])
        return wl, wr, un
    raise ValueError(f"unknown discontinuity kind {kind!r}")
