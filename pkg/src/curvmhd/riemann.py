"""HLL-family interface flux solvers for ideal MHD.

All solvers take conserved left/right states and a *unit* normal, operate
in frame-free vector form (the normal need not be axis-aligned and the
normal magnetic field may jump across the interface), and return the
directional flux.  Callers on mapped grids scale the result by the metric
normal length.

The four-state solver resolves contact, rotational, and tangential
discontinuities; when its wave fan collapses it degrades to the two-state
(contact-only) construction, and that one degrades further to the
single-state average.  Degeneracy thresholds are hard cutoffs.
"""

from __future__ import annotations

import numpy as np

from .states import (GAMMA_DEFAULT, RHO, MX, MZ, EN, BX,
                     max_signal_speed, physical_flux, pressure,
                     primitive_from_conserved, total_pressure)

DEGEN_REL = 1e-8


def _dots(q, n):
    """(u.n, B.n, ptot, u, B) helpers for a conserved state."""
    rho = q[..., RHO]
    u = q[..., MX:MZ + 1] / rho[..., None]
    b = q[..., BX:]
    un = np.sum(u * n, axis=-1)
    bn = np.sum(b * n, axis=-1)
    ptot = pressure(q) + 0.5 * np.sum(b * b, axis=-1)
    return un, bn, ptot, u, b


def lax_friedrichs(qL, qR, n, alpha, gamma=GAMMA_DEFAULT):
    """0.5 [f(qL).n + f(qR).n - alpha (qR - qL)]."""
    fL = physical_flux(qL, n, gamma)
    fR = physical_flux(qR, n, gamma)
    alpha = np.asarray(alpha, dtype=np.float64)
    return 0.5 * (fL + fR - alpha[..., None] * (qR - qL))


def local_lax_friedrichs(qL, qR, n, gamma=GAMMA_DEFAULT):
    wL = primitive_from_conserved(qL, gamma)
    wR = primitive_from_conserved(qR, gamma)
    alpha = np.maximum(max_signal_speed(wL, n, gamma),
                       max_signal_speed(wR, n, gamma))
    return lax_friedrichs(qL, qR, n, alpha, gamma)


def estimate_outer_speeds(qL, qR, n, gamma=GAMMA_DEFAULT):
    """Davis-type bounds on the fastest left/right-going signals."""
    from .states import wave_speeds
    wL = primitive_from_conserved(qL, gamma)
    wR = primitive_from_conserved(qR, gamma)
    _, _, _, cfL = wave_speeds(wL, n, gamma)
    _, _, _, cfR = wave_speeds(wR, n, gamma)
    unL = np.sum(wL[..., 1:4] * n, axis=-1)
    unR = np.sum(wR[..., 1:4] * n, axis=-1)
    sL = np.minimum(unL - cfL, unR - cfR)
    sR = np.maximum(unL + cfL, unR + cfR)
    return sL, sR


def _safe(x, floor=1e-300):
    ax = np.abs(x)
    return np.where(ax > floor, x, np.where(x >= 0.0, floor, -floor))


def hll(qL, qR, n, sL, sR, gamma=GAMMA_DEFAULT):
    fL = physical_flux(qL, n, gamma)
    fR = physical_flux(qR, n, gamma)
    sL = np.asarray(sL, dtype=np.float64)
    sR = np.asarray(sR, dtype=np.float64)
    if np.any(sL >= sR):
        raise ValueError("hll requires sL < sR")
    ds = (sR - sL)[..., None]
    fm = (sR[..., None] * fL - sL[..., None] * fR
          + (sL * sR)[..., None] * (qR - qL)) / ds
    f = np.where(sL[..., None] >= 0.0, fL,
                 np.where(sR[..., None] <= 0.0, fR, fm))
    return f


def hll_state(qL, qR, n, sL, sR, gamma=GAMMA_DEFAULT):
    """The single intermediate state of the two-wave average."""
    fL = physical_flux(qL, n, gamma)
    fR = physical_flux(qR, n, gamma)
    ds = (sR - sL)[..., None]
    return (sR[..., None] * qR - sL[..., None] * qL + fL - fR) / ds


def _hllc_states(qL, qR, n, sL, sR, gamma):
    """Star states and entropy-wave speed of the two-state construction."""
    qh = hll_state(qL, qR, n, sL, sR, gamma)
    sm = np.sum(qh[..., MX:MZ + 1] * n, axis=-1) / qh[..., RHO]
    bstar = qh[..., BX:]
    bnh = np.sum(bstar * n, axis=-1)
    stars = []
    for q, s in ((qL, sL), (qR, sR)):
        un, bn, ptot, u, b = _dots(q, n)
        dsm = _safe(s - sm)
        rho = q[..., RHO]
        rhos = rho * (s - un) / dsm
        ptots = ptot + rho * (s - un) * (sm - un) + bnh * bnh - bn * bn
        mom = (rho[..., None] * u * (s - un)[..., None]
               + (ptots - ptot)[..., None] * n
               + bn[..., None] * b - bnh[..., None] * bstar) / dsm[..., None]
        ub = np.sum(u * b, axis=-1)
        ustar = mom / rhos[..., None]
        ubs = np.sum(ustar * bstar, axis=-1)
        en = (q[..., EN] * (s - un) + ptots * sm - ptot * un
              + bn * ub - bnh * ubs) / dsm
        qs = np.empty_like(q)
        qs[..., RHO] = rhos
        qs[..., MX:MZ + 1] = mom
        qs[..., EN] = en
        qs[..., BX:] = bstar
        stars.append(qs)
    return stars[0], stars[1], sm


def hllc(qL, qR, n, sL, sR, gamma=GAMMA_DEFAULT):
    sL = np.asarray(sL, dtype=np.float64)
    sR = np.asarray(sR, dtype=np.float64)
    if np.any(sL >= sR):
        raise ValueError("hllc requires sL < sR")
    qsL, qsR, sm = _hllc_states(qL, qR, n, sL, sR, gamma)
    fL = physical_flux(qL, n, gamma)
    fR = physical_flux(qR, n, gamma)
    f = np.where(sm[..., None] >= 0.0,
                 fL + sL[..., None] * (qsL - qL),
                 fR + sR[..., None] * (qsR - qR))
    f = np.where(sL[..., None] >= 0.0, fL, f)
    f = np.where(sR[..., None] <= 0.0, fR, f)
    # entropy wave collapsing onto an outer wave: use the two-wave average
    floor = DEGEN_REL * (sR - sL)
    bad = (np.abs(sL - sm) < floor) | (np.abs(sR - sm) < floor)
    if np.any(bad):
        f = np.where(bad[..., None], hll(qL, qR, n, sL, sR, gamma), f)
    return f


def _hlld_outer(q, s, sm, ptots, bnh, n, gamma):
    """Outer star state from the jump conditions across the fast wave."""
    un, bn, ptot, u, b = _dots(q, n)
    rho = q[..., RHO]
    dsm = s - sm
    dsu = s - un
    rhos = rho * dsu / _safe(dsm)
    d = rho * dsu * dsm - bnh * bnh
    dsafe = _safe(d)[..., None]
    ustar = ((bn * dsm - bnh * dsu)[..., None] * b
             + (rho * dsu * dsm - bnh * bn)[..., None] * u
             + ((ptots - ptot) * dsm)[..., None] * n) / dsafe
    bstar = ((rho * dsu * dsu - bnh * bn)[..., None] * b
             + (rho * dsu * (bn - bnh))[..., None] * u
             - ((ptots - ptot) * bnh)[..., None] * n) / dsafe
    ub = np.sum(u * b, axis=-1)
    ubs = np.sum(ustar * bstar, axis=-1)
    en = (q[..., EN] * dsu + ptots * sm - ptot * un + bn * ub - bnh * ubs) \
        / _safe(dsm)
    qs = np.empty_like(q)
    qs[..., RHO] = rhos
    qs[..., MX:MZ + 1] = rhos[..., None] * ustar
    qs[..., EN] = en
    qs[..., BX:] = bstar
    return qs, ustar, bstar, d


def hlld(qL, qR, n, sL, sR, gamma=GAMMA_DEFAULT):
    sL = np.asarray(sL, dtype=np.float64)
    sR = np.asarray(sR, dtype=np.float64)
    if np.any(sL >= sR):
        raise ValueError("hlld requires sL < sR")
    n = np.asarray(n, dtype=np.float64)
    qh = hll_state(qL, qR, n, sL, sR, gamma)
    sm = np.sum(qh[..., MX:MZ + 1] * n, axis=-1) / qh[..., RHO]
    bnh = np.sum(qh[..., BX:] * n, axis=-1)
    sgn = np.where(bnh >= 0.0, 1.0, -1.0)

    unL, bnL, ptotL, _, _ = _dots(qL, n)
    unR, bnR, ptotR, _, _ = _dots(qR, n)
    ptotsL = ptotL + qL[..., RHO] * (sL - unL) * (sm - unL) \
        + bnh * bnh - bnL * bnL
    ptotsR = ptotR + qR[..., RHO] * (sR - unR) * (sm - unR) \
        + bnh * bnh - bnR * bnR

    qsL, usL, bsL, dL = _hlld_outer(qL, sL, sm, ptotsL, bnh, n, gamma)
    qsR, usR, bsR, dR = _hlld_outer(qR, sR, sm, ptotsR, bnh, n, gamma)

    rsl = np.sqrt(np.maximum(qsL[..., RHO], 1e-300))
    rsr = np.sqrt(np.maximum(qsR[..., RHO], 1e-300))
    ssL = sm - np.abs(bnh) / rsl
    ssR = sm + np.abs(bnh) / rsr

    denom = rsl + rsr
    uss = (rsl[..., None] * usL + rsr[..., None] * usR
           + sgn[..., None] * (bsR - bsL)) / denom[..., None]
    bss = (rsr[..., None] * bsL + rsl[..., None] * bsR
           + (sgn * rsl * rsr)[..., None] * (usR - usL)) / denom[..., None]
    ubss = np.sum(uss * bss, axis=-1)

    def inner(qs, us, bs, rs, sign):
        qi = qs.copy()
        qi[..., MX:MZ + 1] = qs[..., RHO, None] * uss
        qi[..., BX:] = bss
        qi[..., EN] = qs[..., EN] + sign * rs * sgn * (
            np.sum(us * bs, axis=-1) - ubss)
        return qi

    qssL = inner(qsL, usL, bsL, rsl, -1.0)
    qssR = inner(qsR, usR, bsR, rsr, +1.0)

    fL = physical_flux(qL, n, gamma)
    fR = physical_flux(qR, n, gamma)
    fsL = fL + sL[..., None] * (qsL - qL)
    fsR = fR + sR[..., None] * (qsR - qR)
    fssL = fsL + ssL[..., None] * (qssL - qsL)
    fssR = fsR + ssR[..., None] * (qssR - qsR)

    f = np.where(sm[..., None] >= 0.0, fssL, fssR)
    f = np.where(ssL[..., None] >= 0.0, fsL, f)
    f = np.where(ssR[..., None] <= 0.0, fsR, f)
    f = np.where(sL[..., None] >= 0.0, fL, f)
    f = np.where(sR[..., None] <= 0.0, fR, f)

    # wave-fan collapse: fall back to the two-state construction
    ds = sR - sL
    bnh2 = bnh * bnh
    # Alfven waves merging into the entropy wave (B.n -> 0) is NOT a
    # degeneracy: the inner corrections carry factors (ss - s*) that vanish
    # with the fan width, so the cascade reduces to the two outer stars.
    bad = (np.abs(dL) < DEGEN_REL * np.maximum(1.0, bnh2)) \
        | (np.abs(dR) < DEGEN_REL * np.maximum(1.0, bnh2)) \
        | (np.abs(ssL - sL) < DEGEN_REL * ds) \
        | (np.abs(ssR - sR) < DEGEN_REL * ds)
    if np.any(bad):
        f = np.where(bad[..., None], hllc(qL, qR, n, sL, sR, gamma), f)
    return f


def hlld_fan(qL, qR, n, sL, sR, gamma=GAMMA_DEFAULT):
    """All fan states and speeds, for consistency checks and diagnostics.

    Returns a dict with speeds (sL, ssL, sm, ssR, sR) and states
    (qsL, qssL, qssR, qsR) plus the shared scalars.
    """
    n = np.asarray(n, dtype=np.float64)
    sL = np.asarray(sL, dtype=np.float64)
    sR = np.asarray(sR, dtype=np.float64)
    qh = hll_state(qL, qR, n, sL, sR, gamma)
    sm = np.sum(qh[..., MX:MZ + 1] * n, axis=-1) / qh[..., RHO]
    bnh = np.sum(qh[..., BX:] * n, axis=-1)
    sgn = np.where(bnh >= 0.0, 1.0, -1.0)
    unL, bnL, ptotL, _, _ = _dots(qL, n)
    unR, bnR, ptotR, _, _ = _dots(qR, n)
    ptotsL = ptotL + qL[..., RHO] * (sL - unL) * (sm - unL) \
        + bnh * bnh - bnL * bnL
    ptotsR = ptotR + qR[..., RHO] * (sR - unR) * (sm - unR) \
        + bnh * bnh - bnR * bnR
    qsL, usL, bsL, _ = _hlld_outer(qL, sL, sm, ptotsL, bnh, n, gamma)
    qsR, usR, bsR, _ = _hlld_outer(qR, sR, sm, ptotsR, bnh, n, gamma)
    rsl = np.sqrt(qsL[..., RHO])
    rsr = np.sqrt(qsR[..., RHO])
    ssL = sm - np.abs(bnh) / rsl
    ssR = sm + np.abs(bnh) / rsr
    denom = (rsl + rsr)[..., None]
    uss = (rsl[..., None] * usL + rsr[..., None] * usR
           + sgn[..., None] * (bsR - bsL)) / denom
    bss = (rsr[..., None] * bsL + rsl[..., None] * bsR
           + (sgn * rsl * rsr)[..., None] * (usR - usL)) / denom
    ubss = np.sum(uss * bss, axis=-1)
    qssL = qsL.copy()
    qssL[..., MX:MZ + 1] = qsL[..., RHO, None] * uss
    qssL[..., BX:] = bss
    qssL[..., EN] = qsL[..., EN] - rsl * sgn * (
        np.sum(usL * bsL, axis=-1) - ubss)
    qssR = qsR.copy()
    qssR[..., MX:MZ + 1] = qsR[..., RHO, None] * uss
    qssR[..., BX:] = bss
    qssR[..., EN] = qsR[..., EN] + rsr * sgn * (
        np.sum(usR * bsR, axis=-1) - ubss)
    return {"sL": sL, "ssL": ssL, "sm": sm, "ssR": ssR, "sR": sR,
            "qsL": qsL, "qssL": qssL, "qssR": qssR, "qsR": qsR,
            "ptots": (ptotsL, ptotsR), "bnh": bnh}


_SOLVERS = ("lf", "llf", "hll", "hllc", "hlld")


def solve(name, qL, qR, n, gamma=GAMMA_DEFAULT, alpha_global=None):
    """Dispatch an interface flux by solver name.

    Identical left/right states short-circuit to the physical flux so
    constant fields see the exact directional flux bit-for-bit.
    """
    qL = np.asarray(qL, dtype=np.float64)
    qR = np.asarray(qR, dtype=np.float64)
    if name == "lf":
        if alpha_global is None:
            raise ValueError("lf needs a global alpha")
        f = lax_friedrichs(qL, qR, n, alpha_global, gamma)
    elif name == "llf":
        f = local_lax_friedrichs(qL, qR, n, gamma)
    else:
        sL, sR = estimate_outer_speeds(qL, qR, n, gamma)
        if name == "hll":
            f = hll(qL, qR, n, sL, sR, gamma)
        elif name == "hllc":
            f = hllc(qL, qR, n, sL, sR, gamma)
        elif name == "hlld":
            f = hlld(qL, qR, n, sL, sR, gamma)
        else:
            raise ValueError(f"unknown solver {name!r}")
    same = np.all(qL == qR, axis=-1)
    if np.any(same):
        f = np.where(same[..., None], physical_flux(qL, n, gamma), f)
    return f
