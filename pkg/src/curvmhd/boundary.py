"""Ghost filling: periodic, inflow, outflow, reflective, index-shifted
extrapolation, and the PEC compatibility closure.

A BoundarySpec maps each edge of the computational rectangle
("xi_lo", "xi_hi", "eta_lo", "eta_hi") to a condition dict:

    {"type": "periodic", "A_offset": c}     ghosts wrap; the potential may
        gain/lose a constant per period (uniform background field)
    {"type": "inflow", "state": w | "state_fn": f(x, y) -> w,
     "A_fn": g(x, y) (optional)}            fixed primitive ghost state;
        potential pinned to A_fn if given, WENO-extrapolated otherwise
    {"type": "outflow"}                     zeroth-order copy; potential
        WENO-extrapolated
    {"type": "reflective"}                  mirror with n.u, n.B negated
        (xi edges only)
    {"type": "pec", "A0": const}            compatibility closure
        (xi edges only)
    {"type": "shift", "step": (di, dj)}     ghosts copied along an index
        direction of solution constancy; potential linearly extrapolated
        along the same line (eta edges only)

Edges are filled xi first, then eta; eta fills span the full ghosted width
so corners are resolved deterministically.
"""

from __future__ import annotations

import logging

import numpy as np

from .gridgen import NG
from .states import conserved_from_primitive, primitive_from_conserved
from .weno import extrapolate

log = logging.getLogger(__name__)

EDGES = ("xi_lo", "xi_hi", "eta_lo", "eta_hi")


def _wrap_axis(qg, Ag, grid, axis, a_offset):
    g = NG
    n = grid.nx if axis == 1 else grid.ny
    if axis == 1:
        qg[:, :g] = qg[:, n:n + g]
        qg[:, g + n:] = qg[:, g:2 * g]
        Ag[:, :g] = Ag[:, n:n + g] - a_offset
        Ag[:, g + n:] = Ag[:, g:2 * g] + a_offset
    else:
        qg[:g, :] = qg[n:n + g, :]
        qg[g + n:, :] = qg[g:2 * g, :]
        Ag[:g, :] = Ag[n:n + g, :] - a_offset
        Ag[g + n:, :] = Ag[g:2 * g, :] + a_offset


def _edge_indices(grid, edge):
    """(axis, wall ghosted index, inward index step)."""
    g = NG
    if edge == "xi_lo":
        return 1, g, +1
    if edge == "xi_hi":
        return 1, g + grid.nx - 1, -1
    if edge == "eta_lo":
        return 0, g, +1
    return 0, g + grid.ny - 1, -1


def _take(arr, axis, idx):
    return arr[:, idx] if axis == 1 else arr[idx]


def _put(arr, axis, idx, val):
    if axis == 1:
        arr[:, idx] = val
    else:
        arr[idx] = val


def _extrapolate_A(Ag, grid, edge):
    axis, w, din = _edge_indices(grid, edge)
    h = grid.dxi if axis == 1 else grid.deta
    a0 = _take(Ag, axis, w)
    a1 = _take(Ag, axis, w + din)
    a2 = _take(Ag, axis, w + 2 * din)
    for k in (1, 2, 3):
        _put(Ag, axis, w - k * din, extrapolate(a0, a1, a2, h, -k * h))


def _fill_inflow(qg, Ag, grid, edge, params, gamma):
    axis, w, din = _edge_indices(grid, edge)
    for k in (1, 2, 3):
        gi = w - k * din
        if "state_fn" in params:
            x = _take(grid.X, axis, gi)
            y = _take(grid.Y, axis, gi)
            wprim = params["state_fn"](x, y)
        else:
            wprim = np.asarray(params["state"], dtype=np.float64)
        _put(qg, axis, gi, conserved_from_primitive(wprim, gamma))
        if "A_fn" in params:
            x = _take(grid.X, axis, gi)
            y = _take(grid.Y, axis, gi)
            _put(Ag, axis, gi, params["A_fn"](x, y))
    if "A_fn" not in params:
        _extrapolate_A(Ag, grid, edge)


def _fill_outflow(qg, Ag, grid, edge, params):
    axis, w, din = _edge_indices(grid, edge)
    edge_q = _take(qg, axis, w)
    for k in (1, 2, 3):
        _put(qg, axis, w - k * din, edge_q)
    mode = params.get("A_mode", "weno")
    if mode in ("linear", "quadratic"):
        # plain polynomial extrapolation: robust for strong background
        # fields, where the scale-sensitive weighted extrapolant falls
        # back to a constant and corrupts the near-boundary curl
        a0 = _take(Ag, axis, w)
        a1 = _take(Ag, axis, w + din)
        a2 = _take(Ag, axis, w + 2 * din)
        for k in (1, 2, 3):
            if mode == "linear":
                val = a0 + k * (a0 - a1)
            else:
                val = a0 + k * (1.5 * a0 - 2.0 * a1 + 0.5 * a2) \
                    + 0.5 * k * k * (a0 - 2.0 * a1 + a2)
            _put(Ag, axis, w - k * din, val)
    else:
        _extrapolate_A(Ag, grid, edge)


def _wall_normals(grid, edge, idx):
    """Unit in-plane normals from grad(xi) at one ghosted column index."""
    gx = grid.J[:, idx, None] * grid.m_xi[:, idx] if edge.startswith("xi") \
        else grid.J[idx, :, None] * grid.m_eta[idx, :]
    nrm = np.linalg.norm(gx, axis=-1, keepdims=True)
    return gx / nrm


def _fill_reflective(qg, Ag, grid, edge, gamma):
    if not edge.startswith("xi"):
        raise ValueError("reflective walls are supported on xi edges")
    axis, w, din = _edge_indices(grid, edge)
    nhat = _wall_normals(grid, edge, w)      # (NyG, 2) at the wall column
    for k in (1, 2, 3):
        q = _take(qg, axis, w + k * din).copy()
        for c0 in (1, 5):                    # momentum and field blocks
            vn = q[..., c0] * nhat[..., 0] + q[..., c0 + 1] * nhat[..., 1]
            q[..., c0] -= 2.0 * vn * nhat[..., 0]
            q[..., c0 + 1] -= 2.0 * vn * nhat[..., 1]
        _put(qg, axis, w - k * din, q)
        _put(Ag, axis, w - k * din, _take(Ag, axis, w + k * din))


def _d0_transverse(arr):
    """Second-order eta-derivative along a wall column (one-sided at ends).

    ``arr`` is indexed (j, ...) over the interior rows only; spacing is
    divided out by the caller.
    """
    out = np.empty_like(arr)
    out[1:-1] = 0.5 * (arr[2:] - arr[:-2])
    out[0] = -1.5 * arr[0] + 2.0 * arr[1] - 0.5 * arr[2]
    out[-1] = 1.5 * arr[-1] - 2.0 * arr[-2] + 0.5 * arr[-3]
    return out


def _fill_pec(qg, Ag, grid, edge, params, gamma):
    """Compatibility closure for a perfectly conducting wall on a xi edge.

    Surface: project out n.u and n.B, pin A.  Ghost layer k: normal field
    from the discrete divergence-free relation, total pressure from the
    compatibility relation (widening centered differences, second order),
    everything else WENO-extrapolated; thermal pressure may come out
    negative at ghosts and is left alone.
    """
    if not edge.startswith("xi"):
        raise ValueError("PEC walls are supported on xi edges")
    axis, w, din = _edge_indices(grid, edge)
    g = NG
    rows = slice(g, g + grid.ny)
    dxi, deta = grid.dxi, grid.deta

    def col(arr, idx):
        return arr[rows, idx]

    # --- surface projection ------------------------------------------
    gxw = col(grid.grad_xi(), w)                      # grad xi at wall
    nw = gxw / np.linalg.norm(gxw, axis=-1, keepdims=True)
    if din > 0:
        nw = -nw                                      # outward normal
    wprim = primitive_from_conserved(qg[rows, w], gamma)
    for c0 in (1, 5):
        vn = wprim[..., c0] * nw[..., 0] + wprim[..., c0 + 1] * nw[..., 1]
        wprim[..., c0] -= vn * nw[..., 0]
        wprim[..., c0 + 1] -= vn * nw[..., 1]
    qg[rows, w] = conserved_from_primitive(wprim, gamma)
    Ag[rows, w] = params["A0"]

    # wall-frame quantities for the compatibility right-hand side
    gew = col(grid.grad_eta(), w)
    u2bar = np.sum(wprim[..., 1:3] * gew, axis=-1)
    b2bar = np.sum(wprim[..., 5:7] * gew, axis=-1)
    duv = np.stack([_d0_transverse(wprim[..., 1]),
                    _d0_transverse(wprim[..., 2])], axis=-1) / deta
    dB = np.stack([_d0_transverse(wprim[..., 5]),
                   _d0_transverse(wprim[..., 6])], axis=-1) / deta
    rhs = (-wprim[..., 0] * u2bar * np.sum(nw * duv, axis=-1)
           + b2bar * np.sum(nw * dB, axis=-1))

    wall_prims = [primitive_from_conserved(qg[rows, w + m * din], gamma)
                  for m in (0, 1, 2)]
    ptot_wall = [p[..., 4] + 0.5 * np.sum(p[..., 5:] ** 2, axis=-1)
                 for p in wall_prims]

    def ptot_at(idx):
        p = primitive_from_conserved(qg[rows, idx], gamma)
        return p[..., 4] + 0.5 * np.sum(p[..., 5:] ** 2, axis=-1)

    c1 = np.sum(nw * gxw, axis=-1)                    # n . grad xi
    c2 = np.sum(nw * gew, axis=-1)                    # n . grad eta
    dptot_eta = _d0_transverse(ptot_wall[0]) / deta

    # local frames along the wall column (per node, from a_xi = m_xi)
    def frame(idx):
        a = col(grid.m_xi, idx)
        length = np.linalg.norm(a, axis=-1)
        nh = a / length[..., None]
        th = np.stack([-nh[..., 1], nh[..., 0]], axis=-1)
        return nh, th, length

    aeb = np.sum(grid.m_eta[rows] * qg[rows, :, 5:7], axis=-1)
    daeb = _d0_transverse(aeb[:, w]) / deta

    neg_p = 0
    for k in (1, 2, 3):
        gi = w - k * din
        mi = w + k * din

        # extrapolate rho, velocity, tangential/out-of-plane field, A
        def extr(vals):
            return extrapolate(vals[0], vals[1], vals[2], dxi, -k * dxi)

        rho_g = extr([s[..., 0] for s in wall_prims])
        u_g = np.stack([extr([s[..., 1 + c] for s in wall_prims])
                        for c in range(3)], axis=-1)
        bt_vals = []
        for m, s in zip((0, 1, 2), wall_prims):
            _, th, _ = frame(w + m * din)
            bt_vals.append(s[..., 5] * th[..., 0] + s[..., 6] * th[..., 1])
        bt_g = extr(bt_vals)
        b3_g = extr([s[..., 7] for s in wall_prims])
        A_g = extr([Ag[rows, w + m * din] for m in (0, 1, 2)])

        # normal field from the widened divergence-free relation
        axb_mirror = np.sum(col(grid.m_xi, mi) * qg[rows, mi, 5:7], axis=-1)
        axb_ghost = axb_mirror + din * 2.0 * k * dxi * daeb
        nh_g, th_g, len_g = frame(gi)
        b2d = (axb_ghost / len_g)[..., None] * nh_g + bt_g[..., None] * th_g

        # total pressure from the widened compatibility relation
        ptot_g = ptot_at(mi) - din * 2.0 * k * dxi / c1 * (
            rhs - c2 * dptot_eta)

        bb = b2d[..., 0] ** 2 + b2d[..., 1] ** 2 + b3_g ** 2
        p_g = ptot_g - 0.5 * bb
        neg_p += int(np.count_nonzero(p_g < 0.0))
        rho_g = np.maximum(rho_g, 1e-14)

        qgst = np.empty(rho_g.shape + (8,))
        qgst[..., 0] = rho_g
        qgst[..., 1:4] = rho_g[..., None] * u_g
        qgst[..., 4] = p_g / (gamma - 1.0) \
            + 0.5 * rho_g * np.sum(u_g * u_g, axis=-1) + 0.5 * bb
        qgst[..., 5] = b2d[..., 0]
        qgst[..., 6] = b2d[..., 1]
        qgst[..., 7] = b3_g
        qg[rows, gi] = qgst
        Ag[rows, gi] = A_g
    if neg_p:
        log.debug("PEC fill: %d ghost nodes with negative thermal pressure",
                  neg_p)


def _fill_shift(qg, Ag, grid, edge, params):
    """Copy ghosts along an index direction of solution constancy."""
    if not edge.startswith("eta"):
        raise ValueError("shift fill is supported on eta edges")
    di, dj = params["step"]
    g = NG
    ny, nxg = grid.ny, qg.shape[1]
    _, w, din = _edge_indices(grid, edge)
    if dj * din <= 0:                 # orient the step to point inward
        di, dj = -di, -dj
    for k in (1, 2, 3):
        jg = w - k * din
        # smallest multiple of (di, dj) landing inside the interior rows
        m = 1
        while not (g <= jg + m * dj <= g + ny - 1):
            m += 1
        js = jg + m * dj
        cols = np.clip(np.arange(nxg) + m * di, 0, nxg - 1)
        qg[jg, :] = qg[js, cols]
        js2 = min(max(jg + 2 * m * dj, 0), qg.shape[0] - 1)
        cols2 = np.clip(np.arange(nxg) + 2 * m * di, 0, nxg - 1)
        Ag[jg, :] = 2.0 * Ag[js, cols] - Ag[js2, cols2]


def fill_ghosts(qg, Ag, grid, spec, gamma):
    """Fill all ghost layers of the conserved field and the potential."""
    if spec.get("xi_lo", {}).get("type") == "periodic":
        _wrap_axis(qg, Ag, grid, 1, spec["xi_lo"].get("A_offset", 0.0))
    if spec.get("eta_lo", {}).get("type") == "periodic":
        _wrap_axis(qg, Ag, grid, 0, spec["eta_lo"].get("A_offset", 0.0))
    for edge in EDGES:
        cond = spec[edge]
        kind = cond["type"]
        if kind == "periodic":
            continue
        if kind == "inflow":
            _fill_inflow(qg, Ag, grid, edge, cond, gamma)
        elif kind == "outflow":
            _fill_outflow(qg, Ag, grid, edge, cond)
        elif kind == "reflective":
            _fill_reflective(qg, Ag, grid, edge, gamma)
        elif kind == "pec":
            _fill_pec(qg, Ag, grid, edge, cond, gamma)
        elif kind == "shift":
            _fill_shift(qg, Ag, grid, edge, cond)
        else:
            raise ValueError(f"unknown boundary type {kind!r}")
