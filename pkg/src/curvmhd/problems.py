"""Benchmark problem registry.

Each problem packages a coordinate mapping, initial primitive state and
magnetic potential, a boundary specification, and default run settings.
Several problems come in variants (grid or boundary flavors); the default
variant is listed first.  ``get_problem`` resolves a (name, variant) pair
into a concrete :class:`ProblemSetup`, optionally re-sizing the grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .gridgen import Grid, Mapping, identity_mapping

_SQ2PI = np.sqrt(2.0 * np.pi)
_SQ4PI = np.sqrt(4.0 * np.pi)


@dataclass
class ProblemSetup:
    """A fully resolved problem instance (mapping, data, defaults)."""
    name: str
    variant: str
    mapping: Mapping
    xi_span: tuple
    eta_span: tuple
    initial: Callable            # (x, y) -> primitive (..., 8)
    initial_A: Callable          # (x, y) -> potential
    boundary: dict
    nx: int
    ny: int
    t_final: float
    cfl: float = 0.5
    gamma: float = 5.0 / 3.0
    solver: str = "hlld"
    ct_on: bool = True
    pp_on: bool = True
    quasi_1d: bool = False
    exact: Optional[Callable] = None   # (t, x, y) -> (w, A)
    notes: str = ""


@dataclass(frozen=True)
class ProblemDef:
    name: str
    variants: tuple
    make: Callable
    summary: str


def _stack_w(rho, u, v, w, p, b1, b2, b3):
    return np.stack(np.broadcast_arrays(rho, u, v, w, p, b1, b2, b3),
                    axis=-1).astype(np.float64)


# ---------------------------------------------------------------------------
# smooth Alfven wave on a perturbed periodic mesh (exact solution known)

def _alfven_w(x, y, t=0.0):
    # du = +dB/sqrt(rho) with B.n = +1 selects the Alfven branch of speed
    # u.n - c_a = -1, so the profile translates toward -x.
    ph = 2.0 * np.pi * (x + t)
    s, c = 0.1 * np.sin(ph), 0.1 * np.cos(ph)
    one = np.ones_like(x)
    return _stack_w(one, 0.0 * x, s, c, 0.1 * one, one, s, c)


def _alfven_A(x, y, t=0.0):
    return y + 0.1 * np.cos(2.0 * np.pi * (x + t)) / (2.0 * np.pi)


def _make_alfven(variant, nx, ny):
    mapping = Mapping(
        x=lambda xi, eta: xi + 0.01 * np.sin(2.0 * np.pi * eta * 2.0),
        y=lambda xi, eta: eta + 0.02 * np.sin(2.0 * np.pi * xi * 4.0),
        name="perturbed-unit-square")
    per_x = {"type": "periodic", "A_offset": 0.0}
    per_y = {"type": "periodic", "A_offset": 1.0}   # A gains y each period
    return ProblemSetup(
        name="alfven", variant=variant, mapping=mapping,
        xi_span=(0.0, 1.0), eta_span=(0.0, 1.0),
        initial=_alfven_w, initial_A=_alfven_A,
        boundary={"xi_lo": per_x, "xi_hi": per_x,
                  "eta_lo": per_y, "eta_hi": per_y},
        nx=nx or 32, ny=ny or 32, t_final=1.0, cfl=0.6,
        exact=lambda t, x, y: (_alfven_w(x, y, t), _alfven_A(x, y, t)),
        notes="traveling wave, speed 1 along -x; exact solution attached")


# ---------------------------------------------------------------------------
# Brio-Wu shock tube: 1D uniform / 1D clustered / 2D rotated

BRIO_WU_LEFT = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0])
BRIO_WU_RIGHT = np.array([0.125, 0.0, 0.0, 0.0, 0.1, 0.75, -1.0, 0.0])
_BW_ANGLE = np.arctan(0.5)


def _brio_wu_w_1d(x, y):
    left = x < 0.0
    return np.where(left[..., None], BRIO_WU_LEFT, BRIO_WU_RIGHT)


def _brio_wu_A_1d(x, y):
    # A with dA/dy = B1 = 0.75 and -dA/dx = B2 = sign(-x)
    return 0.75 * y + np.abs(x)


def _clustered_x(xi, eta):
    inner = np.abs(xi) <= 0.2
    return np.where(inner, (5.0 / 9.0) * xi,
                    np.sign(xi) * (1.0 / 9.0 + (10.0 / 9.0)
                                   * (np.abs(xi) - 0.2))) + 0.0 * eta


def _brio_wu_w_rot(x, y):
    c, s = np.cos(_BW_ANGLE), np.sin(_BW_ANGLE)
    zeta = c * x + s * y
    w1d = np.where((zeta < 0.0)[..., None], BRIO_WU_LEFT, BRIO_WU_RIGHT)
    w = w1d.copy()
    w[..., 1] = c * w1d[..., 1] - s * w1d[..., 2]
    w[..., 2] = s * w1d[..., 1] + c * w1d[..., 2]
    w[..., 5] = c * w1d[..., 5] - s * w1d[..., 6]
    w[..., 6] = s * w1d[..., 5] + c * w1d[..., 6]
    return w


def _brio_wu_A_rot(x, y):
    c, s = np.cos(_BW_ANGLE), np.sin(_BW_ANGLE)
    zeta = c * x + s * y
    tau = -s * x + c * y
    return 0.75 * tau + np.abs(zeta)


def _make_brio_wu(variant, nx, ny):
    common = dict(name="brio_wu", variant=variant, t_final=0.2, gamma=2.0,
                  nx=nx or 200)
    if variant in ("uniform", "clustered"):
        mapping = identity_mapping() if variant == "uniform" else Mapping(
            x=_clustered_x, y=lambda xi, eta: eta + 0.0 * xi,
            name="clustered-line")
        return ProblemSetup(
            mapping=mapping, xi_span=(-1.0, 1.0), eta_span=(-0.5, 0.5),
            initial=_brio_wu_w_1d, initial_A=_brio_wu_A_1d,
            boundary={
                "xi_lo": {"type": "inflow", "state": BRIO_WU_LEFT,
                          "A_fn": _brio_wu_A_1d},
                "xi_hi": {"type": "outflow"},
                "eta_lo": {"type": "periodic", "A_offset": 0.75},
                "eta_hi": {"type": "periodic", "A_offset": 0.75}},
            ny=ny or 12, quasi_1d=True, ct_on=False,
            notes="solution is y-independent; eta sweep disabled and the "
                  "in-plane field evolves as a conserved variable (the "
                  "potential kink at x=0 makes its discrete curl overshoot)",
            **common)
    # rotated: wave normal (cos, sin) of atan(1/2); the solution is
    # constant along the index direction (-1, +2) when dx = dy
    return ProblemSetup(
        mapping=identity_mapping(),
        xi_span=(-1.0, 1.0), eta_span=(-0.5, 0.5),
        initial=_brio_wu_w_rot, initial_A=_brio_wu_A_rot,
        boundary={
            "xi_lo": {"type": "inflow", "state": _brio_wu_w_rot(
                np.array(-1.0), np.array(0.0)), "A_fn": _brio_wu_A_rot},
            "xi_hi": {"type": "outflow"},
            "eta_lo": {"type": "shift", "step": (-1, 2)},
            "eta_hi": {"type": "shift", "step": (-1, 2)}},
        ny=ny or 100,
        notes="requires dx == dy for the tangential index direction",
        **common)


# ---------------------------------------------------------------------------
# weakly magnetized field loop advection (curve / randomized grids)

_LOOP_R = 0.3
_LOOP_EPS = 0.001


def _field_loop_w(x, y):
    r = np.hypot(x, y)
    inside = r <= _LOOP_R
    rs = np.where(r > 0.0, r, 1.0)
    b1 = np.where(inside, -_LOOP_EPS * y / rs, 0.0)
    b2 = np.where(inside, _LOOP_EPS * x / rs, 0.0)
    one = np.ones_like(x)
    return _stack_w(one, 2.0 * one, one, 0.0 * x, one, b1, b2, 0.0 * x)


def _field_loop_A(x, y):
    r = np.hypot(x, y)
    return np.where(r <= _LOOP_R, _LOOP_EPS * (_LOOP_R - r), 0.0)


def _make_field_loop(variant, nx, ny):
    if variant == "curve":
        mapping = Mapping(
            x=lambda xi, eta: xi - 0.03 * np.sin(2.0 * np.pi * eta),
            y=lambda xi, eta: eta - 0.05 * np.sin(2.0 * np.pi * xi),
            name="curve")
    else:
        mapping = Mapping(x=lambda xi, eta: xi + 0.0 * eta,
                          y=lambda xi, eta: eta + 0.0 * xi,
                          node_jitter=0.1, name="randomized")
    per = {"type": "periodic", "A_offset": 0.0}
    return ProblemSetup(
        name="field_loop", variant=variant, mapping=mapping,
        xi_span=(-1.0, 1.0), eta_span=(-0.5, 0.5),
        initial=_field_loop_w, initial_A=_field_loop_A,
        boundary={e: per for e in ("xi_lo", "xi_hi", "eta_lo", "eta_hi")},
        nx=nx or 200, ny=ny or 100, t_final=2.0,
        notes="advects around the periodic box; returns to start at t=2")


# ---------------------------------------------------------------------------
# Orszag-Tang vortex on a perturbed periodic mesh

def _make_orszag_tang(variant, nx, ny):
    g = 5.0 / 3.0

    def w0(x, y):
        one = np.ones_like(x)
        return _stack_w(g * g * one, -np.sin(y), np.sin(x), 0.0 * x,
                        g * one, -np.sin(y), np.sin(2.0 * x), 0.0 * x)

    def A0(x, y):
        return 0.5 * np.cos(2.0 * x) + np.cos(y)

    mapping = Mapping(
        x=lambda xi, eta: xi + 0.03 * np.sin(2.0 * eta),
        y=lambda xi, eta: eta + 0.05 * np.sin(4.0 * xi),
        name="perturbed-torus")
    per = {"type": "periodic", "A_offset": 0.0}
    two_pi = 2.0 * np.pi
    return ProblemSetup(
        name="orszag_tang", variant=variant, mapping=mapping,
        xi_span=(0.0, two_pi), eta_span=(0.0, two_pi),
        initial=w0, initial_A=A0,
        boundary={e: per for e in ("xi_lo", "xi_hi", "eta_lo", "eta_hi")},
        nx=nx or 192, ny=ny or 192, t_final=3.0)


# ---------------------------------------------------------------------------
# cloud-shock interaction (Cartesian square / annular sector)

_CS_LEFT = np.array([3.86859, 11.2536, 0.0, 0.0, 167.345,
                     0.0, 2.1826182, -2.1826182])


def _cloud_shock_w(x, y):
    r = np.hypot(x - 0.25, y - 0.5)
    right = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.56418958, 0.56418958])
    cloud = right.copy()
    cloud[0] = 10.0
    w = np.where((x < 0.05)[..., None], _CS_LEFT, right)
    in_cloud = (x > 0.05) & (r < 0.15)
    return np.where(in_cloud[..., None], cloud, w)


def _cloud_shock_A(x, y):
    return np.where(x <= 0.05, -2.1826182 * x + 0.080921431,
                    -0.56418958 * x) + 0.0 * y


def _sector_mapping():
    def ang(eta):
        return np.pi + (1.0 - 2.0 * eta) * np.pi / 4.0

    return Mapping(
        x=lambda xi, eta: (3.0 - 2.0 * xi) * np.cos(ang(eta))
        + 3.0 * np.cos(np.pi / 4.0),
        y=lambda xi, eta: (3.0 - 2.0 * xi) * np.sin(ang(eta)) + 0.5,
        name="annular-sector")


def _make_cloud_shock(variant, nx, ny):
    mapping = identity_mapping() if variant == "cartesian" \
        else _sector_mapping()
    return ProblemSetup(
        name="cloud_shock", variant=variant, mapping=mapping,
        xi_span=(0.0, 1.0), eta_span=(0.0, 1.0),
        initial=_cloud_shock_w, initial_A=_cloud_shock_A,
        boundary={
            "xi_lo": {"type": "inflow", "state": _CS_LEFT,
                      "A_fn": lambda x, y: -2.1826182 * x + 0.080921431},
            "xi_hi": {"type": "outflow"},
            "eta_lo": {"type": "outflow"},
            "eta_hi": {"type": "outflow"}},
        nx=nx or 256, ny=ny or 256, t_final=0.06)


# ---------------------------------------------------------------------------
# rotor spin-up in a uniform field, wavy stationary grid

def _rotor_w(x, y):
    r0, r1 = 0.1, 0.115
    r = np.hypot(x - 0.5, y - 0.5)
    f = np.clip((r1 - r) / (r1 - r0), 0.0, 1.0)
    rs = np.where(r > 0.0, r, 1.0)
    rho = np.where(r <= r0, 10.0, np.where(r <= r1, 1.0 + 9.0 * f, 1.0))
    omega = np.where(r <= r0, 1.0 / r0, np.where(r <= r1, f / rs, 0.0))
    u = -omega * (y - 0.5)
    v = omega * (x - 0.5)
    b1 = 2.5 / _SQ4PI
    one = np.ones_like(x)
    return _stack_w(rho, u, v, 0.0 * x, 0.5 * one, b1 * one, 0.0 * x, 0.0 * x)


def _wavy_mapping(shift):
    """Product-sine perturbation of the unit square, fixed boundary."""
    ex = ey = 0.1

    def xm(xi, eta):
        return xi - shift + ex * np.cos(np.pi * (eta - 0.5)) \
            * np.sin(np.pi * (xi - 0.5))

    def ym(xi, eta):
        return eta - shift + ey * np.cos(np.pi * (xi - 0.5)) \
            * np.sin(np.pi * (eta - 0.5))

    return Mapping(x=xm, y=ym, name="wavy-square")


def _make_rotor(variant, nx, ny):
    return ProblemSetup(
        name="rotor", variant=variant, mapping=_wavy_mapping(0.0),
        xi_span=(0.0, 1.0), eta_span=(0.0, 1.0),
        initial=_rotor_w,
        initial_A=lambda x, y: 2.5 / _SQ4PI * y,
        boundary={e: {"type": "outflow"}
                  for e in ("xi_lo", "xi_hi", "eta_lo", "eta_hi")},
        nx=nx or 256, ny=ny or 256, t_final=0.295)


# ---------------------------------------------------------------------------
# strong blast in a low-beta background (positivity stress)

def _blast_w(x, y):
    r = np.hypot(x, y)
    p = np.where(r <= 0.1, 1000.0, 0.1)
    b = 50.0 / _SQ2PI
    one = np.ones_like(x)
    return _stack_w(one, 0.0 * x, 0.0 * x, 0.0 * x, p, b * one, b * one,
                    0.0 * x)


def _make_blast(variant, nx, ny):
    return ProblemSetup(
        name="blast", variant=variant, mapping=_wavy_mapping(0.5),
        xi_span=(0.0, 1.0), eta_span=(0.0, 1.0),
        initial=_blast_w,
        initial_A=lambda x, y: 50.0 / _SQ2PI * (y - x),
        boundary={e: {"type": "outflow", "A_mode": "quadratic"}
                  for e in ("xi_lo", "xi_hi", "eta_lo", "eta_hi")},
        nx=nx or 256, ny=ny or 256, t_final=0.01, gamma=1.4)


# ---------------------------------------------------------------------------
# stationary bow shock around a perfectly conducting cylinder

_BS_R0 = 0.125
_BS_DR = 0.125


def _bow_shock_w(x, y):
    r = np.hypot(x, y)
    rs = np.where(r > 0.0, r, 1.0)
    arg = np.pi * (r - _BS_R0) / (2.0 * _BS_DR)
    ramp = r <= _BS_R0 + _BS_DR
    b1 = np.where(ramp, 0.1 * (np.pi * y * y / (2.0 * _BS_DR * rs)
                               * np.cos(arg) + np.sin(arg)), 0.1)
    b2 = np.where(ramp, -0.1 * np.pi * x * y / (2.0 * _BS_DR * rs)
                  * np.cos(arg), 0.0)
    one = np.ones_like(x)
    return _stack_w(one, 2.0 * one, 0.0 * x, 0.0 * x, 0.2 * one,
                    b1, b2, 0.0 * x)


def _bow_shock_A(x, y):
    r = np.hypot(x, y)
    arg = np.pi * (r - _BS_R0) / (2.0 * _BS_DR)
    return np.where(r <= _BS_R0 + _BS_DR, 0.1 * y * np.sin(arg), 0.1 * y)


def _bow_shock_mapping():
    r1, r2, r0, th = 0.3, 0.65, _BS_R0, 5.0 * np.pi / 12.0

    def ang(eta):
        return np.pi + (1.0 - 2.0 * eta) * th

    return Mapping(
        x=lambda xi, eta: (r1 - (r1 - r0) * xi) * np.cos(ang(eta)),
        y=lambda xi, eta: (r2 - (r2 - r0) * xi) * np.sin(ang(eta)),
        name="bow-sector")


def _make_bow_shock(variant, nx, ny):
    inflow_state = np.array([1.0, 2.0, 0.0, 0.0, 0.2, 0.1, 0.0, 0.0])
    wall = {"type": "pec", "A0": 0.0} if variant == "pec" \
        else {"type": "reflective"}
    return ProblemSetup(
        name="bow_shock", variant=variant, mapping=_bow_shock_mapping(),
        xi_span=(0.0, 1.0), eta_span=(0.0, 1.0),
        initial=_bow_shock_w, initial_A=_bow_shock_A,
        boundary={
            "xi_lo": {"type": "inflow", "state": inflow_state,
                      "A_fn": lambda x, y: 0.1 * y},
            "xi_hi": wall,
            "eta_lo": {"type": "outflow"},
            "eta_hi": {"type": "outflow"}},
        nx=nx or 120, ny=ny or 160, t_final=5.0, cfl=0.2, solver="llf",
        notes="magnetic field ramped near the wall so B.n = 0 and "
              "B = curl A hold exactly at t = 0")


# ---------------------------------------------------------------------------

_DEFS = (
    ProblemDef("alfven", ("default",), _make_alfven,
               "smooth circularly polarized wave, exact solution"),
    ProblemDef("brio_wu", ("uniform", "clustered", "rotated"), _make_brio_wu,
               "shock tube: 1D uniform/clustered mesh, 2D rotated"),
    ProblemDef("field_loop", ("curve", "randomized"), _make_field_loop,
               "weak field loop advection"),
    ProblemDef("orszag_tang", ("default",), _make_orszag_tang,
               "vortex turbulence benchmark"),
    ProblemDef("cloud_shock", ("cartesian", "sector"), _make_cloud_shock,
               "shock hitting a dense bubble"),
    ProblemDef("rotor", ("default",), _make_rotor,
               "spinning dense disk in a uniform field"),
    ProblemDef("blast", ("default",), _make_blast,
               "strong blast, low-beta background"),
    ProblemDef("bow_shock", ("pec", "reflective"), _make_bow_shock,
               "stationary bow shock at a conducting cylinder"),
)


def register_problems():
    """Name -> ProblemDef for all benchmarks."""
    return {d.name: d for d in _DEFS}


def get_problem(name, variant=None, nx=None, ny=None):
    reg = register_problems()
    if name not in reg:
        raise KeyError(f"unknown problem {name!r}; "
                       f"known: {', '.join(sorted(reg))}")
    d = reg[name]
    variant = variant or d.variants[0]
    if variant not in d.variants:
        raise KeyError(f"unknown variant {variant!r} of {name!r}; "
                       f"known: {', '.join(d.variants)}")
    return d.make(variant, nx, ny)


def build_grid(setup, metric="discrete", seed=0):
    return Grid(setup.mapping, setup.nx, setup.ny,
                xi_span=setup.xi_span, eta_span=setup.eta_span,
                metric=metric, seed=seed)
