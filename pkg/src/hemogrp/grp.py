"""Interface time derivatives for piecewise-linear Riemann data.

Given the two extrapolated states and one-sided primitive slopes at a cell
interface, together with the local stiffness value and its derivative, this
module returns the limiting time derivatives of (A, u) (and of the
transverse velocity v in the split 2D setting) along the t-axis.

Cases: the t-axis may lie in smooth one-sided data, inside a rarefaction
fan (sonic), in the star region (nonsonic, solved from a pair of linear
relations), or on acoustic data (zero jump, differing slopes).  The
relation coefficients come from the characteristic resolution of fans and
from differentiating the Rankine-Hugoniot conditions along shocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .model import ModelParams, _area_from_wavespeed, _wave_speed
from .riemann import (
    ZERO_STRENGTH_RTOL,
    _phi_jump_derivatives_raw,
    phi_jump,
    solve_star_arrays,
)

__all__ = [
    "CASE_TAGS",
    "GrpInput",
    "InterfaceRates",
    "LinearRelation",
    "acoustic_rates",
    "grp_interface",
    "grp_rates_arrays",
    "left_rarefaction_relation",
    "left_shock_relation",
    "one_sided_rates",
    "right_rarefaction_relation",
    "right_shock_relation",
    "solve_nonsonic",
    "sonic_rates",
    "transverse_rate",
]

# integer case codes used by the vectorized dispatcher
ACOUSTIC, NONSONIC, SONIC_LEFT, SONIC_RIGHT, ONE_SIDED_LEFT, ONE_SIDED_RIGHT = range(6)
CASE_TAGS = ("acoustic", "nonsonic", "sonic-left", "sonic-right",
             "one-sided-left", "one-sided-right")


@dataclass(frozen=True)
class GrpInput:
    """Extrapolated interface states, one-sided primitive slopes, and local k."""

    A_left: float
    u_left: float
    A_right: float
    u_right: float
    dA_left: float
    du_left: float
    dA_right: float
    du_right: float
    k0: float
    kprime0: float = 0.0
    v_left: Optional[float] = None
    v_right: Optional[float] = None
    dv_left: float = 0.0
    dv_right: float = 0.0

    def __post_init__(self):
        if self.A_left <= 0.0 or self.A_right <= 0.0:
            raise ValueError("areas must be positive")
        for name in ("dA_left", "du_left", "dA_right", "du_right"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class LinearRelation:
    """a (du/dt)* + b (dA/dt)* = d."""

    a: float
    b: float
    d: float


@dataclass(frozen=True)
class InterfaceRates:
    """Limiting interface state and its time derivatives at t -> 0+."""

    dA_dt: float
    du_dt: float
    A_star: float
    u_star: float
    case_tag: str
    dv_dt: float = 0.0
    v_star: float = 0.0


# ---------------------------------------------------------------------------
# relation coefficients (vectorized kernels)

def _fan_integral_left(cL, uL, psiL, psi_slope, theta, k, kp, params):
    """d(psi)/d(alpha) along the left fan at a point with c/cL = theta."""
    m = params.m
    p = (m + 2.0) / (2.0 * m)
    qe = (m - 2.0) / (2.0 * m)
    re = (3.0 * m - 2.0) / (2.0 * m)
    wL = (m + 2.0) / m * cL  # = psi_L - beta_L
    base = wL ** (-p) * (kp / params.rho + uL * cL / m * kp / k - 2.0 * cL * psi_slope)
    return (base
            + kp / params.rho * wL ** (-p) * (theta ** (-p) - 1.0)
            - psiL / (m - 2.0) * (kp / k) * wL ** qe * (theta ** qe - 1.0)
            + 2.0 / ((m + 2.0) * (3.0 * m - 2.0)) * (kp / k) * wL ** re
            * (theta ** re - 1.0))


def _fan_integral_right(cR, uR, phiR, phi_slope, theta, k, kp, params):
    """d(phi)/d(alpha) along the right fan at a point with c/cR = theta."""
    m = params.m
    p = (m + 2.0) / (2.0 * m)
    qe = (m - 2.0) / (2.0 * m)
    re = (3.0 * m - 2.0) / (2.0 * m)
    wR = (m + 2.0) / m * cR  # = beta_R - phi_R
    base = wR ** (-p) * (kp / params.rho - uR * cR / m * kp / k + 2.0 * cR * phi_slope)
    return (base
            + kp / params.rho * wR ** (-p) * (theta ** (-p) - 1.0)
            + phiR / (m - 2.0) * (kp / k) * wR ** qe * (theta ** qe - 1.0)
            + 2.0 / ((m + 2.0) * (3.0 * m - 2.0)) * (kp / k) * wR ** re
            * (theta ** re - 1.0))


def _left_rarefaction_rel(AL, uL, dAL, duL, k, kp, beta, A_at, c_at, params):
    """(a, b, d) for a backward fan, evaluated on the ray beta = u - c."""
    m = params.m
    p = (m + 2.0) / (2.0 * m)
    cL = _wave_speed(AL, k, params)
    psiL = uL + (2.0 / m) * cL
    psi_slope = duL + (cL / AL) * dAL + (cL / (m * k)) * kp
    theta = c_at / cL
    dpsi_da = _fan_integral_left(cL, uL, psiL, psi_slope, theta, k, kp, params)
    # psi_L - beta == (m+2)/m c along the fan
    w = (m + 2.0) / m * c_at
    d = ((beta + 2.0 * c_at) / (2.0 * c_at) * w ** p * dpsi_da
         - beta / (2.0 * c_at)
         * (kp / params.rho + (beta + c_at) * c_at / m * kp / k))
    a = np.ones_like(np.asarray(d))
    b = c_at / A_at
    return a, b, d


def _right_rarefaction_rel(AR, uR, dAR, duR, k, kp, beta, A_at, c_at, params):
    """(a, b, d) for a forward fan, evaluated on the ray beta = u + c."""
    m = params.m
    p = (m + 2.0) / (2.0 * m)
    cR = _wave_speed(AR, k, params)
    phiR = uR - (2.0 / m) * cR
    phi_slope = duR - (cR / AR) * dAR - (cR / (m * k)) * kp
    theta = c_at / cR
    dphi_da = _fan_integral_right(cR, uR, phiR, phi_slope, theta, k, kp, params)
    w = (m + 2.0) / m * c_at  # = beta - phi_R
    d = (-(beta - 2.0 * c_at) / (2.0 * c_at) * w ** p * dphi_da
         + beta / (2.0 * c_at)
         * (kp / params.rho - (beta - c_at) * c_at / m * kp / k))
    a = np.ones_like(np.asarray(d))
    b = -c_at / A_at
    return a, b, d


def _right_shock_rel(AR, uR, dAR, duR, k, kp, Astar, ustar, cstar, params):
    """(a, b, d) for a forward shock, from the Rankine-Hugoniot derivative."""
    m = params.m
    sigma = (Astar * ustar - AR * uR) / (Astar - AR)
    Phi1, Phi2, _ = _phi_jump_derivatives_raw(Astar, AR, k, params)
    Phik = phi_jump(Astar, AR, k, params) / (2.0 * k)
    D = ustar ** 2 - cstar ** 2
    a = 1.0 - sigma / D * (ustar + Astar * Phi1)
    b = sigma / D * (ustar * Phi1 + cstar ** 2 / Astar) - Phi1
    p_star = (Astar / params.Ae) ** m - 1.0
    d = ((sigma - uR) * duR
         - kp / params.rho * ((AR / params.Ae) ** m - 1.0)
         - m * k * AR ** (m - 1.0) * dAR / (params.rho * params.Ae ** m)
         + Phi2 * ((sigma - uR) * dAR - AR * duR)
         + sigma * kp / (params.rho * D) * p_star * (Astar * Phi1 + ustar)
         + sigma * kp * Phik)
    return a, b, d


def _left_shock_rel(AL, uL, dAL, duL, k, kp, Astar, ustar, cstar, params):
    """(a, b, d) for a backward shock: exact mirror of the forward relation.

    Under x -> -x a backward shock becomes a forward one with outside state
    (A, -u), slopes (-A', u'), star (A*, -u*), and stiffness slope -k';
    the relation coefficients transform as (a, b, d) -> (a, -b, -d).
    """
    a, b, d = _right_shock_rel(AL, -uL, -dAL, duL, k, -kp,
                               Astar, -ustar, cstar, params)
    return a, -b, -d


def _one_sided(A, u, dA, du, k, kp, params):
    """Taylor (Lax-Wendroff) rates in smooth data: dU/dt = -F'(U) U_x - L G_x."""
    m = params.m
    c2 = (m * k / params.rho) * (A / params.Ae) ** m
    A_t = -(A * du + u * dA)
    u_t = -u * du - (c2 / A) * dA - kp / params.rho * ((A / params.Ae) ** m - 1.0)
    return A_t, u_t


def _acoustic(AL, uL, AR, uR, dAL, duL, dAR, duR, k, kp, params):
    """Linearized rates when the jump vanishes but the slopes differ."""
    m = params.m
    Ac = 0.5 * (AL + AR)
    uc = 0.5 * (uL + uR)
    c = _wave_speed(Ac, k, params)
    u_x = (AL * duL + AR * duR + c * (dAL - dAR)) / (2.0 * Ac)
    A_x = (AL * duL - AR * duR + c * (dAL + dAR)) / (2.0 * c)
    A_t = -(Ac * u_x + uc * A_x)
    u_t = (-uc * u_x - (c * c / Ac) * A_x
           - kp / params.rho * ((Ac / params.Ae) ** m - 1.0))
    return A_t, u_t, Ac, uc


def _sonic(side, d0, A0, u0, c0, k, kp, params):
    """Rates when the t-axis lies inside a fan; side is -1 (u-c) or +1 (u+c).

    d0 is the rate of the invariant carried into the fan.  The outgoing
    invariant obeys dW/dt + lam dW/dx = B1 with lam -> 0 on the axis but
    dW/dx ~ (4/(m+2))/t, so the product stays finite; eliminating it
    against the incoming rate gives the closed form below.
    """
    m = params.m
    b1 = -kp / params.rho * ((A0 / params.Ae) ** m - 1.0)
    r = 0.5 * b1 - (2.0 - m) / (2.0 * (m + 2.0)) * d0
    u_t = 0.5 * (d0 + r)
    A_t = side * A0 / (2.0 * c0) * (r - d0)
    return A_t, u_t


# ---------------------------------------------------------------------------
# vectorized dispatcher

def grp_rates_arrays(AL, uL, AR, uR, dAL, duL, dAR, duR, k, kp,
                     params: ModelParams,
                     vL=None, vR=None, dvL=None, dvR=None):
    """Resolve many interfaces at once; returns a dict of arrays.

    Keys: case (int codes), A_star/u_star (limiting value on the t-axis),
    dA_dt, du_dt, and when transverse data is given v_star, dv_dt.
    """
    arrs = [np.atleast_1d(np.asarray(a, dtype=float))
            for a in (AL, uL, AR, uR, dAL, duL, dAR, duR)]
    AL, uL, AR, uR, dAL, duL, dAR, duR = np.broadcast_arrays(*arrs)
    k = np.broadcast_to(np.atleast_1d(np.asarray(k, dtype=float)), AL.shape)
    kp = np.broadcast_to(np.atleast_1d(np.asarray(kp, dtype=float)), AL.shape)
    has_v = vL is not None
    if has_v:
        vL = np.broadcast_to(np.atleast_1d(np.asarray(vL, dtype=float)), AL.shape)
        vR = np.broadcast_to(np.atleast_1d(np.asarray(vR, dtype=float)), AL.shape)
        dvL = np.broadcast_to(np.atleast_1d(np.asarray(dvL, dtype=float)), AL.shape)
        dvR = np.broadcast_to(np.atleast_1d(np.asarray(dvR, dtype=float)), AL.shape)

    n = AL.shape[0]
    m = params.m
    mu = m / (m + 2.0)

    acoustic = ((np.abs(AL - AR) <= ZERO_STRENGTH_RTOL * np.maximum(AL, AR))
                & (np.abs(uL - uR) <= ZERO_STRENGTH_RTOL
                   * np.maximum(1.0, np.maximum(np.abs(uL), np.abs(uR)))))

    case = np.full(n, NONSONIC, dtype=int)
    A_axis = np.empty(n)
    u_axis = np.empty(n)
    dA_dt = np.empty(n)
    du_dt = np.empty(n)
    star = None

    if acoustic.any():
        i = np.flatnonzero(acoustic)
        At, ut, Ac, uc = _acoustic(AL[i], uL[i], AR[i], uR[i],
                                   dAL[i], duL[i], dAR[i], duR[i],
                                   k[i], kp[i], params)
        case[i] = ACOUSTIC
        A_axis[i], u_axis[i] = Ac, uc
        dA_dt[i], du_dt[i] = At, ut

    act = np.flatnonzero(~acoustic)
    if act.size:
        star = solve_star_arrays(AL[act], uL[act], AR[act], uR[act], k[act], params)
        Astar = star["A_star"]
        ustar = star["u_star"]
        cstar = star["c_star"]
        lh, lt = star["left_head"], star["left_tail"]
        rt, rh = star["right_tail"], star["right_head"]
        lshock = star["left_shock"]
        rshock = star["right_shock"]

        osl = lh > 0.0
        osr = ~osl & (rh < 0.0)
        sl = ~osl & ~osr & ~lshock & (lh <= 0.0) & (lt > 0.0)
        sr = ~osl & ~osr & ~sl & ~rshock & (rt < 0.0) & (rh >= 0.0)
        ns = ~(osl | osr | sl | sr)

        sub_case = np.full(act.size, NONSONIC, dtype=int)
        sub_case[osl] = ONE_SIDED_LEFT
        sub_case[osr] = ONE_SIDED_RIGHT
        sub_case[sl] = SONIC_LEFT
        sub_case[sr] = SONIC_RIGHT
        case[act] = sub_case

        if osl.any():
            j = act[osl]
            A_axis[j], u_axis[j] = AL[j], uL[j]
            dA_dt[j], du_dt[j] = _one_sided(AL[j], uL[j], dAL[j], duL[j],
                                            k[j], kp[j], params)
        if osr.any():
            j = act[osr]
            A_axis[j], u_axis[j] = AR[j], uR[j]
            dA_dt[j], du_dt[j] = _one_sided(AR[j], uR[j], dAR[j], duR[j],
                                            k[j], kp[j], params)
        if sl.any():
            j = act[sl]
            cL = _wave_speed(AL[j], k[j], params)
            psiL = uL[j] + (2.0 / m) * cL
            c0 = mu * psiL
            u0 = c0
            A0 = _area_from_wavespeed(c0, k[j], params)
            _, _, d0 = _left_rarefaction_rel(AL[j], uL[j], dAL[j], duL[j],
                                             k[j], kp[j], 0.0, A0, c0, params)
            dA_dt[j], du_dt[j] = _sonic(-1.0, d0, A0, u0, c0, k[j], kp[j], params)
            A_axis[j], u_axis[j] = A0, u0
        if sr.any():
            j = act[sr]
            cR = _wave_speed(AR[j], k[j], params)
            phiR = uR[j] - (2.0 / m) * cR
            c0 = -mu * phiR
            u0 = -c0
            A0 = _area_from_wavespeed(c0, k[j], params)
            _, _, d0 = _right_rarefaction_rel(AR[j], uR[j], dAR[j], duR[j],
                                              k[j], kp[j], 0.0, A0, c0, params)
            dA_dt[j], du_dt[j] = _sonic(+1.0, d0, A0, u0, c0, k[j], kp[j], params)
            A_axis[j], u_axis[j] = A0, u0
        if ns.any():
            j = act[ns]
            As, us, cs = Astar[ns], ustar[ns], cstar[ns]
            aL = np.empty(j.size)
            bL = np.empty(j.size)
            dL = np.empty(j.size)
            lsh = lshock[ns]
            if lsh.any():
                jj = np.flatnonzero(lsh)
                aL[jj], bL[jj], dL[jj] = _left_shock_rel(
                    AL[j][jj], uL[j][jj], dAL[j][jj], duL[j][jj],
                    k[j][jj], kp[j][jj], As[jj], us[jj], cs[jj], params)
            if (~lsh).any():
                jj = np.flatnonzero(~lsh)
                aL[jj], bL[jj], dL[jj] = _left_rarefaction_rel(
                    AL[j][jj], uL[j][jj], dAL[j][jj], duL[j][jj],
                    k[j][jj], kp[j][jj], us[jj] - cs[jj], As[jj], cs[jj], params)
            aR = np.empty(j.size)
            bR = np.empty(j.size)
            dR = np.empty(j.size)
            rsh = rshock[ns]
            if rsh.any():
                jj = np.flatnonzero(rsh)
                aR[jj], bR[jj], dR[jj] = _right_shock_rel(
                    AR[j][jj], uR[j][jj], dAR[j][jj], duR[j][jj],
                    k[j][jj], kp[j][jj], As[jj], us[jj], cs[jj], params)
            if (~rsh).any():
                jj = np.flatnonzero(~rsh)
                aR[jj], bR[jj], dR[jj] = _right_rarefaction_rel(
                    AR[j][jj], uR[j][jj], dAR[j][jj], duR[j][jj],
                    k[j][jj], kp[j][jj], us[jj] + cs[jj], As[jj], cs[jj], params)
            det = aL * bR - aR * bL
            det_scale = np.abs(aL * bR) + np.abs(aR * bL)
            if np.any(np.abs(det) < 1e-12 * np.maximum(det_scale, 1e-300)):
                bad = int(np.argmin(np.abs(det) / np.maximum(det_scale, 1e-300)))
                raise ArithmeticError(
                    "degenerate GRP relation pair: "
                    f"left (a={aL[bad]}, b={bL[bad]}, d={dL[bad]}), "
                    f"right (a={aR[bad]}, b={bR[bad]}, d={dR[bad]})")
            du_dt[j] = (dL * bR - dR * bL) / det
            dA_dt[j] = (aL * dR - aR * dL) / det
            A_axis[j], u_axis[j] = As, us

    out = {"case": case, "A_star": A_axis, "u_star": u_axis,
           "dA_dt": dA_dt, "du_dt": du_dt}
    if has_v:
        v_star = np.where(u_axis > 0.0, vL,
                          np.where(u_axis < 0.0, vR, 0.5 * (vL + vR)))
        dv_dt = _transverse_arrays(case, u_axis, A_axis, AL, AR, uL, uR,
                                   dvL, dvR, star, act)
        out["v_star"] = v_star
        out["dv_dt"] = dv_dt
    return out


def _transverse_arrays(case, u_axis, A_axis, AL, AR, uL, uR, dvL, dvR, star, act):
    """Passive-scalar rate dv/dt at the axis, upwinded by sign(u at axis).

    The transverse slope is carried across the upwind wave: through a fan
    it scales with the area ratio, across a shock with the mass-flux ratio
    (sigma - u_outside) / (sigma - u_star).
    """
    n = case.shape[0]
    dv = np.zeros(n)
    factor_L = np.ones(n)  # slope transfer factor across the left wave
    factor_R = np.ones(n)
    if act.size:
        lshock = star["left_shock"]
        rshock = star["right_shock"]
        Astar = star["A_star"]
        ustar = star["u_star"]
        with np.errstate(divide="ignore", invalid="ignore"):
            fl_shock = np.where(lshock,
                                (star["left_head"] - uL[act]) / (star["left_head"] - ustar),
                                1.0)
            fr_shock = np.where(rshock,
                                (star["right_head"] - uR[act]) / (star["right_head"] - ustar),
                                1.0)
        factor_L[act] = np.where(lshock, fl_shock, Astar / AL[act])
        factor_R[act] = np.where(rshock, fr_shock, Astar / AR[act])

    one_sided_l = case == ONE_SIDED_LEFT
    one_sided_r = case == ONE_SIDED_RIGHT
    sonic_l = case == SONIC_LEFT
    sonic_r = case == SONIC_RIGHT
    acoustic = case == ACOUSTIC
    from_left = u_axis > 0.0
    from_right = u_axis < 0.0

    # default: star region (nonsonic), slope filtered through the upwind wave
    dv = np.where(from_left, -u_axis * factor_L * dvL,
                  np.where(from_right, -u_axis * factor_R * dvR, 0.0))
    # the axis sits in one-sided or acoustic data: plain advection slope
    plain = one_sided_l | one_sided_r | acoustic
    dv = np.where(plain & from_left, -u_axis * dvL, dv)
    dv = np.where(plain & from_right, -u_axis * dvR, dv)
    # inside a fan: area ratio from the fan state
    dv = np.where(sonic_l, -u_axis * (A_axis / AL) * dvL, dv)
    dv = np.where(sonic_r, -u_axis * (A_axis / AR) * dvR, dv)
    return dv


# ---------------------------------------------------------------------------
# scalar API

def _scalar_rel(fn, Aside, uside, dAside, duside, inp, beta, A_at, c_at, params):
    a, b, d = fn(np.asarray([Aside]), np.asarray([uside]),
                 np.asarray([dAside]), np.asarray([duside]),
                 np.asarray([inp.k0]), np.asarray([inp.kprime0]),
                 beta, np.asarray([A_at]), np.asarray([c_at]), params)
    return LinearRelation(float(np.asarray(a)[0]), float(np.asarray(b)[0]),
                          float(np.asarray(d)[0]))


def left_rarefaction_relation(inp: GrpInput, star, params: ModelParams,
                              beta=None) -> LinearRelation:
    """Backward-fan relation; beta defaults to the fan tail u* - c*."""
    if beta is None:
        beta = star.u_star - star.c_star
    mu = params.m / (params.m + 2.0)
    cL = _wave_speed(inp.A_left, inp.k0, params)
    psi = inp.u_left + (2.0 / params.m) * cL
    c_at = mu * (psi - beta)
    A_at = _area_from_wavespeed(c_at, inp.k0, params)
    return _scalar_rel(_left_rarefaction_rel, inp.A_left, inp.u_left,
                       inp.dA_left, inp.du_left, inp, beta, A_at, c_at, params)


def right_rarefaction_relation(inp: GrpInput, star, params: ModelParams,
                               beta=None) -> LinearRelation:
    """Forward-fan relation; beta defaults to the fan tail u* + c*."""
    if beta is None:
        beta = star.u_star + star.c_star
    mu = params.m / (params.m + 2.0)
    cR = _wave_speed(inp.A_right, inp.k0, params)
    phi = inp.u_right - (2.0 / params.m) * cR
    c_at = mu * (beta - phi)
    A_at = _area_from_wavespeed(c_at, inp.k0, params)
    return _scalar_rel(_right_rarefaction_rel, inp.A_right, inp.u_right,
                       inp.dA_right, inp.du_right, inp, beta, A_at, c_at, params)


def solve_nonsonic(rel_left: LinearRelation, rel_right: LinearRelation):
    """Solve the 2x2 relation pair; returns (du_dt, dA_dt)."""
    det = rel_left.a * rel_right.b - rel_right.a * rel_left.b
    scale = abs(rel_left.a * rel_right.b) + abs(rel_right.a * rel_left.b)
    if abs(det) < 1e-12 * max(scale, 1e-300):
        raise ArithmeticError(
            f"degenerate relation pair: {rel_left}, {rel_right}")
    du = (rel_left.d * rel_right.b - rel_right.d * rel_left.b) / det
    dA = (rel_left.a * rel_right.d - rel_right.a * rel_left.d) / det
    return du, dA


def one_sided_rates(A, u, dA, du, k0, kprime0, params: ModelParams):
    """Smooth-side Taylor rates; returns (du_dt, dA_dt)."""
    A_t, u_t = _one_sided(A, u, dA, du, k0, kprime0, params)
    return u_t, A_t


def acoustic_rates(inp: GrpInput, params: ModelParams):
    """Acoustic-case rates; returns (du_dt, dA_dt)."""
    A_t, u_t, _, _ = _acoustic(inp.A_left, inp.u_left, inp.A_right, inp.u_right,
                               inp.dA_left, inp.du_left, inp.dA_right,
                               inp.du_right, inp.k0, inp.kprime0, params)
    return u_t, A_t


def sonic_rates(side: str, d_at_zero, A0, u0, c0, k0, kprime0,
                params: ModelParams):
    """Fan-interior rates; side is 'left' (u-c fan) or 'right' (u+c fan)."""
    sgn = -1.0 if side == "left" else +1.0
    A_t, u_t = _sonic(sgn, d_at_zero, A0, u0, c0, k0, kprime0, params)
    return u_t, A_t


def transverse_rate(inp: GrpInput, rates: "InterfaceRates", params: ModelParams):
    """Scalar transverse rate; see the vectorized kernel for the rules."""
    out = grp_rates_arrays(
        inp.A_left, inp.u_left, inp.A_right, inp.u_right,
        inp.dA_left, inp.du_left, inp.dA_right, inp.du_right,
        inp.k0, inp.kprime0, params,
        vL=inp.v_left if inp.v_left is not None else 0.0,
        vR=inp.v_right if inp.v_right is not None else 0.0,
        dvL=inp.dv_left, dvR=inp.dv_right)
    return float(out["dv_dt"][0])


def grp_interface(inp: GrpInput, params: ModelParams) -> InterfaceRates:
    """Resolve a single interface: classify the case and return the rates."""
    kwargs = {}
    has_v = inp.v_left is not None
    if has_v:
        kwargs = dict(vL=inp.v_left, vR=inp.v_right,
                      dvL=inp.dv_left, dvR=inp.dv_right)
    out = grp_rates_arrays(
        inp.A_left, inp.u_left, inp.A_right, inp.u_right,
        inp.dA_left, inp.du_left, inp.dA_right, inp.du_right,
        inp.k0, inp.kprime0, params, **kwargs)
    return InterfaceRates(
        dA_dt=float(out["dA_dt"][0]),
        du_dt=float(out["du_dt"][0]),
        A_star=float(out["A_star"][0]),
        u_star=float(out["u_star"][0]),
        case_tag=CASE_TAGS[int(out["case"][0])],
        dv_dt=float(out["dv_dt"][0]) if has_v else 0.0,
        v_star=float(out["v_star"][0]) if has_v else 0.0,
    )


# relation builders exposed with spec-level signatures -----------------------

def right_shock_relation(inp: GrpInput, star, params: ModelParams) -> LinearRelation:
    """Forward-shock relation from the star solution."""
    if abs(star.u_star ** 2 - star.c_star ** 2) < 1e-10 * star.c_star ** 2:
        raise ArithmeticError("sonic-adjacent star state; shock relation singular")
    a, b, d = _right_shock_rel(
        np.asarray([inp.A_right]), np.asarray([inp.u_right]),
        np.asarray([inp.dA_right]), np.asarray([inp.du_right]),
        np.asarray([inp.k0]), np.asarray([inp.kprime0]),
        np.asarray([star.A_star]), np.asarray([star.u_star]),
        np.asarray([star.c_star]), params)
    return LinearRelation(float(a[0]), float(b[0]), float(d[0]))


def left_shock_relation(inp: GrpInput, star, params: ModelParams) -> LinearRelation:
    """Backward-shock relation from the star solution."""
    if abs(star.u_star ** 2 - star.c_star ** 2) < 1e-10 * star.c_star ** 2:
        raise ArithmeticError("sonic-adjacent star state; shock relation singular")
    a, b, d = _left_shock_rel(
        np.asarray([inp.A_left]), np.asarray([inp.u_left]),
        np.asarray([inp.dA_left]), np.asarray([inp.du_left]),
        np.asarray([inp.k0]), np.asarray([inp.kprime0]),
        np.asarray([star.A_star]), np.asarray([star.u_star]),
        np.asarray([star.c_star]), params)
    return LinearRelation(float(a[0]), float(b[0]), float(d[0]))
