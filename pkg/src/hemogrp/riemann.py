"""Exact solver for the self-similar two-wave Riemann problem.

The stiffness coefficient is frozen at the interface value, so the
homogeneous system is genuinely hyperbolic and the classical wave-curve
construction applies: a backward and a forward wave, each a rarefaction
(A* <= A_side) or a shock (A* > A_side), joined by a constant star state.

Core routines are vectorized over arrays of independent problems; thin
scalar wrappers provide the dataclass-based API used by the CLI and tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .model import (
    ModelParams,
    _area_from_wavespeed,
    _wave_speed,
)

__all__ = [
    "VacuumError",
    "ConvergenceError",
    "ZeroStrengthError",
    "WaveKind",
    "StarSolution",
    "phi_jump",
    "phi_jump_derivatives",
    "shock_speed",
    "solve_star",
    "solve_star_arrays",
    "sample",
    "sample_axis_arrays",
    "ZERO_STRENGTH_RTOL",
]

# relative jump below which a wave is treated as zero-strength; the shock
# derivative formulas are singular there
ZERO_STRENGTH_RTOL = 1e-10


class VacuumError(ValueError):
    """Raised when the data would open a vacuum (psi_L <= phi_R)."""


class ConvergenceError(RuntimeError):
    """Raised when the star-state iteration fails even after fallback."""


class ZeroStrengthError(ValueError):
    """Raised when shock derivatives are requested at (near) zero strength."""


class WaveKind(Enum):
    RAREFACTION = "rarefaction"
    SHOCK = "shock"
    NONE = "none"  # zero-strength wave


def phi_jump(A, Abar, k, params: ModelParams):
    """Velocity jump across a shock joining areas A (inside) and Abar.

    Phi = sqrt((m k / (rho (m+1) Ae^m)) (A - Abar)(A^(m+1) - Abar^(m+1)) / (A Abar)).
    The radicand is nonnegative for all positive areas; Phi(A, A) = 0.
    """
    A = np.asarray(A, dtype=float)
    Abar = np.asarray(Abar, dtype=float)
    if np.any(A <= 0.0) or np.any(Abar <= 0.0):
        raise ValueError("areas must be positive")
    m = params.m
    coef = m * k / (params.rho * (m + 1.0) * params.Ae ** m)
    rad = coef * (A - Abar) * (A ** (m + 1.0) - Abar ** (m + 1.0)) / (A * Abar)
    return np.sqrt(np.maximum(rad, 0.0))


def _phi_jump_derivatives_raw(A, Abar, k, params: ModelParams):
    """(dPhi/dA, dPhi/dAbar, dPhi/dk); caller must keep A away from Abar."""
    A = np.asarray(A, dtype=float)
    Abar = np.asarray(Abar, dtype=float)
    m = params.m
    coef = m * k / (params.rho * (m + 1.0) * params.Ae ** m)
    root = np.sqrt(
        coef * A * Abar / ((A - Abar) * (A ** (m + 1.0) - Abar ** (m + 1.0)))
    )
    den = 2.0 * (A * Abar) ** 2
    dA = root * (m * A ** (m + 1.0) * Abar * (A - Abar)
                 + Abar * (A ** (m + 2.0) - Abar ** (m + 2.0))) / den
    dAbar = root * (m * Abar ** (m + 1.0) * A * (Abar - A)
                    + A * (Abar ** (m + 2.0) - A ** (m + 2.0))) / den
    dk = phi_jump(A, Abar, k, params) / (2.0 * k)
    return dA, dAbar, dk


def phi_jump_derivatives(A, Abar, k, params: ModelParams):
    """Partial derivatives of the shock velocity jump, per the closed forms.

    Raises ZeroStrengthError when the jump is below the acoustic threshold;
    the derivative formulas are 0/0 there and the caller must take the
    acoustic (linearized) path instead.
    """
    A = np.asarray(A, dtype=float)
    Abar = np.asarray(Abar, dtype=float)
    if np.any(A <= 0.0) or np.any(Abar <= 0.0):
        raise ValueError("areas must be positive")
    if np.any(np.abs(A - Abar) < ZERO_STRENGTH_RTOL * np.maximum(A, Abar)):
        raise ZeroStrengthError("acoustic-strength wave; use acoustic path")
    return _phi_jump_derivatives_raw(A, Abar, k, params)


def shock_speed(A, u, Abar, ubar):
    """Rankine-Hugoniot speed sigma = (A u - Abar ubar) / (A - Abar)."""
    A = np.asarray(A, dtype=float)
    Abar = np.asarray(Abar, dtype=float)
    if np.any(np.abs(A - Abar) < ZERO_STRENGTH_RTOL * np.maximum(A, Abar)):
        raise ZeroStrengthError("zero-strength shock has no defined speed")
    return (A * u - Abar * ubar) / (A - Abar)


def _side_curve(A, Aside, uside, cside, k, sign, params: ModelParams):
    """u and du/dA on one wave curve; sign = -1 left, +1 right.

    Rarefaction branch for A <= Aside, shock branch otherwise; the two
    branches join with a continuous derivative (dPhi/dA -> c/A).
    """
    m = params.m
    c = _wave_speed(A, k, params)
    rare = A <= Aside
    # dummy-safe shock inputs where the rarefaction branch is selected
    As = np.where(rare, 2.0 * Aside, A)
    dPhi, _, _ = _phi_jump_derivatives_raw(As, Aside, k, params)
    Phi = phi_jump(As, Aside, k, params)
    w = np.where(rare, (2.0 / m) * (c - cside), Phi)
    dw = np.where(rare, c / A, dPhi)
    return uside + sign * w, sign * dw


def solve_star_arrays(AL, uL, AR, uR, k, params: ModelParams,
                      tol=1e-12, max_iter=50):
    """Vectorized star-state solve over arrays of Riemann problems.

    Newton iteration on A* seeded with the two-rarefaction closed form,
    with a bisection fallback on any lane that strays or stalls.  Returns
    a dict of arrays (star state, wave flags, wave speeds, diagnostics).
    """
    AL = np.atleast_1d(np.asarray(AL, dtype=float))
    uL = np.atleast_1d(np.asarray(uL, dtype=float))
    AR = np.atleast_1d(np.asarray(AR, dtype=float))
    uR = np.atleast_1d(np.asarray(uR, dtype=float))
    k = np.broadcast_to(np.atleast_1d(np.asarray(k, dtype=float)), AL.shape)
    if np.any(AL <= 0.0) or np.any(AR <= 0.0):
        raise ValueError("areas must be positive")
    m = params.m
    cL = _wave_speed(AL, k, params)
    cR = _wave_speed(AR, k, params)
    psiL = uL + (2.0 / m) * cL
    phiR = uR - (2.0 / m) * cR
    if np.any(psiL - phiR <= 0.0):
        raise VacuumError("initial data opens a vacuum (psi_L <= phi_R)")

    scale = np.maximum.reduce([np.abs(uL), np.abs(uR), cL, cR])
    # two-rarefaction closed form as the initial guess
    c_guess = m * (psiL - phiR) / 4.0
    A = _area_from_wavespeed(c_guess, k, params)

    def residual(Astar):
        fL, dfL = _side_curve(Astar, AL, uL, cL, k, -1.0, params)
        fR, dfR = _side_curve(Astar, AR, uR, cR, k, +1.0, params)
        return fL - fR, dfL - dfR, 0.5 * (fL + fR)

    iters = np.zeros(AL.shape, dtype=int)
    ok = np.zeros(AL.shape, dtype=bool)
    g = np.empty_like(A)
    for _ in range(max_iter):
        g, gp, _ = residual(A)
        newly = np.abs(g) <= tol * scale
        ok |= newly
        if ok.all():
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            step = g / gp
        Anew = A - step
        bad = ~np.isfinite(Anew) | (Anew <= 0.0)
        Anew = np.where(bad, A, Anew)
        A = np.where(ok, A, Anew)
        iters += ~ok

    g, _, _ = residual(A)
    ok = np.abs(g) <= tol * scale
    if not ok.all():
        for i in np.flatnonzero(~ok):
            A[i], extra = _bisect_star(
                float(AL[i]), float(uL[i]), float(cL[i]),
                float(AR[i]), float(uR[i]), float(cR[i]),
                float(k[i]), float(scale[i]), params, tol)
            iters[i] += extra
        g, _, _ = residual(A)
        if np.any(np.abs(g) > tol * np.maximum(scale, 1e-300)):
            worst = int(np.argmax(np.abs(g) / np.maximum(scale, 1e-300)))
            raise ConvergenceError(
                "star-state iteration failed: "
                f"residual {g[worst]:.3e} for (AL={AL[worst]}, uL={uL[worst]}, "
                f"AR={AR[worst]}, uR={uR[worst]}, k={k[worst]})")

    _, _, ustar = residual(A)
    cstar = _wave_speed(A, k, params)
    jump_tol = ZERO_STRENGTH_RTOL
    left_shock = (A - AL) > jump_tol * np.maximum(A, AL)
    right_shock = (A - AR) > jump_tol * np.maximum(A, AR)
    with np.errstate(divide="ignore", invalid="ignore"):
        sigmaL = np.where(left_shock, (A * ustar - AL * uL) / (A - AL), 0.0)
        sigmaR = np.where(right_shock, (A * ustar - AR * uR) / (A - AR), 0.0)
    left_head = np.where(left_shock, sigmaL, uL - cL)
    left_tail = np.where(left_shock, sigmaL, ustar - cstar)
    right_tail = np.where(right_shock, sigmaR, ustar + cstar)
    right_head = np.where(right_shock, sigmaR, uR + cR)
    return {
        "A_star": A, "u_star": ustar, "c_star": cstar,
        "psi_L": psiL, "phi_R": phiR,
        "left_shock": left_shock, "right_shock": right_shock,
        "left_head": left_head, "left_tail": left_tail,
        "right_tail": right_tail, "right_head": right_head,
        "iterations": iters, "residual": np.abs(g),
    }


def _bisect_star(AL, uL, cL, AR, uR, cR, k, scale, params, tol):
    """Scalar bisection fallback on the same wave-curve residual."""
    def g(A):
        a = np.asarray([A])
        fL, _ = _side_curve(a, AL, uL, cL, k, -1.0, params)
        fR, _ = _side_curve(a, AR, uR, cR, k, +1.0, params)
        return float(fL[0] - fR[0])

    lo, hi = 1e-12, 10.0 * max(AL, AR)
    n = 0
    while g(hi) > 0.0:
        hi *= 4.0
        n += 1
        if n > 60:
            raise ConvergenceError("bisection bracket could not be widened")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        n += 1
        if abs(gm) <= tol * max(scale, 1e-300) or (hi - lo) <= 1e-16 * hi:
            return mid, n
        if gm > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), n


def sample_axis_arrays(AL, uL, AR, uR, k, params: ModelParams):
    """Vectorized self-similar solution on the t-axis (xi = 0); returns (A, u).

    This is the Godunov interface state: star region by default, fan
    interior where a rarefaction straddles the axis, one-sided data when
    the whole wave pattern moves to one side.
    """
    m = params.m
    mu = m / (m + 2.0)
    s = solve_star_arrays(AL, uL, AR, uR, k, params)
    AL = np.broadcast_to(np.atleast_1d(np.asarray(AL, dtype=float)), s["A_star"].shape)
    uL = np.broadcast_to(np.atleast_1d(np.asarray(uL, dtype=float)), s["A_star"].shape)
    AR = np.broadcast_to(np.atleast_1d(np.asarray(AR, dtype=float)), s["A_star"].shape)
    uR = np.broadcast_to(np.atleast_1d(np.asarray(uR, dtype=float)), s["A_star"].shape)
    k = np.broadcast_to(np.atleast_1d(np.asarray(k, dtype=float)), s["A_star"].shape)
    A = s["A_star"].copy()
    u = s["u_star"].copy()
    lh, lt = s["left_head"], s["left_tail"]
    rt, rh = s["right_tail"], s["right_head"]
    left_fan = ~s["left_shock"] & (lh < 0.0) & (lt > 0.0)
    if left_fan.any():
        c0 = mu * (uL + (2.0 / m) * _wave_speed(AL, k, params))
        A = np.where(left_fan, _area_from_wavespeed(np.maximum(c0, 1e-300), k, params), A)
        u = np.where(left_fan, c0, u)
    right_fan = ~s["right_shock"] & (rt < 0.0) & (rh > 0.0)
    if right_fan.any():
        c0 = -mu * (uR - (2.0 / m) * _wave_speed(AR, k, params))
        A = np.where(right_fan, _area_from_wavespeed(np.maximum(c0, 1e-300), k, params), A)
        u = np.where(right_fan, -c0, u)
    A = np.where(lh >= 0.0, AL, A)
    u = np.where(lh >= 0.0, uL, u)
    A = np.where(rh <= 0.0, AR, A)
    u = np.where(rh <= 0.0, uR, u)
    return A, u


@dataclass(frozen=True)
class StarSolution:
    """Resolved star state plus wave metadata for one Riemann problem."""

    A_star: float
    u_star: float
    c_star: float
    left_kind: WaveKind
    right_kind: WaveKind
    left_speeds: tuple  # (head, tail); equal for shocks
    right_speeds: tuple  # (tail, head)
    A_left: float
    u_left: float
    A_right: float
    u_right: float
    k: float
    iterations: int
    residual: float


def solve_star(AL, uL, AR, uR, k, params: ModelParams) -> StarSolution:
    """Scalar star-state solve; see :func:`solve_star_arrays`."""
    r = solve_star_arrays(
        np.asarray([AL], float), np.asarray([uL], float),
        np.asarray([AR], float), np.asarray([uR], float),
        np.asarray([k], float), params)

    def kind(shock_flag, Aside, Astar):
        if shock_flag:
            return WaveKind.SHOCK
        if abs(Astar - Aside) <= ZERO_STRENGTH_RTOL * max(Astar, Aside):
            return WaveKind.NONE
        return WaveKind.RAREFACTION

    Astar = float(r["A_star"][0])
    return StarSolution(
        A_star=Astar,
        u_star=float(r["u_star"][0]),
        c_star=float(r["c_star"][0]),
        left_kind=kind(bool(r["left_shock"][0]), AL, Astar),
        right_kind=kind(bool(r["right_shock"][0]), AR, Astar),
        left_speeds=(float(r["left_head"][0]), float(r["left_tail"][0])),
        right_speeds=(float(r["right_tail"][0]), float(r["right_head"][0])),
        A_left=float(AL), u_left=float(uL),
        A_right=float(AR), u_right=float(uR),
        k=float(k),
        iterations=int(r["iterations"][0]),
        residual=float(r["residual"][0]),
    )


def sample(star: StarSolution, xi, params: ModelParams):
    """Self-similar solution along the ray x/t = xi; returns (A, u).

    Fan interiors follow the constancy of the opposite invariant:
    in a left fan c = m (psi_L - xi) / (m + 2), u = xi + c; mirrored on
    the right with phi_R.
    """
    m = params.m
    mu = m / (m + 2.0)
    xi = float(xi)
    head_L, tail_L = star.left_speeds
    tail_R, head_R = star.right_speeds
    if xi <= head_L:
        return star.A_left, star.u_left
    if xi >= head_R:
        return star.A_right, star.u_right
    if star.left_kind is WaveKind.RAREFACTION and head_L < xi < tail_L:
        psiL = star.u_left + (2.0 / m) * _wave_speed(star.A_left, star.k, params)
        c = mu * (psiL - xi)
        return float(_area_from_wavespeed(c, star.k, params)), xi + c
    if star.right_kind is WaveKind.RAREFACTION and tail_R < xi < head_R:
        phiR = star.u_right - (2.0 / m) * _wave_speed(star.A_right, star.k, params)
        c = mu * (xi - phiR)
        return float(_area_from_wavespeed(c, star.k, params)), xi - c
    if xi < tail_L:
        return star.A_left, star.u_left
    if xi > tail_R:
        return star.A_right, star.u_right
    return star.A_star, star.u_star
