"""Cell-centered finite-volume driver on a 1D grid.

Piecewise-linear reconstruction in conserved variables, interface
resolution by the analytic interface-derivative solver, quasi-conservative
update with trapezoidal source quadrature, and slope update with minmod
limiting.  A MUSCL-Hancock scheme with exact Riemann fluxes is provided
as a baseline.

The advance kernels operate on row-stacked arrays of shape (R, N) so the
2D split solver can reuse them; the 1D grid is a single row.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .grp import CASE_TAGS, grp_rates_arrays
from .model import ModelParams, StiffnessProfile, _wave_speed, flux
from .riemann import sample_axis_arrays

__all__ = [
    "Grid1D",
    "StepReport",
    "cfl_dt",
    "step",
    "godunov_step",
    "minmod_slope",
    "apply_boundaries",
    "reconstruct_interface",
    "write_snapshot",
]


def minmod_slope(alpha, left_diff, center, right_diff):
    """Component-wise minmod(alpha*left_diff, center, alpha*right_diff)."""
    a = alpha * np.asarray(left_diff, dtype=float)
    b = np.asarray(center, dtype=float)
    c = alpha * np.asarray(right_diff, dtype=float)
    pos = (a > 0) & (b > 0) & (c > 0)
    neg = (a < 0) & (b < 0) & (c < 0)
    mn = np.minimum(np.minimum(a, b), c)
    mx = np.maximum(np.maximum(a, b), c)
    return np.where(pos, mn, np.where(neg, mx, 0.0))


@dataclass
class StepReport:
    """Diagnostics for a single advance."""

    dt: float
    max_speed: float
    case_counts: dict = field(default_factory=dict)
    limiter_activations: int = 0
    positivity_fixes: int = 0

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")


def _extend(arr, policy, dirichlet_vals=None):
    """Ghost-extend (R, N) cell data to (R, N+2) under a boundary policy."""
    if policy == "periodic":
        return np.concatenate([arr[:, -1:], arr, arr[:, :1]], axis=1)
    if policy == "outflow":
        return np.concatenate([arr[:, :1], arr, arr[:, -1:]], axis=1)
    if policy == "dirichlet":
        lo, hi = dirichlet_vals
        lo = np.broadcast_to(np.asarray(lo, dtype=float), (arr.shape[0], 1))
        hi = np.broadcast_to(np.asarray(hi, dtype=float), (arr.shape[0], 1))
        return np.concatenate([lo, arr, hi], axis=1)
    raise ValueError(f"unknown boundary policy {policy!r}")


def _extend_slope(arr, policy):
    """Ghost slopes: wrap for periodic, zero otherwise."""
    if policy == "periodic":
        return np.concatenate([arr[:, -1:], arr, arr[:, :1]], axis=1)
    z = np.zeros((arr.shape[0], 1))
    return np.concatenate([z, arr, z], axis=1)


def _reconstruct(A, q, sA, sq, dx, policy, bc_states):
    """Interface-extrapolated primitive states and slopes for all rows.

    Returns (AL, uL, duL, dAL, AR, uR, duR, dAR, n_fixes) over the N+1
    interfaces of each row.  Interfaces whose extrapolated area would be
    nonpositive fall back to the flat cell value (positivity guard).
    """
    bcA = bcq = None
    if policy == "dirichlet":
        (A_lo, q_lo), (A_hi, q_hi) = bc_states
        bcA, bcq = (A_lo, A_hi), (q_lo, q_hi)
    Ae = _extend(A, policy, bcA)
    qe = _extend(q, policy, bcq)
    sAe = _extend_slope(sA, policy)
    sqe = _extend_slope(sq, policy)

    h = 0.5 * dx
    AL = Ae[:, :-1] + h * sAe[:, :-1]
    AR = Ae[:, 1:] - h * sAe[:, 1:]
    badL = AL <= 0.0
    badR = AR <= 0.0
    n_fixes = int(badL.sum() + badR.sum())
    sAL = np.where(badL, 0.0, sAe[:, :-1])
    sqL = np.where(badL, 0.0, sqe[:, :-1])
    sAR = np.where(badR, 0.0, sAe[:, 1:])
    sqR = np.where(badR, 0.0, sqe[:, 1:])
    AL = np.where(badL, Ae[:, :-1], AL)
    AR = np.where(badR, Ae[:, 1:], AR)
    qL = qe[:, :-1] + h * sqL
    qR = qe[:, 1:] - h * sqR
    uL = qL / AL
    uR = qR / AR
    duL = (sqL - uL * sAL) / AL
    duR = (sqR - uR * sAR) / AR
    return AL, uL, duL, sAL, AR, uR, duR, sAR, n_fixes


def _limited_slopes(adv_lo, adv_hi, new_ext, dx, alpha):
    """Interface-propagated slope candidate limited against cell jumps."""
    cand = (adv_hi - adv_lo) / dx
    dminus = (new_ext[:, 1:-1] - new_ext[:, :-2]) / dx
    dplus = (new_ext[:, 2:] - new_ext[:, 1:-1]) / dx
    out = minmod_slope(alpha, dminus, cand, dplus)
    return out, int(np.sum(out != cand))


def _interface_source(source, x_centers, dx, t, R, N):
    """Source vector at the N+1 interfaces, broadcast to all rows."""
    x_if = np.concatenate([x_centers - 0.5 * dx, [x_centers[-1] + 0.5 * dx]])
    b1, b2 = source(x_if, t)
    b1 = np.broadcast_to(np.asarray(b1, dtype=float), (R, N + 1))
    b2 = np.broadcast_to(np.asarray(b2, dtype=float), (R, N + 1))
    return b1, b2


def grp_advance_rows(A, q, sA, sq, k_if, kp_if, dx, dt, params, policy,
                     bc_states=None, alpha=0.9, v=None, sv=None,
                     source=None, x_centers=None, t=0.0):
    """One second-order interface-derivative step on row-stacked data.

    Arrays are (R, N); k_if/kp_if give the stiffness and its slope at the
    N+1 interfaces (shared across rows).  Optional transverse velocity v
    with primitive slope sv is advected passively.  Returns updated
    (A, q, sA, sq[, v, sv]) plus a StepReport.
    """
    R, N = A.shape
    AL, uL, duL, dAL, AR, uR, duR, dAR, n_fixes = _reconstruct(
        A, q, sA, sq, dx, policy, bc_states)

    has_v = v is not None
    kw = {}
    if has_v:
        ve = _extend(v, policy, None if policy != "dirichlet" else (0.0, 0.0))
        sve = _extend_slope(sv, policy)
        h = 0.5 * dx
        vL = ve[:, :-1] + h * sve[:, :-1]
        vR = ve[:, 1:] - h * sve[:, 1:]
        kw = dict(vL=vL.ravel(), vR=vR.ravel(),
                  dvL=sve[:, :-1].ravel(), dvR=sve[:, 1:].ravel())

    kif = np.broadcast_to(k_if, (R, N + 1))
    kpif = np.broadcast_to(kp_if, (R, N + 1))
    rates = grp_rates_arrays(AL.ravel(), uL.ravel(), AR.ravel(), uR.ravel(),
                             dAL.ravel(), duL.ravel(), dAR.ravel(), duR.ravel(),
                             kif.ravel(), kpif.ravel(), params, **kw)
    shape = (R, N + 1)
    Astar = rates["A_star"].reshape(shape)
    ustar = rates["u_star"].reshape(shape)
    At = rates["dA_dt"].reshape(shape)
    ut = rates["du_dt"].reshape(shape)

    # the forcing contributes to the interface time-derivatives; dropping
    # it from the midpoint states costs a full order on forced problems
    if source is not None:
        b1_if, b2_if = _interface_source(source, x_centers, dx, t, R, N)
        At = At + b1_if
        ut = ut + (b2_if - ustar * b1_if) / Astar

    Ah = Astar + 0.5 * dt * At
    uh = ustar + 0.5 * dt * ut
    if np.any(Ah <= 0.0):
        bad = np.argwhere(Ah <= 0.0)[0]
        raise FloatingPointError(
            f"nonpositive midpoint area at row {bad[0]}, interface {bad[1]}")
    f1, f2 = flux(Ah, uh, kif, params)
    m = params.m
    L22 = Ah ** (m + 1.0) / (params.rho * (m + 1.0) * params.Ae ** m) - Ah / params.rho

    A_new = A - dt / dx * (f1[:, 1:] - f1[:, :-1])
    q_new = (q - dt / dx * (f2[:, 1:] - f2[:, :-1])
             - dt / (2.0 * dx) * (L22[:, 1:] + L22[:, :-1])
             * (kif[:, 1:] - kif[:, :-1]))
    if has_v:
        vt = rates["dv_dt"].reshape(shape)
        vstar = rates["v_star"].reshape(shape)
        vh = vstar + 0.5 * dt * vt
        fv = f1 * vh
        r_new = A * v - dt / dx * (fv[:, 1:] - fv[:, :-1])

    if source is not None:
        s1, s2 = source(x_centers, t + 0.5 * dt)
        A_new = A_new + dt * s1
        q_new = q_new + dt * s2

    if np.any(A_new <= 0.0):
        bad = np.argwhere(A_new <= 0.0)[0]
        raise FloatingPointError(
            f"nonpositive updated area in cell ({bad[0]}, {bad[1]}): "
            f"A = {A_new[bad[0], bad[1]]}")

    # interface values advanced by the full dt drive the new slopes
    A_adv = Astar + dt * At
    q_adv = Astar * ustar + dt * (Astar * ut + ustar * At)
    bcA = bcq = None
    if policy == "dirichlet":
        (A_lo, q_lo), (A_hi, q_hi) = bc_states
        bcA, bcq = (A_lo, A_hi), (q_lo, q_hi)
    Ane = _extend(A_new, policy, bcA)
    qne = _extend(q_new, policy, bcq)
    sA_new, nlim1 = _limited_slopes(A_adv[:, :-1], A_adv[:, 1:], Ane, dx, alpha)
    sq_new, nlim2 = _limited_slopes(q_adv[:, :-1], q_adv[:, 1:], qne, dx, alpha)

    counts = np.bincount(rates["case"], minlength=len(CASE_TAGS))
    report = StepReport(
        dt=dt,
        max_speed=float(np.max(np.abs(uh) + _wave_speed(Ah, kif, params))),
        case_counts={tag: int(c) for tag, c in zip(CASE_TAGS, counts) if c},
        limiter_activations=nlim1 + nlim2,
        positivity_fixes=n_fixes,
    )
    if has_v:
        v_new = r_new / A_new
        v_adv = vstar + dt * vt
        vne = _extend(v_new, policy, None if policy != "dirichlet" else (0.0, 0.0))
        sv_new, nlim3 = _limited_slopes(v_adv[:, :-1], v_adv[:, 1:], vne, dx, alpha)
        report.limiter_activations += nlim3
        return A_new, q_new, sA_new, sq_new, v_new, sv_new, report
    return A_new, q_new, sA_new, sq_new, report


def godunov_advance_rows(A, q, sA, sq, k_if, kp_if, dx, dt, params, policy,
                         bc_states=None, alpha=0.9, source=None,
                         x_centers=None, t=0.0):
    """One MUSCL-Hancock step with exact Riemann interface states."""
    from .grp import _one_sided

    AL, uL, duL, dAL, AR, uR, duR, dAR, n_fixes = _reconstruct(
        A, q, sA, sq, dx, policy, bc_states)
    R, N = A.shape
    kif = np.broadcast_to(k_if, (R, N + 1))
    kpif = np.broadcast_to(kp_if, (R, N + 1))

    h = 0.5 * dt
    AtL, utL = _one_sided(AL, uL, dAL, duL, kif, kpif, params)
    AtR, utR = _one_sided(AR, uR, dAR, duR, kif, kpif, params)
    if source is not None:
        b1_if, b2_if = _interface_source(source, x_centers, dx, t, R, N)
        AtL, AtR = AtL + b1_if, AtR + b1_if
        utL = utL + (b2_if - uL * b1_if) / AL
        utR = utR + (b2_if - uR * b1_if) / AR
    ALh = np.maximum(AL + h * AtL, 1e-12)
    ARh = np.maximum(AR + h * AtR, 1e-12)
    uLh = uL + h * utL
    uRh = uR + h * utR

    Ai, ui = sample_axis_arrays(ALh.ravel(), uLh.ravel(),
                                ARh.ravel(), uRh.ravel(), kif.ravel(), params)
    Ai = Ai.reshape(R, N + 1)
    ui = ui.reshape(R, N + 1)
    f1, f2 = flux(Ai, ui, kif, params)
    m = params.m
    L22 = Ai ** (m + 1.0) / (params.rho * (m + 1.0) * params.Ae ** m) - Ai / params.rho

    A_new = A - dt / dx * (f1[:, 1:] - f1[:, :-1])
    q_new = (q - dt / dx * (f2[:, 1:] - f2[:, :-1])
             - dt / (2.0 * dx) * (L22[:, 1:] + L22[:, :-1])
             * (kif[:, 1:] - kif[:, :-1]))
    if source is not None:
        s1, s2 = source(x_centers, t + 0.5 * dt)
        A_new = A_new + dt * s1
        q_new = q_new + dt * s2
    if np.any(A_new <= 0.0):
        bad = np.argwhere(A_new <= 0.0)[0]
        raise FloatingPointError(
            f"nonpositive updated area in cell ({bad[0]}, {bad[1]})")

    bcA = bcq = None
    if policy == "dirichlet":
        (A_lo, q_lo), (A_hi, q_hi) = bc_states
        bcA, bcq = (A_lo, A_hi), (q_lo, q_hi)
    Ane = _extend(A_new, policy, bcA)
    qne = _extend(q_new, policy, bcq)
    sA_new = minmod_slope(alpha, (Ane[:, 1:-1] - Ane[:, :-2]) / dx,
                          (Ane[:, 2:] - Ane[:, :-2]) / (2.0 * dx),
                          (Ane[:, 2:] - Ane[:, 1:-1]) / dx)
    sq_new = minmod_slope(alpha, (qne[:, 1:-1] - qne[:, :-2]) / dx,
                          (qne[:, 2:] - qne[:, :-2]) / (2.0 * dx),
                          (qne[:, 2:] - qne[:, 1:-1]) / dx)
    report = StepReport(
        dt=dt,
        max_speed=float(np.max(np.abs(ui) + _wave_speed(Ai, kif, params))),
        positivity_fixes=n_fixes,
    )
    return A_new, q_new, sA_new, sq_new, report


class Grid1D:
    """Finite-volume state: cell averages of (A, Au) and conserved slopes."""

    def __init__(self, x_min, x_max, N, profile: StiffnessProfile,
                 params: ModelParams, boundary="outflow", bc_states=None,
                 alpha=0.9):
        if not x_max > x_min:
            raise ValueError("domain must have positive width")
        if N < 4:
            raise ValueError("need at least 4 cells")
        self.x_min = float(x_min)
        self.x_max = float(x_max)
        self.N = int(N)
        self.dx = (self.x_max - self.x_min) / self.N
        self.profile = profile
        self.params = params
        self.boundary = boundary
        self.bc_states = bc_states
        self.alpha = float(alpha)
        self.t = 0.0
        self.A = np.full(self.N, params.Ae)
        self.q = np.zeros(self.N)
        self.sA = np.zeros(self.N)
        self.sq = np.zeros(self.N)
        self.source = None
        x_if = self.x_min + self.dx * np.arange(self.N + 1)
        self.k_if = np.asarray(profile.k(x_if), dtype=float)
        self.kp_if = np.asarray(profile.kprime(x_if), dtype=float)
        self.k_cells = np.asarray(profile.k(self.centers()), dtype=float)

    def centers(self):
        return self.x_min + self.dx * (np.arange(self.N) + 0.5)

    def set_state(self, A, u, sA=None, su=None):
        """Load primitive cell data (and optional primitive slopes)."""
        self.A = np.asarray(A, dtype=float).copy()
        u = np.asarray(u, dtype=float)
        self.q = self.A * u
        if np.any(self.A <= 0.0):
            raise ValueError("areas must be positive")
        self.sA = (np.zeros(self.N) if sA is None
                   else np.asarray(sA, dtype=float).copy())
        if su is None:
            self.sq = np.zeros(self.N)
        else:
            # q' = A u' + u A'
            self.sq = self.A * np.asarray(su, dtype=float) + u * self.sA
        if not (np.all(np.isfinite(self.sA)) and np.all(np.isfinite(self.sq))):
            raise ValueError("slopes must be finite")

    @property
    def u(self):
        return self.q / self.A

    def step(self, dt) -> StepReport:
        guard = cfl_dt(self, 1.0)
        if dt > guard * (1.0 + 1e-12):
            raise ValueError(f"dt = {dt} exceeds the stability bound {guard}")
        out = grp_advance_rows(
            self.A[None, :], self.q[None, :], self.sA[None, :], self.sq[None, :],
            self.k_if, self.kp_if, self.dx, dt, self.params, self.boundary,
            bc_states=self.bc_states, alpha=self.alpha,
            source=self.source, x_centers=self.centers(), t=self.t)
        self.A, self.q, self.sA, self.sq = (a[0] for a in out[:4])
        self.t += dt
        return out[-1]

    def godunov_step(self, dt) -> StepReport:
        guard = cfl_dt(self, 1.0)
        if dt > guard * (1.0 + 1e-12):
            raise ValueError(f"dt = {dt} exceeds the stability bound {guard}")
        out = godunov_advance_rows(
            self.A[None, :], self.q[None, :], self.sA[None, :], self.sq[None, :],
            self.k_if, self.kp_if, self.dx, dt, self.params, self.boundary,
            bc_states=self.bc_states, alpha=self.alpha,
            source=self.source, x_centers=self.centers(), t=self.t)
        self.A, self.q, self.sA, self.sq = (a[0] for a in out[:4])
        self.t += dt
        return out[-1]


def cfl_dt(grid: Grid1D, cfl) -> float:
    """Time step bound cfl * dx / max(|u| + c) from the cell averages."""
    if not 0.0 < cfl <= 1.0:
        raise ValueError("cfl must lie in (0, 1]")
    c = _wave_speed(grid.A, grid.k_cells, grid.params)
    smax = float(np.max(np.abs(grid.u) + c))
    if not np.isfinite(smax) or smax <= 0.0:
        raise FloatingPointError(f"invalid wave speed bound {smax}")
    return cfl * grid.dx / smax


def step(grid: Grid1D, dt) -> StepReport:
    return grid.step(dt)


def godunov_step(grid: Grid1D, dt) -> StepReport:
    return grid.godunov_step(dt)


def apply_boundaries(grid: Grid1D):
    """Ghost cell averages and slopes ((A, q, sA, sq) lo/hi pairs)."""
    bcA = bcq = None
    if grid.boundary == "dirichlet":
        (A_lo, q_lo), (A_hi, q_hi) = grid.bc_states
        bcA, bcq = (A_lo, A_hi), (q_lo, q_hi)
    Ae = _extend(grid.A[None, :], grid.boundary, bcA)
    qe = _extend(grid.q[None, :], grid.boundary, bcq)
    sAe = _extend_slope(grid.sA[None, :], grid.boundary)
    sqe = _extend_slope(grid.sq[None, :], grid.boundary)
    lo = (Ae[0, 0], qe[0, 0], sAe[0, 0], sqe[0, 0])
    hi = (Ae[0, -1], qe[0, -1], sAe[0, -1], sqe[0, -1])
    return lo, hi


def reconstruct_interface(grid: Grid1D, j: int):
    """GrpInput for interface j (0 .. N, ghost-extended at the ends)."""
    from .grp import GrpInput

    AL, uL, duL, dAL, AR, uR, duR, dAR, _ = _reconstruct(
        grid.A[None, :], grid.q[None, :], grid.sA[None, :], grid.sq[None, :],
        grid.dx, grid.boundary, grid.bc_states)
    return GrpInput(
        A_left=float(AL[0, j]), u_left=float(uL[0, j]),
        A_right=float(AR[0, j]), u_right=float(uR[0, j]),
        dA_left=float(dAL[0, j]), du_left=float(duL[0, j]),
        dA_right=float(dAR[0, j]), du_right=float(duR[0, j]),
        k0=float(grid.k_if[j]), kprime0=float(grid.kp_if[j]))


def write_snapshot(grid: Grid1D, path):
    """Cell-center snapshot CSV with header x,A,u."""
    x = grid.centers()
    u = grid.u
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "A", "u"])
        for i in range(grid.N):
            w.writerow([f"{x[i]:.17g}", f"{grid.A[i]:.17g}", f"{u[i]:.17g}"])
