"""Named benchmark cases and the manufactured-solution machinery.

The registry covers the 1D cases (smooth manufactured run, two Riemann
problems, a shock interaction) and the four 2D four-quadrant problems,
together with builders that load initial data onto grids and evaluate
reference solutions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .grid1d import Grid1D, cfl_dt
from .model import (
    ConstantProfile,
    ModelParams,
    SineRampProfile,
    SinusoidalProfile,
    StiffnessProfile,
)
from .riemann import sample, solve_star

__all__ = [
    "CaseSpec",
    "ManufacturedFields",
    "manufactured_fields",
    "case_registry",
    "build_grid",
    "build_grid2d",
    "run_case",
    "run_case2d",
    "reference_evaluator",
    "fine_grid_reference",
]


@dataclass(frozen=True)
class ManufacturedFields:
    """Closed-form fields of the modified (forced) system.

    A and q are exact solutions of the system augmented with the source B;
    B was derived by substituting (A, q, k) into the governing equations
    and is validated against a high-order differentiation oracle in the
    test suite.  The mass equation balances identically, so B1 = 0.
    """

    K0: float
    k0: float = 1.2
    A0: float = 1.0
    a0: float = 0.2
    L: float = 1.0
    T0: float = 3.0
    q0: float = 0.0
    params: ModelParams = field(default_factory=ModelParams)

    @property
    def _omega_x(self):
        return 2.0 * np.pi / self.L

    @property
    def _omega_t(self):
        return 2.0 * np.pi / self.T0

    def A(self, x, t):
        return self.A0 + self.a0 * np.sin(self._omega_x * x) * np.cos(self._omega_t * t)

    def q(self, x, t):
        return self.q0 - (self.a0 * self.L / self.T0) * np.cos(self._omega_x * x) \
            * np.sin(self._omega_t * t)

    def u(self, x, t):
        return self.q(x, t) / self.A(x, t)

    def k(self, x):
        return self.K0 + self.k0 * np.sin(self._omega_x * np.asarray(x, dtype=float))

    def A_x(self, x, t):
        return self.a0 * self._omega_x * np.cos(self._omega_x * x) \
            * np.cos(self._omega_t * t)

    def q_x(self, x, t):
        return (self.a0 * self.L / self.T0) * self._omega_x \
            * np.sin(self._omega_x * x) * np.sin(self._omega_t * t)

    def B(self, x, t):
        """Source vector (B1, B2) of the forced system; B1 vanishes."""
        x = np.asarray(x, dtype=float)
        p = self.params
        m = p.m
        wx, wt = self._omega_x, self._omega_t
        s, cx = np.sin(wx * x), np.cos(wx * x)
        st, ct = np.sin(wt * t), np.cos(wt * t)
        A = self.A0 + self.a0 * s * ct
        q = self.q0 - (self.a0 * self.L / self.T0) * cx * st
        k = self.K0 + self.k0 * s
        A_x = self.a0 * wx * cx * ct
        q_x = (self.a0 * self.L / self.T0) * wx * s * st
        q_t = -(self.a0 * self.L / self.T0) * wt * cx * ct
        k_x = self.k0 * wx * cx

        C = m / (p.rho * (m + 1.0) * p.Ae ** m)
        adv = (2.0 * q * q_x * A - q * q * A_x) / (A * A)
        press = C * (k_x * A ** (m + 1.0) + (m + 1.0) * k * A ** m * A_x)
        L22 = A ** (m + 1.0) / (p.rho * (m + 1.0) * p.Ae ** m) - A / p.rho
        B2 = q_t + adv + press + L22 * k_x
        return np.zeros_like(B2), B2


def manufactured_fields(K0, k0=1.2, A0=1.0, a0=0.2, L=1.0, T0=3.0, q0=0.0,
                        params: Optional[ModelParams] = None) -> ManufacturedFields:
    if params is None:
        params = ModelParams()
    return ManufacturedFields(K0=K0, k0=k0, A0=A0, a0=a0, L=L, T0=T0, q0=q0,
                              params=params)


@dataclass(frozen=True)
class CaseSpec:
    """Everything needed to set up, run, and score a benchmark case."""

    name: str
    dimension: int
    x_min: float
    x_max: float
    t_end: float
    default_cells: int
    boundary: str
    reference: Optional[str]  # analytic-manufactured | exact-riemann | fine-grid
    profile: Optional[StiffnessProfile] = None
    pieces: tuple = ()  # ((x_break, (A, u)), ..., (None, (A, u))) left to right
    manufactured_K0: Optional[float] = None
    quadrants: tuple = ()  # 2D: ((A, u, v) for quadrants 1..4)
    center: tuple = (0.5, 0.5)
    k_const: Optional[float] = None
    y_min: float = 0.0
    y_max: float = 1.0

    def __post_init__(self):
        if self.t_end <= 0.0:
            raise ValueError("final time must be positive")


_STENOSIS = dict(x0=0.6, x1=0.8, k_left=6.0, drop=0.5)


def case_registry() -> dict:
    """All shipped cases, keyed by name."""
    cases = [
        CaseSpec(
            name="example1", dimension=1, x_min=0.0, x_max=1.0, t_end=0.025,
            default_cells=51, boundary="periodic", reference="analytic-manufactured",
            profile=SinusoidalProfile(6.0, 1.2, 1.0), manufactured_K0=6.0),
        CaseSpec(
            name="example2", dimension=1, x_min=0.0, x_max=10.0, t_end=0.75,
            default_cells=200, boundary="outflow", reference="exact-riemann",
            profile=ConstantProfile(10.0),
            pieces=((0.3, (3.5, 3.5)), (None, (2.5, 5.0)))),
        CaseSpec(
            name="example3", dimension=1, x_min=0.0, x_max=4.0, t_end=0.6,
            default_cells=300, boundary="outflow", reference="fine-grid",
            profile=SineRampProfile(**_STENOSIS),
            pieces=((0.6, (1.2, 3.5)), (None, (1.5, 2.5)))),
        CaseSpec(
            name="example4", dimension=1, x_min=0.0, x_max=15.0, t_end=1.5,
            default_cells=400, boundary="outflow", reference="fine-grid",
            profile=SineRampProfile(**_STENOSIS),
            pieces=((0.6, (2.0, 3.061)), (0.8, (1.5, 2.5)),
                    (None, (1.3307492, 2.818)))),
        CaseSpec(
            name="example5", dimension=2, x_min=0.0, x_max=1.0, t_end=0.25,
            default_cells=400, boundary="outflow", reference=None, k_const=5.0,
            quadrants=((1.0, 0.0, 0.0), (0.5179, -0.9316, 0.0),
                       (0.1492, -0.9316, -1.4045), (0.356, 0.0, -1.4045))),
        CaseSpec(
            name="example6", dimension=2, x_min=0.0, x_max=1.0, t_end=0.25,
            default_cells=400, boundary="outflow", reference=None, k_const=5.0,
            quadrants=((1.0, 0.0, 0.0), (1.552, -0.7169, 0.0),
                       (1.0, -0.7169, -0.7169), (1.552, 0.0, -0.7169))),
        CaseSpec(
            name="example7", dimension=2, x_min=0.0, x_max=1.0, t_end=0.25,
            default_cells=400, boundary="outflow", reference=None, k_const=5.0,
            quadrants=((1.0, 0.0, 0.0), (1.5, 0.6655, 0.0),
                       (1.0, 0.6655, 0.6655), (1.5, 0.0, 0.6655))),
        CaseSpec(
            name="example8", dimension=2, x_min=0.0, x_max=1.0, t_end=0.25,
            default_cells=400, boundary="outflow", reference=None, k_const=5.0,
            quadrants=((3.5, 0.0, 0.0), (1.428, 1.7849, 0.0),
                       (0.46599, 1.7849, 1.7849), (1.428, 0.0, 1.7849))),
    ]
    return {c.name: c for c in cases}


def _piecewise_state(case: CaseSpec, x):
    A = np.empty_like(x)
    u = np.empty_like(x)
    lo = -np.inf
    for brk, (Ai, ui) in case.pieces:
        hi = np.inf if brk is None else brk
        sel = (x >= lo) & (x < hi)
        A[sel] = Ai
        u[sel] = ui
        lo = hi
    return A, u


def build_grid(case: CaseSpec, N=None, params: Optional[ModelParams] = None,
               alpha=0.9) -> Grid1D:
    """Initial 1D grid for a registry case (2D cases use grid2d builders)."""
    if case.dimension != 1:
        raise ValueError(f"{case.name} is {case.dimension}D; use the 2D builder")
    if params is None:
        params = ModelParams()
    N = case.default_cells if N is None else int(N)
    grid = Grid1D(case.x_min, case.x_max, N, case.profile, params,
                  boundary=case.boundary, alpha=alpha)
    x = grid.centers()
    if case.manufactured_K0 is not None:
        mf = manufactured_fields(case.manufactured_K0, params=params)
        A0 = mf.A(x, 0.0)
        q0 = mf.q(x, 0.0)
        sA = mf.A_x(x, 0.0)
        su = (mf.q_x(x, 0.0) - (q0 / A0) * sA) / A0
        grid.set_state(A0, q0 / A0, sA=sA, su=su)
        grid.source = mf.B
    else:
        A0, u0 = _piecewise_state(case, x)
        grid.set_state(A0, u0)  # pure jump data starts with zero slopes
    return grid


def build_grid2d(case: CaseSpec, Nx=None, Ny=None,
                 params: Optional[ModelParams] = None, alpha=0.9):
    """Initial 2D grid for a four-quadrant registry case."""
    from .grid2d import Grid2D, four_quadrant_init

    if case.dimension != 2:
        raise ValueError(f"{case.name} is {case.dimension}D; use build_grid")
    if params is None:
        params = ModelParams()
    Nx = case.default_cells if Nx is None else int(Nx)
    Ny = Nx if Ny is None else int(Ny)
    grid = Grid2D(case.x_min, case.x_max, case.y_min, case.y_max, Nx, Ny,
                  case.k_const, params, boundary=case.boundary, alpha=alpha)
    return four_quadrant_init(grid, *case.quadrants, center=case.center)


def run_case2d(case: CaseSpec, Nx=None, Ny=None, cfl=0.5, t_end=None,
               params: Optional[ModelParams] = None, alpha=0.9):
    """Advance a 2D case with Strang splitting to its final time."""
    from .grid2d import cfl_dt_2d, strang_step

    grid = build_grid2d(case, Nx=Nx, Ny=Ny, params=params, alpha=alpha)
    t_end = case.t_end if t_end is None else float(t_end)
    while grid.t < t_end - 1e-14:
        dt = min(cfl_dt_2d(grid, cfl), t_end - grid.t)
        strang_step(grid, dt)
    return grid


def run_case(case: CaseSpec, scheme="grp", N=None, cfl=0.5, t_end=None,
             params: Optional[ModelParams] = None, alpha=0.9) -> Grid1D:
    """Advance a 1D case to its final time; returns the finished grid."""
    if scheme not in ("grp", "godunov"):
        raise ValueError(f"unknown scheme {scheme!r}")
    grid = build_grid(case, N=N, params=params, alpha=alpha)
    t_end = case.t_end if t_end is None else float(t_end)
    advance = grid.step if scheme == "grp" else grid.godunov_step
    while grid.t < t_end - 1e-14:
        dt = min(cfl_dt(grid, cfl), t_end - grid.t)
        advance(dt)
    return grid


def reference_evaluator(case: CaseSpec, params: Optional[ModelParams] = None,
                        fine_cells=8000) -> Callable:
    """Callable (x, t) -> A for the case's reference solution."""
    if params is None:
        params = ModelParams()
    if case.reference == "analytic-manufactured":
        mf = manufactured_fields(case.manufactured_K0, params=params)
        return mf.A
    if case.reference == "exact-riemann":
        (brk, left), (_, right) = case.pieces
        star = solve_star(left[0], left[1], right[0], right[1],
                          case.profile.value, params)

        def evaluate(x, t):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            if t <= 0.0:
                return _piecewise_state(case, x)[0]
            return np.array([sample(star, (xi - brk) / t, params)[0] for xi in x])

        return evaluate
    if case.reference == "fine-grid":
        return fine_grid_reference(case, params=params, fine_cells=fine_cells)
    raise ValueError(f"case {case.name} has no reference")


def fine_grid_reference(case: CaseSpec, params: Optional[ModelParams] = None,
                        fine_cells=8000) -> Callable:
    """Reference from a fine run; returns (x, t) -> cell-average restriction.

    The evaluator requires t == case.t_end and x equal to the centers of a
    coarse grid whose cell count divides fine_cells.
    """
    fine = run_case(case, scheme="grp", N=fine_cells, params=params)

    def evaluate(x, t):
        if abs(t - case.t_end) > 1e-12:
            raise ValueError("fine-grid reference is only available at t_end")
        x = np.atleast_1d(np.asarray(x, dtype=float))
        N = x.size
        if fine_cells % N:
            raise ValueError(f"coarse count {N} must divide {fine_cells}")
        ratio = fine_cells // N
        return fine.A.reshape(N, ratio).mean(axis=1)

    return evaluate
