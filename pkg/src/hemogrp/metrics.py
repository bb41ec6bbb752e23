"""Error norms and convergence tables."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cases import CaseSpec, build_grid, reference_evaluator, run_case
from .grid1d import Grid1D, cfl_dt
from .model import ModelParams

__all__ = ["ErrorReport", "error_norm", "convergence_study"]


@dataclass(frozen=True)
class ErrorReport:
    """A single (case, scheme, resolution) error measurement."""

    kind: str  # "L1" | "Linf"
    value: float
    cells: int
    scheme: str
    case: str
    runtime: float = 0.0

    def __post_init__(self):
        if self.value < 0.0:
            raise ValueError("error norm cannot be negative")
        if self.kind not in ("L1", "Linf"):
            raise ValueError(f"unknown norm kind {self.kind!r}")


def error_norm(grid: Grid1D, reference, kind="Linf", case_name="",
               scheme="", runtime=0.0) -> ErrorReport:
    """Area error against a reference evaluator sampled at cell centers."""
    ref = np.asarray(reference(grid.centers(), grid.t), dtype=float)
    if ref.shape != grid.A.shape:
        raise ValueError("reference does not match the grid layout")
    diff = np.abs(grid.A - ref)
    if kind == "Linf":
        value = float(diff.max())
    elif kind == "L1":
        value = float(diff.sum() * grid.dx)
    else:
        raise ValueError(f"unknown norm kind {kind!r}")
    return ErrorReport(kind=kind, value=value, cells=grid.N, scheme=scheme,
                       case=case_name, runtime=runtime)


def convergence_study(case: CaseSpec, mode="time-halving", scheme="grp",
                      levels=4, base_time: Optional[float] = None,
                      cells=(50, 100, 200, 400), kind="Linf", cfl=0.5,
                      params: Optional[ModelParams] = None):
    """Error table under refinement; returns rows (level, param, error, order).

    time-halving: fixed cell count (the case default), final times
    base_time / 2^level — the error-vs-final-time protocol of the
    manufactured study.  mesh-doubling: fixed final time, growing cell
    counts.
    """
    if case.reference is None:
        raise ValueError(f"case {case.name} has no reference")
    rows = []
    prev = None
    if mode == "time-halving":
        t0 = case.t_end if base_time is None else float(base_time)
        for level in range(levels):
            t = t0 / 2 ** level
            tic = time.perf_counter()
            grid = run_case(case, scheme=scheme, cfl=cfl, t_end=t, params=params)
            runtime = time.perf_counter() - tic
            ref = reference_evaluator(case, params=params)
            rep = error_norm(grid, ref, kind=kind, case_name=case.name,
                             scheme=scheme, runtime=runtime)
            order = np.nan if prev is None else float(np.log2(prev / rep.value))
            rows.append((level, t, rep.value, order))
            prev = rep.value
    elif mode == "mesh-doubling":
        for level, N in enumerate(cells):
            tic = time.perf_counter()
            grid = run_case(case, scheme=scheme, N=N, cfl=cfl, params=params)
            runtime = time.perf_counter() - tic
            ref = reference_evaluator(case, params=params)
            rep = error_norm(grid, ref, kind=kind, case_name=case.name,
                             scheme=scheme, runtime=runtime)
            order = np.nan if prev is None else float(np.log2(prev / rep.value))
            rows.append((level, N, rep.value, order))
            prev = rep.value
    else:
        raise ValueError(f"unknown study mode {mode!r}")
    return rows
