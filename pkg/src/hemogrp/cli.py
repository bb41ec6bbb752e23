"""Command-line entry point.

Subcommands: run, convergence, riemann, grp-probe, list-cases.  Output
files land in $HEMOGRP_OUT (default ./out).  An optional flat key=value
config file mirrors the flag names; explicit flags win on conflict.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
import time
from pathlib import Path

import numpy as np

from .cases import (
    case_registry,
    reference_evaluator,
    run_case,
    run_case2d,
)
from .grid1d import write_snapshot
from .grid2d import write_snapshot_2d
from .grp import GrpInput, grp_interface
from .metrics import convergence_study, error_norm
from .model import ModelParams
from .riemann import solve_star

__all__ = ["main"]


def _out_dir(args) -> Path:
    root = args.out or os.environ.get("HEMOGRP_OUT") or "./out"
    path = Path(root)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _load_config(path):
    """Flat key=value lines; blank lines and #-comments ignored."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, val = line.partition("=")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _apply_config(args, parser):
    """Fill unset args from --config; command-line flags keep priority."""
    if not getattr(args, "config", None):
        return args
    file_vals = _load_config(args.config)
    defaults = {a.dest: parser.get_default(a.dest) for a in parser._actions}
    for key, raw in file_vals.items():
        if key not in defaults:
            raise SystemExit(f"error: unknown config key {key!r}")
        if getattr(args, key) != defaults[key]:
            continue  # flag was given explicitly; it wins
        default = defaults[key]
        cast = type(default) if default is not None else str
        setattr(args, key, cast(raw) if cast is not bool else raw == "true")
    return args


def _lookup_case(name):
    registry = case_registry()
    if name not in registry:
        raise SystemExit(
            f"error: unknown case {name!r}; valid cases: "
            + ", ".join(sorted(registry)))
    return registry[name]


def _write_error_report(path, report):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["case", "scheme", "cells", "kind", "value", "runtime"])
        w.writerow([report.case, report.scheme, report.cells, report.kind,
                    _fmt(report.value), _fmt(report.runtime)])


def _cmd_run(args, parser):
    _apply_config(args, parser)
    case = _lookup_case(args.case)
    out = _out_dir(args)
    params = ModelParams()
    tic = time.perf_counter()
    if case.dimension == 2:
        grid = run_case2d(case, Nx=args.nx or args.cells, Ny=args.ny,
                          cfl=args.cfl, t_end=args.t_end, params=params,
                          alpha=args.alpha)
        snap = out / f"{case.name}_{args.scheme}_{grid.Nx}x{grid.Ny}.csv"
        write_snapshot_2d(grid, snap)
        print(f"wrote {snap}")
        return 0
    grid = run_case(case, scheme=args.scheme, N=args.cells, cfl=args.cfl,
                    t_end=args.t_end, params=params, alpha=args.alpha)
    runtime = time.perf_counter() - tic
    snap = out / f"{case.name}_{args.scheme}_{grid.N}.csv"
    write_snapshot(grid, snap)
    print(f"wrote {snap}")
    if case.reference is not None and args.t_end is None:
        ref = reference_evaluator(case, params=params)
        kind = "Linf" if case.reference == "analytic-manufactured" else "L1"
        report = error_norm(grid, ref, kind=kind, case_name=case.name,
                            scheme=args.scheme, runtime=runtime)
        rep_path = out / f"{case.name}_{args.scheme}_{grid.N}_error.csv"
        _write_error_report(rep_path, report)
        print(f"{kind} error = {report.value:.6e} ({rep_path})")
    return 0


def _cmd_convergence(args, parser):
    _apply_config(args, parser)
    case = _lookup_case(args.case)
    out = _out_dir(args)
    cells = tuple(int(c) for c in args.cells.split(","))
    rows = convergence_study(case, mode=args.mode, scheme=args.scheme,
                             base_time=args.t0, cells=cells, kind=args.kind,
                             cfl=args.cfl)
    path = out / f"{case.name}_{args.scheme}_{args.mode}.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["level", "param", "error", "order"])
        for level, param, err, order in rows:
            w.writerow([level, _fmt(param), _fmt(err),
                        "" if np.isnan(order) else _fmt(order)])
    for level, param, err, order in rows:
        tag = "--" if np.isnan(order) else f"{order:.2f}"
        print(f"level {level}: param={param:g} error={err:.4e} order={tag}")
    print(f"wrote {path}")
    return 0


def _cmd_riemann(args, parser):
    _apply_config(args, parser)
    star = solve_star(args.al, args.ul, args.ar, args.ur, args.k, ModelParams())
    print(f"A* = {star.A_star:.12g}")
    print(f"u* = {star.u_star:.12g}")
    print(f"c* = {star.c_star:.12g}")
    print(f"left wave:  {star.left_kind.name.lower()} "
          f"speeds {tuple(round(s, 8) for s in star.left_speeds)}")
    print(f"right wave: {star.right_kind.name.lower()} "
          f"speeds {tuple(round(s, 8) for s in star.right_speeds)}")
    return 0


def _cmd_grp_probe(args, parser):
    _apply_config(args, parser)
    inp = GrpInput(A_left=args.al, u_left=args.ul,
                   A_right=args.ar, u_right=args.ur,
                   dA_left=args.dal, du_left=args.dul,
                   dA_right=args.dar, du_right=args.dur,
                   k0=args.k, kprime0=args.kp)
    rates = grp_interface(inp, ModelParams())
    print(f"case    = {rates.case_tag}")
    print(f"A*      = {rates.A_star:.12g}")
    print(f"u*      = {rates.u_star:.12g}")
    print(f"dA/dt   = {rates.dA_dt:.12g}")
    print(f"du/dt   = {rates.du_dt:.12g}")
    return 0


def _cmd_list_cases(args, parser):
    for name, case in sorted(case_registry().items()):
        ref = case.reference or "none"
        print(f"{name}: {case.dimension}D, t_end={case.t_end:g}, "
              f"default cells={case.default_cells}, reference={ref}")
    return 0


def _add_common(p):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--out", help="output directory (or $HEMOGRP_OUT, ./out)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hemogrp",
        description="1D/2D finite-volume workbench for the arterial "
                    "cross-section flow system")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="advance one case and write artifacts")
    p.add_argument("--case", required=True)
    p.add_argument("--scheme", choices=("grp", "godunov"), default="grp")
    p.add_argument("--cells", type=int, default=None)
    p.add_argument("--nx", type=int, default=None)
    p.add_argument("--ny", type=int, default=None)
    p.add_argument("--cfl", type=float, default=0.5)
    p.add_argument("--t-end", type=float, default=None)
    p.add_argument("--alpha", type=float, default=0.9)
    _add_common(p)
    p.set_defaults(func=_cmd_run, parser=p)

    p = sub.add_parser("convergence", help="error table under refinement")
    p.add_argument("--case", required=True)
    p.add_argument("--mode", choices=("time-halving", "mesh-doubling"),
                   default="time-halving")
    p.add_argument("--scheme", choices=("grp", "godunov"), default="grp")
    p.add_argument("--t0", type=float, default=None)
    p.add_argument("--cells", default="50,100,200,400")
    p.add_argument("--kind", choices=("L1", "Linf"), default="Linf")
    p.add_argument("--cfl", type=float, default=0.5)
    _add_common(p)
    p.set_defaults(func=_cmd_convergence, parser=p)

    p = sub.add_parser("riemann", help="solve one two-state interface problem")
    p.add_argument("--al", type=float, required=True)
    p.add_argument("--ul", type=float, required=True)
    p.add_argument("--ar", type=float, required=True)
    p.add_argument("--ur", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_riemann, parser=p)

    p = sub.add_parser("grp-probe",
                       help="interface time-derivatives for sloped data")
    p.add_argument("--al", type=float, required=True)
    p.add_argument("--ul", type=float, required=True)
    p.add_argument("--ar", type=float, required=True)
    p.add_argument("--ur", type=float, required=True)
    p.add_argument("--dal", type=float, default=0.0)
    p.add_argument("--dul", type=float, default=0.0)
    p.add_argument("--dar", type=float, default=0.0)
    p.add_argument("--dur", type=float, default=0.0)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--kp", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(func=_cmd_grp_probe, parser=p)

    p = sub.add_parser("list-cases", help="show the case registry")
    _add_common(p)
    p.set_defaults(func=_cmd_list_cases, parser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, args.parser)
    except SystemExit:
        raise
    except (ValueError, FloatingPointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
