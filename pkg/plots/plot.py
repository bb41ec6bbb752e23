#!/usr/bin/env python3
"""Render solver CSV artifacts as static PNG figures.

Usage:
    plot <kind> <input.csv> [reference.csv] -o <out.png>

Kinds:
    profile-1d   two-panel A(x), u(x) from a 1D snapshot
    overlay-1d   A(x) with a reference curve overlaid (reference required)
    contour-2d   filled area contours from a 2D snapshot

The output file is written only after the inputs parse cleanly, so a
failed run never leaves a partial image behind.
"""
import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

import style  # noqa: E402

SCHEMAS = {
    "profile-1d": ("x", "A", "u"),
    "overlay-1d": ("x", "A", "u"),
    "contour-2d": ("x", "y", "A", "u", "v"),
}


class InputError(Exception):
    pass


def load_csv(path, columns):
    """Columns of a snapshot CSV as float arrays; '#' lines are metadata."""
    meta = {}
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(str(exc))
    rows = []
    header = None
    for line in lines:
        if line.startswith("#"):
            for token in line[1:].split():
                if "=" in token:
                    key, _, val = token.partition("=")
                    meta[key] = val
            continue
        if not line.strip():
            continue
        if header is None:
            header = [c.strip() for c in line.split(",")]
        else:
            rows.append(line.split(","))
    if header is None or not rows:
        raise InputError(f"empty input: {path}")
    for col in columns:
        if col not in header:
            raise InputError(f"missing column {col!r} in {path}")
    data = np.array(rows, dtype=float)
    out = {col: data[:, header.index(col)] for col in columns}
    out["_meta"] = meta
    return out


def _new_axes(n_panels, figsize):
    fig, axes = plt.subplots(1, n_panels, figsize=figsize, squeeze=False)
    return fig, axes[0]


def render_profile_1d(data, reference, out):
    fig, (ax_a, ax_u) = _new_axes(2, style.FIGSIZE_1D)
    for ax, field, label in ((ax_a, "A", "area A"), (ax_u, "u", "velocity u")):
        ax.plot(data["x"], data[field], style.SOLUTION_MARKER + "-",
                color=style.SOLUTION_COLOR, markersize=style.MARKER_SIZE,
                linewidth=style.LINE_WIDTH, label="computed")
        ax.set_xlabel("x")
        ax.set_ylabel(label)
    ax_a.legend()
    fig.savefig(out, dpi=style.DPI, metadata={"Software": "plots"})
    plt.close(fig)


def render_overlay_1d(data, reference, out):
    fig, (ax_a, ax_u) = _new_axes(2, style.FIGSIZE_1D)
    for ax, field, label in ((ax_a, "A", "area A"), (ax_u, "u", "velocity u")):
        ax.plot(reference["x"], reference[field], "-",
                color=style.REFERENCE_COLOR, linewidth=style.LINE_WIDTH,
                label="reference")
        ax.plot(data["x"], data[field], style.SOLUTION_MARKER,
                color=style.SOLUTION_COLOR, markersize=style.MARKER_SIZE,
                label="computed")
        ax.set_xlabel("x")
        ax.set_ylabel(label)
    ax_a.legend()
    fig.savefig(out, dpi=style.DPI, metadata={"Software": "plots"})
    plt.close(fig)


def render_contour_2d(data, reference, out):
    meta = data["_meta"]
    try:
        nx, ny = int(meta["nx"]), int(meta["ny"])
    except KeyError:
        nx = np.unique(data["x"]).size
        ny = np.unique(data["y"]).size
    if nx * ny != data["A"].size:
        raise InputError(f"grid shape {nx}x{ny} does not match "
                         f"{data['A'].size} rows")
    X = data["x"].reshape(nx, ny)
    Y = data["y"].reshape(nx, ny)
    A = data["A"].reshape(nx, ny)
    fig, (ax,) = _new_axes(1, style.FIGSIZE_2D)
    filled = ax.contourf(X, Y, A, levels=style.CONTOUR_LEVELS,
                         cmap=style.CONTOUR_CMAP)
    ax.contour(X, Y, A, levels=style.CONTOUR_LEVELS, colors="k",
               linewidths=0.3)
    fig.colorbar(filled, ax=ax, label="area A")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    fig.savefig(out, dpi=style.DPI, metadata={"Software": "plots"})
    plt.close(fig)


RENDERERS = {
    "profile-1d": render_profile_1d,
    "overlay-1d": render_overlay_1d,
    "contour-2d": render_contour_2d,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot", description="render solver CSV artifacts as figures")
    parser.add_argument("kind", choices=sorted(SCHEMAS))
    parser.add_argument("input", help="snapshot CSV")
    parser.add_argument("reference", nargs="?",
                        help="reference CSV (required for overlay-1d)")
    parser.add_argument("-o", "--output", required=True, help="output PNG")
    args = parser.parse_args(argv)
    style.apply_style(plt)
    try:
        if args.kind == "overlay-1d" and args.reference is None:
            raise InputError("overlay-1d needs a reference CSV")
        data = load_csv(args.input, SCHEMAS[args.kind])
        reference = None
        if args.reference is not None:
            reference = load_csv(args.reference, SCHEMAS["profile-1d"])
        RENDERERS[args.kind](data, reference, args.output)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
