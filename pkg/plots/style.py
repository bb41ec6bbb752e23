"""Single source of figure style so outputs are comparable across runs."""

DPI = 150

FIGSIZE_1D = (8.0, 5.0)
FIGSIZE_2D = (6.0, 5.5)

SOLUTION_COLOR = "#1f4e9c"
REFERENCE_COLOR = "#c23b22"
SOLUTION_MARKER = "o"
MARKER_SIZE = 3.0
LINE_WIDTH = 1.2
CONTOUR_LEVELS = 30
CONTOUR_CMAP = "viridis"

RC = {
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.labelsize": 11,
    "legend.frameon": False,
    "figure.constrained_layout.use": True,
    "savefig.dpi": DPI,
}


def apply_style(plt):
    plt.rcParams.update(RC)
