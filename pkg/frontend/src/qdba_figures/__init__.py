"""Figure rendering for the simulator's CSV outputs."""

from .render import ANCHOR_LEVELS, FIGURE_KINDS, PRESET_COLORS, FigureSpec, build_figure, render
from .schema import HISTOGRAM_COLUMNS, SWEEP_COLUMNS, SchemaError, load_histogram, load_sweep

__all__ = [
    "ANCHOR_LEVELS",
    "FIGURE_KINDS",
    "PRESET_COLORS",
    "FigureSpec",
    "HISTOGRAM_COLUMNS",
    "SWEEP_COLUMNS",
    "SchemaError",
    "build_figure",
    "load_histogram",
    "load_sweep",
    "render",
]
