"""Display-only figure rendering for sweep CSVs produced by the simulation harness."""

from .figspec import CSV_COLUMNS, Curve, FigureSpec, SchemaError, load_figure_spec, read_curve, read_curves
from .render import render

__all__ = [
    "CSV_COLUMNS",
    "Curve",
    "FigureSpec",
    "SchemaError",
    "load_figure_spec",
    "read_curve",
    "read_curves",
    "render",
]
