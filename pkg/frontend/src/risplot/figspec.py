"""Figure descriptions and CSV curve loading.

This package is display-only: it reads sweep CSVs produced by the
simulation harness and plots the columns verbatim, never recomputing any
metric. The expected CSV schema is fixed (see ``CSV_COLUMNS``).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

CSV_COLUMNS = (
    "axis_name",
    "axis_value",
    "ber_benign",
    "ber_attack",
    "c_u_mean",
    "c_e_mean",
    "c_s_mean",
    "p_out",
    "p_out_ci95",
    "n_sim",
    "seed",
)

PANEL_KINDS = ("ber", "throughput", "secrecy")


class SchemaError(ValueError):
    """A CSV file does not match the expected sweep schema."""


@dataclass(frozen=True)
class Curve:
    """One plotted series: the rows of a single sweep CSV."""

    label: str
    axis_name: str
    axis_values: tuple
    columns: dict

    def column(self, name):
        return self.columns[name]


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: which CSVs, which panel kind, where to write the image."""

    kind: str
    axis: str
    csv_paths: tuple
    out_path: str
    labels: tuple = ()
    log_scale: bool = True

    def __post_init__(self):
        if self.kind not in PANEL_KINDS:
            raise ValueError(f"unknown panel kind {self.kind!r}; expected one of {PANEL_KINDS}")
        if not self.csv_paths:
            raise ValueError("at least one input CSV is required")
        if self.labels and len(self.labels) != len(self.csv_paths):
            raise ValueError("labels must match the number of input CSVs")

    def curve_labels(self):
        if self.labels:
            return self.labels
        return tuple(Path(p).stem for p in self.csv_paths)


def load_figure_spec(path):
    """Read a FigureSpec from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    known = {"kind", "axis", "csv_paths", "out_path", "labels", "log_scale"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown figure-spec keys: {sorted(unknown)}")
    raw["csv_paths"] = tuple(raw.get("csv_paths", ()))
    raw["labels"] = tuple(raw.get("labels", ()))
    return FigureSpec(**raw)


def read_curve(path, label=None):
    """Parse one sweep CSV into a Curve, validating the schema."""
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in CSV_COLUMNS if c not in header]
        if missing:
            raise SchemaError(f"{path}: missing column {missing[0]!r}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: empty curve (no data rows)")
    axis_names = {r["axis_name"] for r in rows}
    if len(axis_names) != 1:
        raise SchemaError(f"{path}: mixed axis names {sorted(axis_names)}")
    numeric = [c for c in CSV_COLUMNS if c != "axis_name"]
    columns = {c: tuple(float(r[c]) for r in rows) for c in numeric}
    return Curve(
        label=label if label is not None else path.stem,
        axis_name=axis_names.pop(),
        axis_values=columns["axis_value"],
        columns=columns,
    )


def read_curves(spec):
    """Load every curve listed in the FigureSpec and check they share the requested axis."""
    curves = [read_curve(p, lab) for p, lab in zip(spec.csv_paths, spec.curve_labels())]
    for c in curves:
        if c.axis_name != spec.axis:
            raise SchemaError(
                f"curve {c.label!r} sweeps {c.axis_name!r} but the figure axis is {spec.axis!r}"
            )
    return curves
