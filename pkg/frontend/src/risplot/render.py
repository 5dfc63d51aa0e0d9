"""Panel rendering: BER (log scale), throughput, and secrecy outage/capacity."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .figspec import read_curves

_AXIS_LABELS = {"rho": r"$\rho$", "beta": r"$\beta$"}


def _axis_label(axis):
    return _AXIS_LABELS.get(axis, axis)


def _render_ber(ax, curves, spec):
    for c in curves:
        ax.plot(c.axis_values, c.column("ber_attack"), marker="o",
                label=f"{c.label} (attack)")
        ax.plot(c.axis_values, c.column("ber_benign"), marker="s",
                linestyle="--", label=f"{c.label} (benign)")
    if spec.log_scale:
        ax.set_yscale("log")
    ax.set_ylabel("BER")
    ax.legend()


def _render_throughput(ax, curves, spec):
    for c in curves:
        ax.plot(c.axis_values, c.column("c_u_mean"), marker="o",
                label=f"{c.label} (UE)")
        ax.plot(c.axis_values, c.column("c_e_mean"), marker="^",
                linestyle="--", label=f"{c.label} (Eve)")
    ax.set_ylabel("throughput (b/s/Hz)")
    ax.legend()


def _render_secrecy(ax, curves, spec):
    twin = ax.twinx()
    for c in curves:
        ax.errorbar(c.axis_values, c.column("p_out"), yerr=c.column("p_out_ci95"),
                    marker="o", label=f"{c.label} ($P_{{out}}$)")
        twin.plot(c.axis_values, c.column("c_s_mean"), marker="^",
                  linestyle="--", label=f"{c.label} ($C_s$)")
    ax.set_ylabel("secrecy outage probability")
    twin.set_ylabel("secrecy capacity (b/s/Hz)")
    handles_a, labels_a = ax.get_legend_handles_labels()
    handles_b, labels_b = twin.get_legend_handles_labels()
    ax.legend(handles_a + handles_b, labels_a + labels_b)
    return twin


_PANELS = {
    "ber": _render_ber,
    "throughput": _render_throughput,
    "secrecy": _render_secrecy,
}


def render(spec):
    """Render the figure described by spec and write it to spec.out_path.

    Returns the matplotlib Figure so tests can inspect the plotted data.
    """
    curves = read_curves(spec)
    fig, ax = plt.subplots(figsize=(6.0, 4.0), layout="constrained")
    _PANELS[spec.kind](ax, curves, spec)
    ax.set_xlabel(_axis_label(spec.axis))
    ax.grid(True, alpha=0.3)
    fig.savefig(spec.out_path)
    return fig
