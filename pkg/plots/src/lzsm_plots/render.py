"""Figure rendering for each supported CSV layout.

All rendering goes through the Agg backend with fixed figure geometry and a
fixed PNG metadata block, so identical input bytes yield identical output
bytes.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import CsvFormatError, Table, pivot_grid

__all__ = ["KINDS", "render"]

_FIGSIZE = (6.4, 4.8)
_DPI = 120
_METADATA = {"Software": "lzsm-plots"}


def _heatmap(ax, table: Table, z_col: str, label: str):
    xs, ys, zz = pivot_grid(
        table, "amplitude_over_delta", "omega_over_delta", z_col
    )
    mesh = ax.pcolormesh(xs, ys, zz, shading="nearest", cmap="viridis")
    ax.set_xlabel("amplitude / gap")
    ax.set_ylabel("frequency / gap")
    return mesh, label


def _render_heatmap_p01(fig, ax, table: Table) -> None:
    mesh, label = _heatmap(ax, table, "p01", "transition probability")
    fig.colorbar(mesh, ax=ax, label=label)
    ax.set_title("One-period transition probability")


def _render_heatmap_error(fig, ax, table: Table) -> None:
    mesh, label = _heatmap(ax, table, "neg_log10_error", "-log10(gate error)")
    fig.colorbar(mesh, ax=ax, label=label)
    ax.set_title("Gate error landscape")


_RATE_COLUMNS = (
    ("gamma1_over_gamma", "relaxation"),
    ("gamma_phi_over_gamma", "pure dephasing"),
    ("gamma2_over_gamma", "decoherence"),
)


def _render_rate_lines(fig, ax, table: Table) -> None:
    a = table.column("amplitude_over_delta")
    omegas = np.unique(table.column("omega_over_delta"))
    for w in omegas:
        sel = table.column("omega_over_delta") == w
        order = np.argsort(a[sel])
        suffix = f" (w={w:g})" if omegas.size > 1 else ""
        for col, label in _RATE_COLUMNS:
            ax.plot(a[sel][order], table.column(col)[sel][order],
                    label=label + suffix)
    ax.set_xlabel("amplitude / gap")
    ax.set_ylabel("rate / noise strength")
    ax.set_title("Driven decoherence rates")
    ax.legend()


_APPROX_COLUMNS = (
    ("p01_exact", "exact"),
    ("p01_chrw", "self-consistent"),
    ("p01_dr", "double-rotating"),
    ("p01_magnus", "period-averaged"),
)


def _render_approx_lines(fig, ax, table: Table) -> None:
    w = table.column("omega_over_delta")
    order = np.argsort(w)
    for col, label in _APPROX_COLUMNS:
        ax.plot(w[order], table.column(col)[order], marker="o", label=label)
    ax.set_xlabel("frequency / gap")
    ax.set_ylabel("transition probability")
    ax.set_title("Approximation comparison")
    ax.legend()


def _render_population_trace(fig, ax, table: Table) -> None:
    t = table.column("time_over_period")
    pop_cols = [c for c in table.columns if c.startswith("p") and c != "period"
                and c != "time_over_period"]
    if not pop_cols:
        raise CsvFormatError("no population columns (p0/p1 or p00..p11) found")
    order = np.argsort(t)
    for c in pop_cols:
        ax.plot(t[order], table.column(c)[order], label=c)
    ax.set_xlabel("time / period")
    ax.set_ylabel("population")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title("Population trace")
    ax.legend()


KINDS = {
    "heatmap_p01": _render_heatmap_p01,
    "heatmap_error": _render_heatmap_error,
    "rate_lines": _render_rate_lines,
    "approx_lines": _render_approx_lines,
    "population_trace": _render_population_trace,
}


def render(table: Table, kind: str, out_path: str) -> None:
    """Render ``table`` as the given figure kind into ``out_path``."""
    if kind not in KINDS:
        raise CsvFormatError(f"unknown kind {kind!r}; pick one of {sorted(KINDS)}")
    fig, ax = plt.subplots(figsize=_FIGSIZE, dpi=_DPI)
    try:
        KINDS[kind](fig, ax, table)
        fig.savefig(out_path, metadata=dict(_METADATA))
    finally:
        plt.close(fig)
