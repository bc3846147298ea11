"""Figure rendering from pairvortex CSV artifacts.

Inputs are read-only and figures regenerate deterministically from
(recipe, CSV).  Each figure carries a short hash of the JSON metadata (or
manifest) found next to its primary input, so a printed panel can be traced
back to the exact run that produced it.
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureRecipe", "SchemaError", "render", "render_field", "render_distribution"]

FIELD_HEADER = ["t", "E_over_ES", "eA_over_mc"]
GRID_HEADER = ["p_par", "p_perp", "c2_re", "c2_im", "f", "phase"]
VORTEX_HEADER = ["p_par", "p_perp", "charge"]


class SchemaError(ValueError):
    """Input file does not carry the expected CSV schema."""


@dataclass(frozen=True)
class FigureRecipe:
    """Everything that determines a figure given its input files.

    layout 'timeseries' renders the field/potential curves; layout
    'magnitude-phase' renders the two-panel momentum map.  inputs holds the
    primary CSV first and, optionally, a vortex CSV second.
    """

    inputs: tuple
    layout: str
    output: str
    magnitude_exponent: float = 0.5
    vmin: Optional[float] = None
    vmax: Optional[float] = None
    dpi: int = 150


def _read_csv(path: str, expected: Sequence[str]) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().strip()
    if header.split(",") != list(expected):
        raise SchemaError(f"{path}: expected columns {','.join(expected)}, got {header!r}")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != len(expected):
        raise SchemaError(f"{path}: ragged rows")
    return data


def _provenance_tag(primary_input: str) -> str:
    base = primary_input[:-4] if primary_input.endswith(".csv") else primary_input
    for candidate in (base + ".json", primary_input + ".manifest.json", base + ".manifest.json"):
        if os.path.exists(candidate):
            with open(candidate, "rb") as fh:
                digest = hashlib.sha256(fh.read()).hexdigest()[:12]
            return f"{os.path.basename(candidate)} {digest}"
    return "no metadata"


def _annotate(fig, recipe: FigureRecipe):
    fig.text(
        0.995,
        0.005,
        _provenance_tag(recipe.inputs[0]),
        ha="right",
        va="bottom",
        fontsize=5,
        color="0.45",
    )


def render(recipe: FigureRecipe):
    """Dispatch on the recipe layout; returns the matplotlib figure."""
    if recipe.layout == "timeseries":
        return _render_field(recipe)
    if recipe.layout == "magnitude-phase":
        return _render_distribution(recipe)
    raise ValueError(f"unknown layout {recipe.layout!r}")


def render_field(ts_csv: str, output: str, dpi: int = 150):
    """Dual-curve time series of the field and its potential."""
    recipe = FigureRecipe(inputs=(ts_csv,), layout="timeseries", output=output, dpi=dpi)
    return render(recipe)


def render_distribution(
    grid_csv: str,
    output: str,
    vortices_csv: Optional[str] = None,
    magnitude_exponent: float = 0.5,
    vmin: Optional[float] = None,
    vmax: Optional[float] = None,
    dpi: int = 150,
):
    """Two-panel momentum map: |c2|^exponent and the amplitude phase."""
    inputs = (grid_csv,) if vortices_csv is None else (grid_csv, vortices_csv)
    recipe = FigureRecipe(
        inputs=inputs,
        layout="magnitude-phase",
        output=output,
        magnitude_exponent=magnitude_exponent,
        vmin=vmin,
        vmax=vmax,
        dpi=dpi,
    )
    return render(recipe)


def _render_field(recipe: FigureRecipe):
    data = _read_csv(recipe.inputs[0], FIELD_HEADER)
    t, e_field, potential = data[:, 0], data[:, 1], data[:, 2]
    fig, ax = plt.subplots(figsize=(7.0, 3.2))
    ax.plot(t, e_field, color="tab:blue", lw=1.4, label="field")
    ax.set_xlabel("t  [hbar / m c^2]")
    ax.set_ylabel("E / E_S", color="tab:blue")
    ax.tick_params(axis="y", labelcolor="tab:blue")
    ax2 = ax.twinx()
    ax2.plot(t, potential, color="tab:red", lw=1.4, ls="--", label="potential")
    ax2.set_ylabel("e A / m c", color="tab:red")
    ax2.tick_params(axis="y", labelcolor="tab:red")
    ax.axhline(0.0, color="0.8", lw=0.6, zorder=0)
    fig.tight_layout()
    _annotate(fig, recipe)
    fig.savefig(recipe.output, dpi=recipe.dpi)
    return fig


def _grid_arrays(data: np.ndarray):
    par_col = data[:, 0]
    n_perp = 1
    while n_perp < len(par_col) and par_col[n_perp] == par_col[0]:
        n_perp += 1
    if len(par_col) % n_perp != 0:
        raise SchemaError("grid CSV is not a complete row-major lattice")
    n_par = len(par_col) // n_perp
    par = par_col.reshape(n_par, n_perp)[:, 0]
    perp = data[:n_perp, 1]
    return par, perp, n_par, n_perp


def _render_distribution(recipe: FigureRecipe):
    data = _read_csv(recipe.inputs[0], GRID_HEADER)
    par, perp, n_par, n_perp = _grid_arrays(data)
    c2_mag = np.hypot(data[:, 2], data[:, 3]).reshape(n_par, n_perp)
    phase = data[:, 5].reshape(n_par, n_perp)

    magnitude = c2_mag**recipe.magnitude_exponent
    phase_masked = np.ma.masked_invalid(phase)
    cyclic = plt.get_cmap("twilight").copy()
    cyclic.set_bad("0.35")

    fig, (ax_mag, ax_phase) = plt.subplots(1, 2, figsize=(9.6, 4.0), sharey=True)
    pm = ax_mag.pcolormesh(
        par,
        perp,
        magnitude.T,
        shading="nearest",
        cmap="viridis",
        vmin=recipe.vmin,
        vmax=recipe.vmax,
    )
    fig.colorbar(pm, ax=ax_mag, label=f"|c2|^{recipe.magnitude_exponent:g}")
    ax_mag.set_xlabel("p_par  [m c]")
    ax_mag.set_ylabel("p_perp  [m c]")
    ax_mag.set_title("amplitude magnitude")

    pp = ax_phase.pcolormesh(
        par,
        perp,
        phase_masked.T,
        shading="nearest",
        cmap=cyclic,
        vmin=-math.pi,
        vmax=math.pi,
    )
    fig.colorbar(pp, ax=ax_phase, label="arg c2")
    ax_phase.set_xlabel("p_par  [m c]")
    ax_phase.set_title("amplitude phase")

    if len(recipe.inputs) > 1:
        vortices = _read_csv(recipe.inputs[1], VORTEX_HEADER)
        for ax in (ax_mag, ax_phase):
            _mark_vortices(ax, vortices)

    fig.tight_layout()
    _annotate(fig, recipe)
    fig.savefig(recipe.output, dpi=recipe.dpi)
    return fig


def _mark_vortices(ax, vortices: np.ndarray):
    pos = vortices[vortices[:, 2] > 0]
    neg = vortices[vortices[:, 2] < 0]
    if len(pos):
        ax.scatter(pos[:, 0], pos[:, 1], s=70, marker="o", facecolors="none",
                   edgecolors="white", linewidths=1.4)
        for x, y, q in pos:
            ax.annotate(f"+{int(q)}", (x, y), textcoords="offset points", xytext=(5, 5),
                        color="white", fontsize=8)
    if len(neg):
        ax.scatter(neg[:, 0], neg[:, 1], s=70, marker="s", facecolors="none",
                   edgecolors="white", linewidths=1.4)
        for x, y, q in neg:
            ax.annotate(f"{int(q)}", (x, y), textcoords="offset points", xytext=(5, 5),
                        color="white", fontsize=8)
