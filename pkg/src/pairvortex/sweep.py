"""Momentum-grid sweeps: batched evaluation, parallel workers, persistence.

Work is partitioned into fixed-size blocks of grid rows (p_par outer axis).
Each block is propagated as one stacked ODE state through the shared
adaptive integrator; the step-acceptance norm is the maximum over the
block, so every point meets the requested tolerance.  Block boundaries
depend only on the grid shape, never on the worker count, and blocks are
reassembled by index, so the output is bit-identical for any number of
workers.

Persistence: a CSV file is the interface of record (one row per grid
point, 17 significant digits), accompanied by a JSON metadata header and
a compressed binary sidecar with identical content for fast reload.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from .dynamics import two_level_ode_grid
from .integrator import IntegratorConfig, IntegrationError, integrate
from .observables import PHASE_UNDEFINED_EPS
from .pulse import PulseConfig

__all__ = [
    "GridSpec",
    "DistributionGrid",
    "SweepError",
    "run_sweep",
    "frequency_scan",
    "save_grid",
    "load_grid",
]

# target number of grid points per work block
_BLOCK_POINTS = 4096

_CSV_HEADER = "p_par,p_perp,c2_re,c2_im,f,phase"


class SweepError(RuntimeError):
    """Raised when integration fails somewhere on the grid; names the momentum."""


@dataclass(frozen=True)
class GridSpec:
    """Rectangular momentum window and point counts (p_par outer axis)."""

    p_par_min: float
    p_par_max: float
    p_perp_min: float
    p_perp_max: float
    n_par: int
    n_perp: int

    def __post_init__(self):
        if self.n_par < 2 or self.n_perp < 2:
            raise ValueError("need at least 2 points per axis")
        if not (self.p_par_max > self.p_par_min and self.p_perp_max > self.p_perp_min):
            raise ValueError("grid extents must satisfy max > min on both axes")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis values; symmetric windows are made exactly sign-symmetric."""
        return (
            _axis(self.p_par_min, self.p_par_max, self.n_par),
            _axis(self.p_perp_min, self.p_perp_max, self.n_perp),
        )

    @property
    def d_par(self) -> float:
        return (self.p_par_max - self.p_par_min) / (self.n_par - 1)

    @property
    def d_perp(self) -> float:
        return (self.p_perp_max - self.p_perp_min) / (self.n_perp - 1)

    def as_dict(self) -> dict:
        return {
            "p_par_min": self.p_par_min,
            "p_par_max": self.p_par_max,
            "p_perp_min": self.p_perp_min,
            "p_perp_max": self.p_perp_max,
            "n_par": self.n_par,
            "n_perp": self.n_perp,
        }


def _axis(lo: float, hi: float, n: int) -> np.ndarray:
    x = np.linspace(lo, hi, n)
    if lo == -hi:
        # exact antisymmetry so that mirror points produce bit-identical physics
        x = 0.5 * (x - x[::-1])
    return x


@dataclass
class DistributionGrid:
    """Final amplitudes over a momentum grid plus full provenance metadata.

    Arrays are (n_par, n_perp), C order; f = 2|c2|^2 and phase is NaN where
    the amplitude is below the undefined-phase threshold.
    """

    spec: GridSpec
    c2: np.ndarray
    f: np.ndarray
    phase: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        shape = (self.spec.n_par, self.spec.n_perp)
        if self.c2.shape != shape or self.f.shape != shape or self.phase.shape != shape:
            raise ValueError(f"array shapes must be {shape}")
        if not np.allclose(self.f, 2.0 * np.abs(self.c2) ** 2, rtol=0.0, atol=1e-12):
            raise ValueError("f column inconsistent with amplitudes")

    @property
    def p_par(self) -> np.ndarray:
        return self.spec.axes()[0]

    @property
    def p_perp(self) -> np.ndarray:
        return self.spec.axes()[1]

    def phase_defined(self) -> np.ndarray:
        return ~np.isnan(self.phase)


def _grid_from_c2(spec: GridSpec, c2: np.ndarray, meta: dict) -> DistributionGrid:
    f = 2.0 * np.abs(c2) ** 2
    phase = np.angle(c2)
    phase[np.abs(c2) < PHASE_UNDEFINED_EPS] = np.nan
    return DistributionGrid(spec=spec, c2=c2, f=f, phase=phase, meta=meta)


def _block_rows(spec: GridSpec) -> int:
    return max(1, _BLOCK_POINTS // spec.n_perp)


def _solve_block(args) -> np.ndarray:
    cfg, icfg, ppar_rows, pperp = args
    n_rows = ppar_rows.size
    n_perp = pperp.size
    ppar_flat = np.repeat(ppar_rows, n_perp)
    pperp_flat = np.tile(pperp, n_rows)
    rhs = two_level_ode_grid(ppar_flat, pperp_flat, cfg)
    y0 = np.zeros((ppar_flat.size, 2), dtype=complex)
    y0[:, 0] = 1.0
    try:
        res = integrate(rhs, y0, 0.0, cfg.duration, icfg)
    except IntegrationError:
        _locate_block_failure(cfg, icfg, ppar_flat, pperp_flat)
        raise
    return res.y[:, 1].reshape(n_rows, n_perp)


def _locate_block_failure(cfg, icfg, ppar_flat, pperp_flat):
    from .dynamics import MomentumPoint, two_level_ode

    for ppar, pperp in zip(ppar_flat, pperp_flat):
        rhs = two_level_ode(MomentumPoint(float(ppar), float(pperp)), cfg)
        try:
            integrate(rhs, np.array([1.0 + 0j, 0.0 + 0j]), 0.0, cfg.duration, icfg)
        except IntegrationError as exc:
            raise SweepError(
                f"integration failed at p_par={ppar:.6g}, p_perp={pperp:.6g}: {exc}"
            ) from exc


def run_sweep(
    cfg: PulseConfig,
    spec: GridSpec,
    icfg: Optional[IntegratorConfig] = None,
    workers: int = 1,
) -> DistributionGrid:
    """Evaluate the final pair amplitude on every grid point.

    The result is deterministic and identical for any worker count; an
    integration failure anywhere aborts the sweep and reports the momentum
    of the failing point.
    """
    if icfg is None:
        icfg = IntegratorConfig()
    par, perp = spec.axes()
    rows_per_block = _block_rows(spec)
    tasks = [
        (cfg, icfg, par[i : i + rows_per_block], perp)
        for i in range(0, spec.n_par, rows_per_block)
    ]
    if workers > 1 and len(tasks) > 1:
        ctx = multiprocessing.get_context()
        with ctx.Pool(processes=workers) as pool:
            blocks = pool.map(_solve_block, tasks, chunksize=1)
    else:
        blocks = [_solve_block(task) for task in tasks]
    c2 = np.vstack(blocks)
    meta = {
        "e0_ratio": cfg.e0_ratio,
        "omega": cfg.omega,
        "n_cycles": cfg.n_cycles,
        "rtol": icfg.rel_tol,
        "atol": icfg.abs_tol,
        "grid": spec.as_dict(),
        "version": __version__,
        "created": datetime.now(timezone.utc).isoformat(),
    }
    return _grid_from_c2(spec, c2, meta)


def frequency_scan(
    cfg_base: PulseConfig,
    omegas: Sequence[float],
    spec: GridSpec,
    icfg: Optional[IntegratorConfig] = None,
    workers: int = 1,
) -> List[DistributionGrid]:
    """One grid per carrier frequency, sharing the momentum window."""
    if len(omegas) == 0:
        raise ValueError("omegas must be nonempty")
    if any(w <= 0 for w in omegas):
        raise ValueError("all frequencies must be positive")
    return [run_sweep(replace(cfg_base, omega=float(w)), spec, icfg, workers) for w in omegas]


# ---------------------------------------------------------------------------
# persistence

def _fmt(x: float) -> str:
    return format(x, ".17g")


def save_grid(grid: DistributionGrid, basename: str) -> dict:
    """Write <basename>.csv (record of interest), .json metadata and .npz sidecar."""
    csv_path = basename + ".csv"
    json_path = basename + ".json"
    npz_path = basename + ".npz"
    par, perp = grid.spec.axes()
    lines = [_CSV_HEADER]
    c2 = grid.c2
    f = grid.f
    phase = grid.phase
    for i in range(grid.spec.n_par):
        sp = _fmt(par[i])
        for j in range(grid.spec.n_perp):
            z = c2[i, j]
            lines.append(
                f"{sp},{_fmt(perp[j])},{_fmt(z.real)},{_fmt(z.imag)},{_fmt(f[i, j])},{_fmt(phase[i, j])}"
            )
    with open(csv_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(json_path, "w") as fh:
        json.dump(grid.meta, fh, indent=2, sort_keys=True)
        fh.write("\n")
    np.savez_compressed(
        npz_path,
        c2=grid.c2,
        f=grid.f,
        phase=grid.phase,
        spec=np.array([json.dumps(grid.spec.as_dict())]),
        meta=np.array([json.dumps(grid.meta)]),
    )
    return {"csv": csv_path, "json": json_path, "npz": npz_path}


def load_grid(csv_path: str) -> DistributionGrid:
    """Rebuild a grid from its CSV; picks up the JSON metadata when present."""
    data = np.loadtxt(csv_path, delimiter=",", skiprows=1)
    if data.ndim != 2 or data.shape[1] != 6:
        raise ValueError(f"{csv_path}: expected 6 columns ({_CSV_HEADER})")
    par_col = data[:, 0]
    n_perp = 1
    while n_perp < len(par_col) and par_col[n_perp] == par_col[0]:
        n_perp += 1
    if len(par_col) % n_perp != 0:
        raise ValueError(f"{csv_path}: ragged grid layout")
    n_par = len(par_col) // n_perp
    spec = GridSpec(
        p_par_min=float(par_col[0]),
        p_par_max=float(par_col[-1]),
        p_perp_min=float(data[0, 1]),
        p_perp_max=float(data[n_perp - 1, 1]),
        n_par=n_par,
        n_perp=n_perp,
    )
    c2 = (data[:, 2] + 1j * data[:, 3]).reshape(n_par, n_perp)
    f = data[:, 4].reshape(n_par, n_perp)
    phase = data[:, 5].reshape(n_par, n_perp)
    meta = {}
    json_path = csv_path[:-4] + ".json" if csv_path.endswith(".csv") else csv_path + ".json"
    if os.path.exists(json_path):
        with open(json_path) as fh:
            meta = json.load(fh)
    return DistributionGrid(spec=spec, c2=c2, f=f, phase=phase, meta=meta)


def load_grid_npz(npz_path: str) -> DistributionGrid:
    """Fast reload from the binary sidecar."""
    with np.load(npz_path, allow_pickle=False) as data:
        spec = GridSpec(**json.loads(str(data["spec"][0])))
        meta = json.loads(str(data["meta"][0]))
        return DistributionGrid(
            spec=spec, c2=data["c2"], f=data["f"], phase=data["phase"], meta=meta
        )


def default_workers() -> int:
    """Worker count from PAIRVORTEX_WORKERS, else 1."""
    env = os.environ.get("PAIRVORTEX_WORKERS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1
