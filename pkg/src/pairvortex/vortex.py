"""Topological analysis of the complex amplitude over a momentum grid.

A vortex is an isolated zero of the amplitude around which its phase winds
by a multiple of 2*pi.  Zeros are detected through their topology rather
than their depth: the wrapped phase differences around every elementary
plaquette sum to an exact multiple of 2*pi, and a nonzero multiple flags
an enclosed singularity with that integer charge.  Loop orientation is
counterclockwise in the (p_par, p_perp) plane.

Because the physics is axially symmetric, vortices appear as mirror pairs
(p_par, +-p_perp) of opposite charge; one such pair is a single vortex
ring in the full 3D momentum space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .integrator import IntegratorConfig
from .pulse import PulseConfig
from .sweep import DistributionGrid, GridSpec, run_sweep

__all__ = [
    "VortexPoint",
    "RingCount",
    "ThresholdScan",
    "SharingReport",
    "phase_gradient",
    "plaquette_windings",
    "winding_number",
    "locate_vortices",
    "ring_count",
    "threshold_scan",
    "sharing_report",
]


@dataclass(frozen=True)
class VortexPoint:
    """A detected phase singularity: position, integer charge, footprint."""

    p_par: float
    p_perp: float
    charge: int
    plaquettes: Tuple[Tuple[int, int], ...]
    refined: bool = False


@dataclass(frozen=True)
class RingCount:
    """Mirror-paired vortex count; unpaired points indicate an anomaly."""

    count: int
    vortices: Tuple[VortexPoint, ...]
    unpaired: Tuple[VortexPoint, ...]

    @property
    def anomaly(self) -> bool:
        return len(self.unpaired) > 0


@dataclass(frozen=True)
class ThresholdScan:
    """Ring counts over ascending frequencies plus the increment brackets."""

    omegas: Tuple[float, ...]
    counts: Tuple[int, ...]
    brackets: Tuple[Tuple[float, float], ...]


@dataclass
class SharingReport:
    """Where the created pairs carry their momentum.

    classification: 'on-axis' when the distribution peaks on the p_perp = 0
    axis away from the origin, 'torus' when it peaks at p_par ~ 0 with
    finite transverse momentum, 'origin' when both coordinates of the peak
    are within one grid cell of zero, 'off-axis' otherwise, and
    'degenerate' for an all-zero grid.
    """

    p_par_max: float
    p_perp_max: float
    classification: str
    marginal_par: np.ndarray
    marginal_perp: np.ndarray
    yield_total: float
    degenerate: bool = False

    def as_dict(self) -> dict:
        return {
            "argmax": {"p_par": self.p_par_max, "p_perp": self.p_perp_max},
            "classification": self.classification,
            "marginal_p_par": list(map(float, self.marginal_par)),
            "marginal_p_perp": list(map(float, self.marginal_perp)),
            "yield": self.yield_total,
            "degenerate": self.degenerate,
        }


def _wrap(delta):
    """Wrap angle differences to (-pi, pi]."""
    wrapped = np.mod(delta, 2.0 * math.pi)
    if np.isscalar(wrapped):
        return wrapped - 2.0 * math.pi if wrapped > math.pi else wrapped
    out = np.asarray(wrapped)
    out = np.where(out > math.pi, out - 2.0 * math.pi, out)
    return out


def phase_gradient(grid: DistributionGrid):
    """Central-difference phase gradient per interior cell.

    Differences of neighbouring phases are wrapped before dividing, which
    is the discrete unwrapping along each grid line.  Returns
    (b_par, b_perp, valid): components are NaN and valid is False on the
    boundary and wherever the stencil touches an undefined phase.
    """
    theta = grid.phase
    defined = grid.phase_defined()
    n_par, n_perp = theta.shape
    b_par = np.full((n_par, n_perp), np.nan)
    b_perp = np.full((n_par, n_perp), np.nan)
    valid = np.zeros((n_par, n_perp), dtype=bool)
    two_dpar = 2.0 * grid.spec.d_par
    two_dperp = 2.0 * grid.spec.d_perp
    inner = (
        defined[1:-1, 1:-1]
        & defined[2:, 1:-1]
        & defined[:-2, 1:-1]
        & defined[1:-1, 2:]
        & defined[1:-1, :-2]
    )
    b_par[1:-1, 1:-1] = np.where(
        inner, _wrap(theta[2:, 1:-1] - theta[:-2, 1:-1]) / two_dpar, np.nan
    )
    b_perp[1:-1, 1:-1] = np.where(
        inner, _wrap(theta[1:-1, 2:] - theta[1:-1, :-2]) / two_dperp, np.nan
    )
    valid[1:-1, 1:-1] = inner
    return b_par, b_perp, valid


def winding_number(grid: DistributionGrid, loop: Sequence[Tuple[int, int]]) -> int:
    """Phase winding along a closed lattice path, in units of 2*pi.

    The loop is a sequence of (i, j) vertex indices, implicitly closed.
    Raises ValueError if any vertex carries an undefined phase.
    """
    theta = grid.phase
    defined = grid.phase_defined()
    pts = list(loop)
    if len(pts) < 3:
        raise ValueError("loop must contain at least 3 vertices")
    if tuple(pts[0]) != tuple(pts[-1]):
        pts = pts + [pts[0]]
    total = 0.0
    for (i0, j0), (i1, j1) in zip(pts[:-1], pts[1:]):
        if not (defined[i0, j0] and defined[i1, j1]):
            raise ValueError(f"loop passes through undefined phase at ({i1}, {j1})")
        total += _wrap(theta[i1, j1] - theta[i0, j0])
    w = total / (2.0 * math.pi)
    w_int = int(round(w))
    if abs(w - w_int) > 1e-6:
        raise ValueError(f"winding {w} not integral; numerical phase inconsistency")
    return w_int


def plaquette_windings(grid: DistributionGrid):
    """Winding of every elementary plaquette: (n_par-1, n_perp-1) ints.

    Plaquettes touching an undefined-phase corner are reported invalid and
    carry winding zero.  The sum over any rectangle of valid plaquettes
    equals the boundary-loop winding.
    """
    theta = grid.phase
    defined = grid.phase_defined()
    d_par = _wrap(theta[1:, :] - theta[:-1, :])
    d_perp = _wrap(theta[:, 1:] - theta[:, :-1])
    circ = d_par[:, :-1] + d_perp[1:, :] - d_par[:, 1:] - d_perp[:-1, :]
    valid = defined[:-1, :-1] & defined[1:, :-1] & defined[1:, 1:] & defined[:-1, 1:]
    w = np.where(valid, np.rint(circ / (2.0 * math.pi)), 0.0).astype(int)
    return w, valid


def locate_vortices(grid: DistributionGrid, refine: bool = False) -> List[VortexPoint]:
    """All phase singularities on the grid.

    Adjacent nonzero plaquettes of equal charge are merged into one point
    at their mean plaquette center.  With refine=True the position inside a
    single plaquette is sharpened to the crossing of the zero lines of the
    real and imaginary amplitude parts (flagged on the result).
    """
    w, valid = plaquette_windings(grid)
    par, perp = grid.spec.axes()
    cpar = 0.5 * (par[:-1] + par[1:])
    cperp = 0.5 * (perp[:-1] + perp[1:])
    hot = np.argwhere(w != 0)
    seen = set()
    points: List[VortexPoint] = []
    hotset = {tuple(ij) for ij in hot}
    for ij in map(tuple, hot):
        if ij in seen:
            continue
        charge = w[ij]
        group = [ij]
        seen.add(ij)
        queue = [ij]
        while queue:
            ci, cj = queue.pop()
            for ni in range(ci - 1, ci + 2):
                for nj in range(cj - 1, cj + 2):
                    nbr = (ni, nj)
                    if nbr in hotset and nbr not in seen and w[nbr] == charge:
                        seen.add(nbr)
                        group.append(nbr)
                        queue.append(nbr)
        p_par = float(np.mean([cpar[i] for i, _ in group]))
        p_perp = float(np.mean([cperp[j] for _, j in group]))
        refined = False
        if refine and len(group) == 1:
            pos = _refine_in_plaquette(grid, group[0])
            if pos is not None:
                p_par, p_perp = pos
                refined = True
        points.append(
            VortexPoint(
                p_par=p_par,
                p_perp=p_perp,
                charge=int(charge),
                plaquettes=tuple(sorted(group)),
                refined=refined,
            )
        )
    points.sort(key=lambda v: (v.p_par, v.p_perp))
    return points


def _refine_in_plaquette(grid: DistributionGrid, ij: Tuple[int, int]):
    """Crossing of the linearized Re=0 and Im=0 lines inside one plaquette."""
    i, j = ij
    par, perp = grid.spec.axes()
    x0, x1 = par[i], par[i + 1]
    y0, y1 = perp[j], perp[j + 1]
    corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    z = [grid.c2[i, j], grid.c2[i + 1, j], grid.c2[i + 1, j + 1], grid.c2[i, j + 1]]

    def edge_zeros(vals):
        pts = []
        for k in range(4):
            a, b = vals[k], vals[(k + 1) % 4]
            if a == 0.0:
                pts.append(corners[k])
            elif a * b < 0.0:
                s = a / (a - b)
                xa, ya = corners[k]
                xb, yb = corners[(k + 1) % 4]
                pts.append((xa + s * (xb - xa), ya + s * (yb - ya)))
        return pts

    re_pts = edge_zeros([v.real for v in z])
    im_pts = edge_zeros([v.imag for v in z])
    if len(re_pts) != 2 or len(im_pts) != 2:
        return None
    (x1r, y1r), (x2r, y2r) = re_pts
    (x1i, y1i), (x2i, y2i) = im_pts
    den = (x1r - x2r) * (y1i - y2i) - (y1r - y2r) * (x1i - x2i)
    if den == 0.0:
        return None
    c1 = x1r * y2r - y1r * x2r
    c2 = x1i * y2i - y1i * x2i
    px = (c1 * (x1i - x2i) - (x1r - x2r) * c2) / den
    py = (c1 * (y1i - y2i) - (y1r - y2r) * c2) / den
    if not (min(x0, x1) - grid.spec.d_par <= px <= max(x0, x1) + grid.spec.d_par):
        return None
    if not (min(y0, y1) - grid.spec.d_perp <= py <= max(y0, y1) + grid.spec.d_perp):
        return None
    return float(px), float(py)


def ring_count(grid: DistributionGrid, refine: bool = False) -> RingCount:
    """Pair mirror-symmetric vortex points into rings.

    Each ring contributes one point at (p_par, +p) and one of opposite
    charge at (p_par, -p); anything left unpaired is reported.
    """
    points = locate_vortices(grid, refine=refine)
    tol_par = 1.5 * grid.spec.d_par
    tol_perp = 1.5 * grid.spec.d_perp
    upper = [v for v in points if v.p_perp > 0]
    lower = [v for v in points if v.p_perp <= 0]
    unmatched_lower = list(lower)
    pairs = 0
    unpaired: List[VortexPoint] = []
    for v in upper:
        match = None
        for u in unmatched_lower:
            if (
                abs(u.p_par - v.p_par) <= tol_par
                and abs(u.p_perp + v.p_perp) <= tol_perp
                and u.charge == -v.charge
            ):
                match = u
                break
        if match is None:
            unpaired.append(v)
        else:
            unmatched_lower.remove(match)
            pairs += 1
    unpaired.extend(unmatched_lower)
    return RingCount(count=pairs, vortices=tuple(points), unpaired=tuple(unpaired))


def threshold_scan(
    cfg_base: PulseConfig,
    omega_range: Sequence[float],
    spec: GridSpec,
    icfg: Optional[IntegratorConfig] = None,
    workers: int = 1,
) -> ThresholdScan:
    """Ring count versus frequency; reports the intervals where it steps up."""
    omegas = [float(w) for w in omega_range]
    if len(omegas) == 0:
        raise ValueError("omega_range must be nonempty")
    if sorted(omegas) != omegas:
        raise ValueError("omega_range must be ascending")
    from dataclasses import replace

    counts = []
    for w in omegas:
        grid = run_sweep(replace(cfg_base, omega=w), spec, icfg, workers)
        counts.append(ring_count(grid).count)
    brackets = tuple(
        (omegas[k], omegas[k + 1])
        for k in range(len(omegas) - 1)
        if counts[k + 1] > counts[k]
    )
    return ThresholdScan(omegas=tuple(omegas), counts=tuple(counts), brackets=brackets)


def sharing_report(grid: DistributionGrid) -> SharingReport:
    """Locate the distribution maximum and classify the momentum sharing.

    Marginals are plain sums of f along the other axis times the cell
    width; the integrated yield applies the axially symmetric weight
    2*pi*|p_perp| on the half-plane p_perp >= 0.
    """
    par, perp = grid.spec.axes()
    f = grid.f
    if not np.any(f > 0.0):
        return SharingReport(
            p_par_max=math.nan,
            p_perp_max=math.nan,
            classification="degenerate",
            marginal_par=np.zeros(grid.spec.n_par),
            marginal_perp=np.zeros(grid.spec.n_perp),
            yield_total=0.0,
            degenerate=True,
        )
    i, j = np.unravel_index(np.argmax(f), f.shape)
    p_par_max = float(par[i])
    p_perp_max = float(perp[j])
    par_near_zero = abs(p_par_max) <= grid.spec.d_par * (1.0 + 1e-12)
    perp_near_zero = abs(p_perp_max) <= grid.spec.d_perp * (1.0 + 1e-12)
    if perp_near_zero and not par_near_zero:
        classification = "on-axis"
    elif par_near_zero and not perp_near_zero:
        classification = "torus"
    elif par_near_zero and perp_near_zero:
        classification = "origin"
    else:
        classification = "off-axis"
    marginal_par = f.sum(axis=1) * grid.spec.d_perp
    marginal_perp = f.sum(axis=0) * grid.spec.d_par
    half = perp >= 0.0
    yield_total = float(
        2.0
        * math.pi
        * np.sum(f[:, half] * np.abs(perp[half])[None, :])
        * grid.spec.d_par
        * grid.spec.d_perp
    )
    return SharingReport(
        p_par_max=p_par_max,
        p_perp_max=p_perp_max,
        classification=classification,
        marginal_par=marginal_par,
        marginal_perp=marginal_perp,
        yield_total=yield_total,
    )
