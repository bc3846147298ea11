"""From dynamical states to physical observables.

The pair density of a mode is read off strictly at the end of the pulse,
where the potential has returned to zero and the kinetic momentum equals
the asymptotic one.  Inside the pulse a transient occupation can be
evaluated on request, but it is basis- and interpretation-dependent and
is never used by the analysis layers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dynamics import (
    DhwVector,
    MomentumPoint,
    bilinears_grid,
    dhw_ode,
    dhw_vacuum,
    dirac_ode,
    negative_energy_init,
    two_level_ode,
    two_level_ode_rotating,
)
from .integrator import IntegratorConfig, integrate
from .pulse import PulseConfig

__all__ = [
    "PHASE_UNDEFINED_EPS",
    "PairAmplitude",
    "BasisTriple",
    "pair_density",
    "pair_density_dhw",
    "pair_density_bispinor",
    "basis_triple",
    "reconstruct_W",
    "energy_density",
    "distribution_from_dhw",
]

# below this amplitude magnitude the phase is flagged undefined, not interpolated
PHASE_UNDEFINED_EPS = 1e-14


@dataclass(frozen=True)
class PairAmplitude:
    """Final lower-level amplitude of one mode and the derived pair density.

    f = 2|c2|^2 lies in [0, 2]; phase is arg(c2) in (-pi, pi] and is NaN
    (with phase_defined False) when |c2| < PHASE_UNDEFINED_EPS.
    """

    c2: complex
    f: float
    phase: float
    phase_defined: bool


@dataclass(frozen=True)
class BasisTriple:
    """Orthonormal 10-vectors e1, e2, e3 attached to a kinetic momentum.

    e3 is minus one half of the vacuum vector at that momentum.
    """

    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray


def _pair_amplitude_from_c2(c2: complex) -> PairAmplitude:
    mag = abs(c2)
    f = 2.0 * mag * mag
    if mag < PHASE_UNDEFINED_EPS:
        return PairAmplitude(c2=c2, f=f, phase=math.nan, phase_defined=False)
    return PairAmplitude(c2=c2, f=f, phase=cmath.phase(c2), phase_defined=True)


def pair_density(
    p: MomentumPoint,
    cfg: PulseConfig,
    icfg: Optional[IntegratorConfig] = None,
    rotating_frame: bool = False,
) -> PairAmplitude:
    """Integrate the two-level system over the pulse from the vacuum state.

    rotating_frame=True uses the phase-transformed variables internally and
    maps back, which keeps accuracy at high carrier frequency; the returned
    amplitude is in the same fixed (lab) phase convention either way.
    """
    if rotating_frame:
        rhs = two_level_ode_rotating(p, cfg)
        y0 = np.array([1.0 + 0j, 0.0 + 0j, 0.0 + 0j])
        res = integrate(rhs, y0, 0.0, cfg.duration, icfg)
        c2 = res.y[1] * cmath.exp(1j * res.y[2].real)
    else:
        rhs = two_level_ode(p, cfg)
        y0 = np.array([1.0 + 0j, 0.0 + 0j])
        res = integrate(rhs, y0, 0.0, cfg.duration, icfg)
        c2 = res.y[1]
    return _pair_amplitude_from_c2(complex(c2))


def pair_density_dhw(
    p: MomentumPoint, cfg: PulseConfig, icfg: Optional[IntegratorConfig] = None
) -> float:
    """Pair density through the 10-component route (independent of amplitudes)."""
    res = integrate(dhw_ode(p, cfg), dhw_vacuum(p).as_array(), 0.0, cfg.duration, icfg)
    return distribution_from_dhw(DhwVector.from_array(res.y), p)


def pair_density_bispinor(
    p: MomentumPoint, cfg: PulseConfig, icfg: Optional[IntegratorConfig] = None
) -> float:
    """Pair density through direct spinor evolution (oracle route)."""
    y0 = negative_energy_init(p).as_array()
    res = integrate(dirac_ode(p, cfg), y0, 0.0, cfg.duration, icfg)
    v = DhwVector.from_array(bilinears_grid(res.y[None, :, :])[0])
    return distribution_from_dhw(v, p)


def basis_triple(pkin) -> BasisTriple:
    """Orthonormal triple at a kinetic momentum, transverse axis along 1."""
    q = np.asarray(pkin, dtype=float)
    q1, q2, q3 = q
    energy = math.sqrt(1.0 + q @ q)
    eps_perp = math.sqrt(1.0 + q1 * q1 + q2 * q2)
    e1 = np.zeros(10)
    e1[0] = -q3
    e1[4] = -q3 * q1
    e1[5] = -q3 * q2
    e1[6] = energy * energy - q3 * q3
    e1 /= energy * eps_perp
    e2 = np.zeros(10)
    e2[1] = q2
    e2[2] = -q1
    e2[9] = 1.0
    e2 /= eps_perp
    e3 = np.zeros(10)
    e3[0] = 1.0
    e3[4:7] = q
    e3 /= energy
    return BasisTriple(e1=e1, e2=e2, e3=e3)


def reconstruct_W(u, pkin) -> DhwVector:
    """Assemble the 10-vector -2*(u1 e1 + u2 e2 + u3 e3) at a kinetic momentum."""
    u = np.asarray(u, dtype=float)
    basis = basis_triple(pkin)
    return DhwVector.from_array(-2.0 * (u[0] * basis.e1 + u[1] * basis.e2 + u[2] * basis.e3))


def energy_density(v, pkin) -> float:
    """Phase-space energy density p.h1 + h3 at the given momentum."""
    if isinstance(v, DhwVector):
        h3, h1 = v.h3, v.h1
    else:
        arr = np.asarray(v, dtype=float)
        h3, h1 = arr[0], arr[4:7]
    q = np.asarray(pkin, dtype=float)
    return float(q @ h1 + h3)


def distribution_from_dhw(v_final, p: MomentumPoint) -> float:
    """Pair density f = eps/(2 E_p) + 1 from a final-time 10-vector.

    Valid at times where the potential has returned to zero, so the free
    energy at the asymptotic momentum is the right normalization.
    """
    q = np.array([p.p_perp, 0.0, p.p_par])
    energy = math.sqrt(1.0 + q @ q)
    return energy_density(v_final, q) / (2.0 * energy) + 1.0
