"""Driving electric-field pulse and its closed-form vector potential.

All quantities are dimensionless in natural units (hbar = c = m = 1):
momenta in units of m*c, times in hbar/(m*c^2), energies in m*c^2, and
field strengths in units of the critical field E_S = m^2 c^3 / |e|.

The pulse is an N-cycle carrier under a sin^4 envelope,

    E(t) = E0 * sin(phi/(2N))^4 * cos(phi),    phi = omega*t in [0, 2*pi*N],

identically zero outside the window.  For N >= 3 the pulse carries no net
impulse, so the potential returns to zero after the pulse and asymptotic
in/out states can be imposed at the window edges.

Sign convention (fixed here, used package-wide): the electron charge is
negative, e = -|e|.  The quantity exchanged between modules is the coupled
potential a(t) = e*A(t)/(m*c) with A(t) = -int_{-inf}^t E(tau) dtau, which
in the units above reduces to

    a(t) = + int_0^t E(tau)/E_S dtau,

and the kinetic momentum along the polarization axis is p_par - a(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["PulseConfig", "UnitSystem", "electric_field", "vector_potential", "net_impulse"]


@dataclass(frozen=True)
class UnitSystem:
    """Marker for the natural-unit convention shared by every interface.

    hbar = c = m = 1; the electron charge is signed, e = -|e|.  Momenta are
    exchanged in units of m*c, times in hbar/(m*c^2), energies in m*c^2 and
    field strengths in units of E_S = m^2 c^3 / |e|.
    """

    hbar: float = 1.0
    c: float = 1.0
    m: float = 1.0
    electron_charge_sign: int = -1


NATURAL_UNITS = UnitSystem()


@dataclass(frozen=True)
class PulseConfig:
    """Pulse parameters: peak field (E_S units), carrier frequency (m*c^2/hbar), cycle count."""

    e0_ratio: float
    omega: float
    n_cycles: int = 3

    def __post_init__(self):
        if not (self.e0_ratio >= 0.0 and math.isfinite(self.e0_ratio)):
            raise ValueError(f"e0_ratio must be finite and >= 0, got {self.e0_ratio}")
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be finite and > 0, got {self.omega}")
        if int(self.n_cycles) != self.n_cycles or self.n_cycles < 3:
            raise ValueError(f"n_cycles must be an integer >= 3, got {self.n_cycles}")

    @property
    def duration(self) -> float:
        """Pulse support length 2*pi*N/omega; the field vanishes outside [0, duration]."""
        return 2.0 * math.pi * self.n_cycles / self.omega


def electric_field(cfg: PulseConfig, t):
    """Field strength E(t) in units of E_S; accepts scalar or array times."""
    if np.isscalar(t):
        return _field_scalar(cfg.e0_ratio, cfg.omega, cfg.n_cycles, float(t))
    t = np.asarray(t, dtype=float)
    phi = cfg.omega * t
    inside = (phi >= 0.0) & (phi <= 2.0 * math.pi * cfg.n_cycles)
    s = np.sin(phi / (2.0 * cfg.n_cycles))
    return np.where(inside, cfg.e0_ratio * s**4 * np.cos(phi), 0.0)


def vector_potential(cfg: PulseConfig, t):
    """Coupled potential a(t) = e*A(t)/(m*c), evaluated in closed form.

    The product sin^4(phi/2N)*cos(phi) expands into five cosines, so the
    antiderivative is an exact sum of sines; no quadrature enters the ODE
    right-hand sides.  a(t<=0) = 0 and a(t >= duration) stays below 1e-12
    in magnitude for any N >= 3.
    """
    if np.isscalar(t):
        return _potential_scalar(cfg.e0_ratio, cfg.omega, cfg.n_cycles, float(t))
    t = np.asarray(t, dtype=float)
    phi = np.clip(cfg.omega * t, 0.0, 2.0 * math.pi * cfg.n_cycles)
    invn = 1.0 / cfg.n_cycles
    bracket = (
        3.0 * np.sin(phi)
        - 2.0 * np.sin((1.0 + invn) * phi) / (1.0 + invn)
        - 2.0 * np.sin((1.0 - invn) * phi) / (1.0 - invn)
        + 0.5 * np.sin((1.0 + 2.0 * invn) * phi) / (1.0 + 2.0 * invn)
        + 0.5 * np.sin((1.0 - 2.0 * invn) * phi) / (1.0 - 2.0 * invn)
    )
    return cfg.e0_ratio / (8.0 * cfg.omega) * bracket


def net_impulse(cfg: PulseConfig) -> float:
    """Full-pulse impulse integral of e*E(t)/(m*c); zero to machine precision for N >= 3."""
    return -_potential_scalar(cfg.e0_ratio, cfg.omega, cfg.n_cycles, cfg.duration)


def _field_scalar(e0: float, omega: float, n: int, t: float) -> float:
    phi = omega * t
    if phi < 0.0 or phi > 2.0 * math.pi * n:
        return 0.0
    s = math.sin(phi / (2.0 * n))
    return e0 * s * s * s * s * math.cos(phi)


def _potential_scalar(e0: float, omega: float, n: int, t: float) -> float:
    phi = omega * t
    top = 2.0 * math.pi * n
    if phi <= 0.0:
        return 0.0
    if phi > top:
        phi = top
    invn = 1.0 / n
    bracket = (
        3.0 * math.sin(phi)
        - 2.0 * math.sin((1.0 + invn) * phi) / (1.0 + invn)
        - 2.0 * math.sin((1.0 - invn) * phi) / (1.0 - invn)
        + 0.5 * math.sin((1.0 + 2.0 * invn) * phi) / (1.0 + 2.0 * invn)
        + 0.5 * math.sin((1.0 - 2.0 * invn) * phi) / (1.0 - 2.0 * invn)
    )
    return e0 / (8.0 * omega) * bracket
