"""Mode dynamics in three equivalent formulations.

For a linearly polarized homogeneous pulse every momentum mode evolves
independently.  The same physics is expressed three ways:

* two complex amplitudes (c1, c2) obeying a driven two-level system,
* a 10-component real vector V = [h3, h0, h1, h2] evolving linearly
  under an antisymmetric matrix M(p(t)),
* a pair of 4-spinors evolving under the instantaneous Dirac Hamiltonian
  (used as the independent cross-check for the other two).

The frame convention is fixed package-wide: the polarization is axis 3,
the transverse momentum lies along axis 1 (any azimuth is equivalent by
axial symmetry), so the kinetic momentum is (p_perp, 0, p_par - a(t)).

Scalar right-hand sides are pure functions of (state, momentum, cfg, t).
The *_ode factories close over the configuration and return rhs(t, y)
callables for the integrator; the *_ode_grid variants evaluate whole
batches of momentum points at once on stacked state arrays, which is what
makes large momentum-grid sweeps affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pulse import PulseConfig, _field_scalar, _potential_scalar

__all__ = [
    "MomentumPoint",
    "TwoLevelState",
    "DhwVector",
    "BispinorPair",
    "kinetic_momentum",
    "omega_eff",
    "rabi_eff",
    "two_level_rhs",
    "two_level_ode",
    "two_level_ode_grid",
    "two_level_ode_rotating",
    "dhw_matrix",
    "dhw_vacuum",
    "dhw_rhs",
    "dhw_ode",
    "dhw_ode_grid",
    "negative_energy_init",
    "dirac_rhs",
    "dirac_ode",
    "dirac_ode_grid",
    "bilinears",
    "bilinears_grid",
    "bloch_from_amplitudes",
    "bloch_ode",
]


@dataclass(frozen=True)
class MomentumPoint:
    """Asymptotic momentum (m*c units): p_par along the field, p_perp transverse.

    p_perp may be negative for plane-section plotting; the kinematics only
    ever sees p_perp squared.
    """

    p_par: float
    p_perp: float

    def __post_init__(self):
        if not (math.isfinite(self.p_par) and math.isfinite(self.p_perp)):
            raise ValueError(f"momentum must be finite, got ({self.p_par}, {self.p_perp})")


@dataclass
class TwoLevelState:
    """Complex mode amplitudes; |c1|^2 + |c2|^2 stays 1 under evolution."""

    c1: complex
    c2: complex

    def norm_sq(self) -> float:
        return abs(self.c1) ** 2 + abs(self.c2) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2], dtype=complex)


@dataclass
class DhwVector:
    """10 real components [h3, h0, h1, h2]; Euclidean norm is conserved."""

    h3: float
    h0: np.ndarray
    h1: np.ndarray
    h2: np.ndarray

    def as_array(self) -> np.ndarray:
        out = np.empty(10)
        out[0] = self.h3
        out[1:4] = self.h0
        out[4:7] = self.h1
        out[7:10] = self.h2
        return out

    @classmethod
    def from_array(cls, v) -> "DhwVector":
        v = np.asarray(v, dtype=float)
        return cls(h3=float(v[0]), h0=v[1:4].copy(), h1=v[4:7].copy(), h2=v[7:10].copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


@dataclass
class BispinorPair:
    """One 4-spinor per spin label; each keeps unit norm under evolution."""

    phi1: np.ndarray
    phi2: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.stack([np.asarray(self.phi1, complex), np.asarray(self.phi2, complex)])

    @classmethod
    def from_array(cls, y) -> "BispinorPair":
        y = np.asarray(y, dtype=complex).reshape(2, 4)
        return cls(phi1=y[0].copy(), phi2=y[1].copy())


# ---------------------------------------------------------------------------
# kinematics

def kinetic_momentum(p: MomentumPoint, cfg: PulseConfig, t: float) -> np.ndarray:
    """Kinetic 3-momentum (p_perp, 0, p_par - a(t)) in the fixed frame."""
    a = _potential_scalar(cfg.e0_ratio, cfg.omega, cfg.n_cycles, t)
    return np.array([p.p_perp, 0.0, p.p_par - a])


def omega_eff(p: MomentumPoint, cfg: PulseConfig, t: float) -> float:
    """Instantaneous mode energy sqrt(p_perp^2 + (p_par - a)^2 + 1) >= 1."""
    a = _potential_scalar(cfg.e0_ratio, cfg.omega, cfg.n_cycles, t)
    q3 = p.p_par - a
    return math.sqrt(p.p_perp * p.p_perp + q3 * q3 + 1.0)


def rabi_eff(p: MomentumPoint, cfg: PulseConfig, t: float) -> float:
    """Instantaneous pair coupling e*E(t)*eps_perp / (2 omega_p^2), e = -|e|.

    Even in p_perp; vanishes outside the pulse support.
    """
    e_t = _field_scalar(cfg.e0_ratio, cfg.omega, cfg.n_cycles, t)
    if e_t == 0.0:
        return 0.0
    om = omega_eff(p, cfg, t)
    eps_perp = math.sqrt(p.p_perp * p.p_perp + 1.0)
    return -e_t * eps_perp / (2.0 * om * om)


# ---------------------------------------------------------------------------
# two-level formulation

def two_level_rhs(state: TwoLevelState, p: MomentumPoint, cfg: PulseConfig, t: float) -> TwoLevelState:
    """Time derivative of the amplitudes under the Hermitian two-level generator."""
    om = omega_eff(p, cfg, t)
    rabi = rabi_eff(p, cfg, t)
    return TwoLevelState(
        c1=-1j * om * state.c1 + rabi * state.c2,
        c2=-rabi * state.c1 + 1j * om * state.c2,
    )


def two_level_ode(p: MomentumPoint, cfg: PulseConfig):
    """rhs(t, y) on y = [c1, c2] for a single momentum point."""
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    pp2 = p.p_perp * p.p_perp
    eps_perp = math.sqrt(pp2 + 1.0)
    ppar = p.p_par

    def rhs(t, y):
        a = _potential_scalar(e0, omega, ncyc, t)
        e_t = _field_scalar(e0, omega, ncyc, t)
        q3 = ppar - a
        om = math.sqrt(pp2 + q3 * q3 + 1.0)
        rabi = -e_t * eps_perp / (2.0 * om * om)
        c1, c2 = y[0], y[1]
        return np.array([-1j * om * c1 + rabi * c2, -rabi * c1 + 1j * om * c2])

    return rhs


def two_level_ode_grid(p_par, p_perp, cfg: PulseConfig):
    """Batched rhs(t, Y) on Y of shape (n, 2) for flat momentum arrays."""
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    ppar = np.asarray(p_par, dtype=float)
    pp2 = np.asarray(p_perp, dtype=float) ** 2
    eps_perp = np.sqrt(pp2 + 1.0)

    def rhs(t, y):
        a = _potential_scalar(e0, omega, ncyc, t)
        e_t = _field_scalar(e0, omega, ncyc, t)
        q3 = ppar - a
        om = np.sqrt(pp2 + q3 * q3 + 1.0)
        rabi = -e_t * eps_perp / (2.0 * om * om)
        c1 = y[:, 0]
        c2 = y[:, 1]
        out = np.empty_like(y)
        out[:, 0] = -1j * (om * c1) + rabi * c2
        out[:, 1] = -rabi * c1 + 1j * (om * c2)
        return out

    return rhs


def two_level_ode_rotating(p: MomentumPoint, cfg: PulseConfig):
    """Phase-transformed variant removing the fast dynamical phase.

    State is [b1, b2, theta] with c1 = b1*exp(-i*theta), c2 = b2*exp(+i*theta)
    and theta(t) the accumulated instantaneous energy.  Useful at high
    carrier frequency where the bare amplitudes oscillate rapidly.
    """
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    pp2 = p.p_perp * p.p_perp
    eps_perp = math.sqrt(pp2 + 1.0)
    ppar = p.p_par

    def rhs(t, y):
        a = _potential_scalar(e0, omega, ncyc, t)
        e_t = _field_scalar(e0, omega, ncyc, t)
        q3 = ppar - a
        om = math.sqrt(pp2 + q3 * q3 + 1.0)
        rabi = -e_t * eps_perp / (2.0 * om * om)
        b1, b2, theta = y[0], y[1], y[2]
        rot = np.exp(2j * theta.real)
        return np.array([rabi * rot * b2, -rabi * b1 / rot, om + 0j])

    return rhs


# ---------------------------------------------------------------------------
# 10-component phase-space formulation

def _cross_matrix(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return np.array([[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]])


def dhw_matrix(pkin) -> np.ndarray:
    """Antisymmetric 10x10 generator at kinetic momentum pkin (m = c = 1)."""
    q = np.asarray(pkin, dtype=float)
    m = np.zeros((10, 10))
    qx = _cross_matrix(q)
    m[0, 7:10] = 2.0 * q
    m[7:10, 0] = -2.0 * q
    m[1:4, 4:7] = 2.0 * qx
    m[4:7, 1:4] = 2.0 * qx
    m[4:7, 7:10] = -2.0 * np.eye(3)
    m[7:10, 4:7] = 2.0 * np.eye(3)
    return m


def dhw_vacuum(p: MomentumPoint) -> DhwVector:
    """Free-vacuum vector: h3 = -2/E_p, h1 = -2p/E_p, h0 = h2 = 0; norm 2."""
    q = np.array([p.p_perp, 0.0, p.p_par])
    energy = math.sqrt(1.0 + q @ q)
    return DhwVector(h3=-2.0 / energy, h0=np.zeros(3), h1=-2.0 * q / energy, h2=np.zeros(3))


def dhw_rhs(v: DhwVector, p: MomentumPoint, cfg: PulseConfig, t: float) -> DhwVector:
    """dV/dt = M(p(t)) V along the kinetic-momentum characteristic."""
    q = kinetic_momentum(p, cfg, t)
    return DhwVector(
        h3=2.0 * float(q @ v.h2),
        h0=2.0 * np.cross(q, v.h1),
        h1=2.0 * np.cross(q, v.h0) - 2.0 * v.h2,
        h2=-2.0 * q * v.h3 + 2.0 * v.h1,
    )


def dhw_ode(p: MomentumPoint, cfg: PulseConfig):
    """rhs(t, y) on the packed 10-vector for a single momentum point."""
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    q1 = p.p_perp
    ppar = p.p_par

    def rhs(t, y):
        a = _potential_scalar(e0, omega, ncyc, t)
        q3 = ppar - a
        h3 = y[0]
        h0 = y[1:4]
        h1 = y[4:7]
        h2 = y[7:10]
        out = np.empty(10)
        out[0] = 2.0 * (q1 * h2[0] + q3 * h2[2])
        # q x v with q = (q1, 0, q3)
        out[1] = -2.0 * q3 * h1[1]
        out[2] = 2.0 * (q3 * h1[0] - q1 * h1[2])
        out[3] = 2.0 * q1 * h1[1]
        out[4] = -2.0 * q3 * h0[1] - 2.0 * h2[0]
        out[5] = 2.0 * (q3 * h0[0] - q1 * h0[2]) - 2.0 * h2[1]
        out[6] = 2.0 * q1 * h0[1] - 2.0 * h2[2]
        out[7] = -2.0 * q1 * h3 + 2.0 * h1[0]
        out[8] = 2.0 * h1[1]
        out[9] = -2.0 * q3 * h3 + 2.0 * h1[2]
        return out

    return rhs


def dhw_ode_grid(p_par, p_perp, cfg: PulseConfig):
    """Batched rhs(t, Y) on Y of shape (n, 10) for flat momentum arrays."""
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    ppar = np.asarray(p_par, dtype=float)
    q1 = np.asarray(p_perp, dtype=float)

    def rhs(t, y):
        a = _potential_scalar(e0, omega, ncyc, t)
        q3 = ppar - a
        h3 = y[:, 0]
        out = np.empty_like(y)
        out[:, 0] = 2.0 * (q1 * y[:, 7] + q3 * y[:, 9])
        out[:, 1] = -2.0 * q3 * y[:, 5]
        out[:, 2] = 2.0 * (q3 * y[:, 4] - q1 * y[:, 6])
        out[:, 3] = 2.0 * q1 * y[:, 5]
        out[:, 4] = -2.0 * q3 * y[:, 2] - 2.0 * y[:, 7]
        out[:, 5] = 2.0 * (q3 * y[:, 1] - q1 * y[:, 3]) - 2.0 * y[:, 8]
        out[:, 6] = 2.0 * q1 * y[:, 2] - 2.0 * y[:, 9]
        out[:, 7] = -2.0 * q1 * h3 + 2.0 * y[:, 4]
        out[:, 8] = 2.0 * y[:, 5]
        out[:, 9] = -2.0 * q3 * h3 + 2.0 * y[:, 6]
        return out

    return rhs


def dhw_vacuum_grid(p_par, p_perp) -> np.ndarray:
    """Vacuum vectors stacked as (n, 10) for flat momentum arrays."""
    ppar = np.asarray(p_par, dtype=float)
    pperp = np.asarray(p_perp, dtype=float)
    energy = np.sqrt(1.0 + ppar * ppar + pperp * pperp)
    out = np.zeros((ppar.size, 10))
    out[:, 0] = -2.0 / energy
    out[:, 4] = -2.0 * pperp / energy
    out[:, 6] = -2.0 * ppar / energy
    return out


# ---------------------------------------------------------------------------
# bispinor formulation (Dirac representation)

def negative_energy_init(p: MomentumPoint) -> BispinorPair:
    """The two orthonormal negative-energy eigenspinors of the free Hamiltonian.

    Both satisfy (alpha.p + gamma^0) w = -E_p w with w^dag w = 1; their
    summed bilinears reproduce the vacuum phase-space vector exactly.
    """
    q1, q3 = p.p_perp, p.p_par
    energy = math.sqrt(1.0 + q1 * q1 + q3 * q3)
    norm = math.sqrt((energy + 1.0) / (2.0 * energy))
    d = energy + 1.0
    phi1 = norm * np.array([-q3 / d, -q1 / d, 1.0, 0.0], dtype=complex)
    phi2 = norm * np.array([-q1 / d, q3 / d, 0.0, 1.0], dtype=complex)
    return BispinorPair(phi1=phi1, phi2=phi2)


def _dirac_apply(q1: float, q3: float, phi: np.ndarray) -> np.ndarray:
    """(alpha.q + gamma^0) phi for kinetic momentum (q1, 0, q3)."""
    a0, a1, a2, a3 = phi
    return np.array(
        [
            a0 + q3 * a2 + q1 * a3,
            a1 + q1 * a2 - q3 * a3,
            q3 * a0 + q1 * a1 - a2,
            q1 * a0 - q3 * a1 - a3,
        ]
    )


def dirac_rhs(b: BispinorPair, p: MomentumPoint, cfg: PulseConfig, t: float) -> BispinorPair:
    """d(phi)/dt = -i H(t) phi for each spin label."""
    q = kinetic_momentum(p, cfg, t)
    q1, q3 = q[0], q[2]
    return BispinorPair(
        phi1=-1j * _dirac_apply(q1, q3, np.asarray(b.phi1, complex)),
        phi2=-1j * _dirac_apply(q1, q3, np.asarray(b.phi2, complex)),
    )


def dirac_ode(p: MomentumPoint, cfg: PulseConfig):
    """rhs(t, y) on y of shape (2, 4), one row per spin label."""
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    q1 = p.p_perp
    ppar = p.p_par

    def rhs(t, y):
        a = _potential_scalar(e0, omega, ncyc, t)
        q3 = ppar - a
        out = np.empty_like(y)
        out[:, 0] = -1j * (y[:, 0] + q3 * y[:, 2] + q1 * y[:, 3])
        out[:, 1] = -1j * (y[:, 1] + q1 * y[:, 2] - q3 * y[:, 3])
        out[:, 2] = -1j * (q3 * y[:, 0] + q1 * y[:, 1] - y[:, 2])
        out[:, 3] = -1j * (q1 * y[:, 0] - q3 * y[:, 1] - y[:, 3])
        return out

    return rhs


def dirac_ode_grid(p_par, p_perp, cfg: PulseConfig):
    """Batched rhs(t, Y) on Y of shape (n, 2, 4) for flat momentum arrays."""
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    ppar = np.asarray(p_par, dtype=float)
    q1 = np.asarray(p_perp, dtype=float)[:, None]

    def rhs(t, y):
        a = _potential_scalar(e0, omega, ncyc, t)
        q3 = (ppar - a)[:, None]
        out = np.empty_like(y)
        out[:, :, 0] = -1j * (y[:, :, 0] + q3 * y[:, :, 2] + q1 * y[:, :, 3])
        out[:, :, 1] = -1j * (y[:, :, 1] + q1 * y[:, :, 2] - q3 * y[:, :, 3])
        out[:, :, 2] = -1j * (q3 * y[:, :, 0] + q1 * y[:, :, 1] - y[:, :, 2])
        out[:, :, 3] = -1j * (q1 * y[:, :, 0] - q3 * y[:, :, 1] - y[:, :, 3])
        return out

    return rhs


def negative_energy_init_grid(p_par, p_perp) -> np.ndarray:
    """Initial spinor pairs stacked as (n, 2, 4) for flat momentum arrays."""
    ppar = np.asarray(p_par, dtype=float)
    pperp = np.asarray(p_perp, dtype=float)
    energy = np.sqrt(1.0 + ppar * ppar + pperp * pperp)
    norm = np.sqrt((energy + 1.0) / (2.0 * energy))
    d = energy + 1.0
    out = np.zeros((ppar.size, 2, 4), dtype=complex)
    out[:, 0, 0] = -ppar / d
    out[:, 0, 1] = -pperp / d
    out[:, 0, 2] = 1.0
    out[:, 1, 0] = -pperp / d
    out[:, 1, 1] = ppar / d
    out[:, 1, 3] = 1.0
    return out * norm[:, None, None]


def bilinears(b: BispinorPair) -> DhwVector:
    """Spin-summed bilinears packed as [h3, h0, h1, h2].

    For the orthonormal pair evolved from the negative-energy vacuum this
    reproduces the 10-component phase-space vector at every time.
    """
    y = np.stack([np.asarray(b.phi1, complex), np.asarray(b.phi2, complex)])
    return DhwVector.from_array(bilinears_grid(y[None, :, :])[0])


def bilinears_grid(y) -> np.ndarray:
    """Bilinears for stacked spinor pairs: (n, 2, 4) complex -> (n, 10) real."""
    y = np.asarray(y, dtype=complex)
    a0 = y[..., 0]
    a1 = y[..., 1]
    a2 = y[..., 2]
    a3 = y[..., 3]
    # upper/lower 2-spinor cross terms
    z01 = np.conj(a0) * a1 + np.conj(a2) * a3
    z03 = np.conj(a0) * a3
    z12 = np.conj(a1) * a2
    z02 = np.conj(a0) * a2
    z13 = np.conj(a1) * a3
    n0 = np.abs(a0) ** 2
    n1 = np.abs(a1) ** 2
    n2 = np.abs(a2) ** 2
    n3 = np.abs(a3) ** 2
    out = np.empty(y.shape[:-2] + (10,))
    out[..., 0] = (n0 + n1 - n2 - n3).sum(axis=-1)
    out[..., 1] = 2.0 * z01.real.sum(axis=-1)
    out[..., 2] = 2.0 * z01.imag.sum(axis=-1)
    out[..., 3] = (n0 - n1 + n2 - n3).sum(axis=-1)
    out[..., 4] = 2.0 * (z03.real + z12.real).sum(axis=-1)
    out[..., 5] = 2.0 * (z03.imag - z12.imag).sum(axis=-1)
    out[..., 6] = 2.0 * (z02.real - z13.real).sum(axis=-1)
    out[..., 7] = 2.0 * (z03.imag + z12.imag).sum(axis=-1)
    out[..., 8] = 2.0 * (-z03.real + z12.real).sum(axis=-1)
    out[..., 9] = 2.0 * (z02.imag - z13.imag).sum(axis=-1)
    return out


# ---------------------------------------------------------------------------
# precession picture

def bloch_from_amplitudes(state: TwoLevelState) -> np.ndarray:
    """Unit vector u = chi^dag sigma chi; u3 = |c1|^2 - |c2|^2."""
    z = np.conj(state.c1) * state.c2
    return np.array([2.0 * z.real, 2.0 * z.imag, abs(state.c1) ** 2 - abs(state.c2) ** 2])


def bloch_ode(p: MomentumPoint, cfg: PulseConfig):
    """rhs(t, u) for the precession du/dt = a x u, a = [0, -2*Rabi, 2*omega]."""
    e0, omega, ncyc = cfg.e0_ratio, cfg.omega, cfg.n_cycles
    pp2 = p.p_perp * p.p_perp
    eps_perp = math.sqrt(pp2 + 1.0)
    ppar = p.p_par

    def rhs(t, u):
        a = _potential_scalar(e0, omega, ncyc, t)
        e_t = _field_scalar(e0, omega, ncyc, t)
        q3 = ppar - a
        om = math.sqrt(pp2 + q3 * q3 + 1.0)
        rabi = -e_t * eps_perp / (2.0 * om * om)
        a2 = -2.0 * rabi
        a3 = 2.0 * om
        return np.array(
            [a2 * u[2] - a3 * u[1], a3 * u[0], -a2 * u[0]]
        )

    return rhs
