"""Adaptive explicit Runge-Kutta integration shared by all formulations.

Embedded Dormand-Prince 5(4) pair: six fresh derivative evaluations per
step (the seventh stage is reused as the first stage of the next step),
5th-order propagation with a 4th-order error estimate.  Step acceptance
uses the infinity norm of the componentwise scaled error, so when the
state is a whole batch of independent systems every element individually
meets the tolerance.

The state may be any real or complex ndarray; the right-hand side must
return an array of the same shape and dtype.  All arithmetic is a fixed
sequence of numpy operations, so results are bit-identical for identical
inputs within one build.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

__all__ = ["IntegratorConfig", "IntegrationError", "IntegrationResult", "integrate"]

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# difference between the 5th- and 4th-order weights
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_MAX_STEPS = 10_000_000


class IntegrationError(RuntimeError):
    """Raised on step-size underflow (stiffness) or a non-finite right-hand side."""


@dataclass(frozen=True)
class IntegratorConfig:
    """Error-control settings.

    rel_tol and abs_tol bound the componentwise local error per step;
    max_step caps the step size; dense_samples, when set, requests the
    solution at that many equally spaced times across the interval.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: Optional[float] = None
    dense_samples: Optional[int] = None

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-4):
            raise ValueError(f"rel_tol must be in (0, 1e-4], got {self.rel_tol}")
        if not (0.0 < self.abs_tol <= 1e-6):
            raise ValueError(f"abs_tol must be in (0, 1e-6], got {self.abs_tol}")
        if self.max_step is not None and not self.max_step > 0.0:
            raise ValueError(f"max_step must be positive, got {self.max_step}")
        if self.dense_samples is not None and self.dense_samples < 2:
            raise ValueError(f"dense_samples must be >= 2, got {self.dense_samples}")


@dataclass
class IntegrationResult:
    """Final state plus optional dense trajectory and step statistics."""

    y: np.ndarray
    t: float
    dense_t: Optional[np.ndarray] = None
    dense_y: Optional[np.ndarray] = None
    nsteps: int = 0
    nrejected: int = 0
    nfev: int = 0


def integrate(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0,
    t0: float,
    t1: float,
    cfg: Optional[IntegratorConfig] = None,
) -> IntegrationResult:
    """Propagate y' = rhs(t, y) from t0 to t1 with local error control.

    Steps are rejected and shrunk whenever the scaled error estimate
    exceeds one; a step size driven below ~1e-14 of the interval raises
    IntegrationError, as does a right-hand side that stays non-finite.
    """
    if cfg is None:
        cfg = IntegratorConfig()
    if not t1 > t0:
        raise ValueError(f"require t1 > t0, got [{t0}, {t1}]")
    y = np.array(y0, copy=True)
    if not np.all(np.isfinite(y)):
        raise ValueError("initial state contains non-finite entries")

    span = t1 - t0
    max_step = cfg.max_step if cfg.max_step is not None else np.inf
    h_floor = 1e-14 * span
    rtol, atol = cfg.rel_tol, cfg.abs_tol

    samples = None
    dense_y = None
    next_sample = 1  # samples[0] is t0 itself
    if cfg.dense_samples is not None:
        samples = np.linspace(t0, t1, cfg.dense_samples)
        dense_y = np.empty((cfg.dense_samples,) + y.shape, dtype=y.dtype)
        dense_y[0] = y

    t = t0
    h = min(max_step, 1e-3 * span)
    k1 = np.asarray(rhs(t, y))
    nfev = 1
    nsteps = 0
    nrejected = 0

    while t < t1:
        target = t1 if samples is None or next_sample >= len(samples) else samples[next_sample]
        clamped = False
        h_try = min(h, max_step)
        if t + h_try >= target - h_floor:
            h_try = target - t
            clamped = True
        if h < h_floor:
            raise IntegrationError(
                f"step size underflow at t={t:.6g} (step {h:.3g}); problem too stiff for this method"
            )

        k2 = np.asarray(rhs(t + _C2 * h_try, y + h_try * (_A21 * k1)))
        k3 = np.asarray(rhs(t + _C3 * h_try, y + h_try * (_A31 * k1 + _A32 * k2)))
        k4 = np.asarray(rhs(t + _C4 * h_try, y + h_try * (_A41 * k1 + _A42 * k2 + _A43 * k3)))
        k5 = np.asarray(
            rhs(t + _C5 * h_try, y + h_try * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4))
        )
        k6 = np.asarray(
            rhs(
                t + h_try,
                y + h_try * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5),
            )
        )
        y_new = y + h_try * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
        k7 = np.asarray(rhs(t + h_try, y_new))
        nfev += 6

        err = h_try * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = float(np.max(np.abs(err) / scale))
        if not np.isfinite(err_norm):
            err_norm = np.inf

        if err_norm <= 1.0:
            nsteps += 1
            t = target if clamped else t + h_try
            y = y_new
            k1 = k7
            if samples is not None and clamped:
                while next_sample < len(samples) and samples[next_sample] <= t:
                    dense_y[next_sample] = y
                    next_sample += 1
            if err_norm == 0.0:
                factor = 5.0
            else:
                factor = min(5.0, max(0.2, 0.9 * err_norm ** (-0.2)))
            if clamped:
                # keep the pre-clamp proposal unless error control asks for less
                h = min(h, h_try * factor) if factor < 1.0 else h
            else:
                h = h_try * factor
        else:
            nrejected += 1
            h = h_try * max(0.2, min(1.0, 0.9 * err_norm ** (-0.2)))

    if samples is not None:
        dense_y[-1] = y
        return IntegrationResult(
            y=y, t=t1, dense_t=samples, dense_y=dense_y, nsteps=nsteps, nrejected=nrejected, nfev=nfev
        )
    return IntegrationResult(y=y, t=t1, nsteps=nsteps, nrejected=nrejected, nfev=nfev)
