"""Shared fixtures; the heavy momentum-grid sweeps are computed once per session."""

import json
import os
import pathlib

import pytest

from pairvortex import GridSpec, PulseConfig, run_sweep

DATA_DIR = pathlib.Path(__file__).parent / "data"

WORKERS = min(8, os.cpu_count() or 1)

FIG2_WINDOW = GridSpec(-1.0, 1.0, -1.0, 1.0, 201, 201)
FIG2_WINDOW_DOUBLED = GridSpec(-1.0, 1.0, -1.0, 1.0, 401, 401)
SHARING_WINDOW = GridSpec(-2.2, 2.2, -2.2, 2.2, 111, 111)
SHARING_OMEGAS = (0.8, 1.5, 2.0, 3.0, 4.0)


@pytest.fixture(scope="session")
def regression_values():
    with open(DATA_DIR / "regression_values.json") as fh:
        payload = json.load(fh)
    return payload["values"]


def _sweep(e0, omega, spec):
    return run_sweep(PulseConfig(e0, omega, 3), spec, workers=WORKERS)


@pytest.fixture(scope="session")
def grid_099():
    """201x201 map at e0=0.1, omega=0.99 (one vortex ring)."""
    return _sweep(0.1, 0.99, FIG2_WINDOW)


@pytest.fixture(scope="session")
def grid_100():
    """201x201 map at e0=0.1, omega=1.0 (ring-transition point)."""
    return _sweep(0.1, 1.0, FIG2_WINDOW)


@pytest.fixture(scope="session")
def grid_101():
    """201x201 map at e0=0.1, omega=1.01 (two vortex rings)."""
    return _sweep(0.1, 1.01, FIG2_WINDOW)


@pytest.fixture(scope="session")
def grid_099_doubled():
    return _sweep(0.1, 0.99, FIG2_WINDOW_DOUBLED)


@pytest.fixture(scope="session")
def grid_101_doubled():
    return _sweep(0.1, 1.01, FIG2_WINDOW_DOUBLED)


@pytest.fixture(scope="session")
def fig3_grids():
    """e0=0.5 maps bracketing the intensity-shifted threshold."""
    return {omega: _sweep(0.5, omega, FIG2_WINDOW) for omega in (1.1, 1.2)}


@pytest.fixture(scope="session")
def sharing_grids():
    """e0=0.5 maps over the wide window for the momentum-sharing scan."""
    return {omega: _sweep(0.5, omega, SHARING_WINDOW) for omega in SHARING_OMEGAS}
