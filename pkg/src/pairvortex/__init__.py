"""Electron-positron pair creation from vacuum by a pulsed electric field.

The package solves the momentum-mode dynamics of a fermion field driven by
a linearly polarized, spatially homogeneous electric-field pulse, in three
equivalent formulations (two-level amplitudes, a 10-component phase-space
vector, and direct 4-spinor evolution), and analyzes the resulting complex
amplitude maps: pair densities, phase singularities with topological
charge, threshold scans, and longitudinal/transverse momentum sharing.
"""

__version__ = "0.1.0"

from .pulse import PulseConfig, UnitSystem, electric_field, net_impulse, vector_potential
from .dynamics import (
    BispinorPair,
    DhwVector,
    MomentumPoint,
    TwoLevelState,
    bilinears,
    bloch_from_amplitudes,
    dhw_matrix,
    dhw_rhs,
    dhw_vacuum,
    dirac_rhs,
    kinetic_momentum,
    negative_energy_init,
    omega_eff,
    rabi_eff,
    two_level_rhs,
)
from .integrator import IntegratorConfig, IntegrationError, integrate
from .observables import (
    BasisTriple,
    PairAmplitude,
    basis_triple,
    distribution_from_dhw,
    energy_density,
    pair_density,
    reconstruct_W,
)
from .sweep import DistributionGrid, GridSpec, SweepError, frequency_scan, load_grid, run_sweep, save_grid
from .vortex import (
    RingCount,
    SharingReport,
    ThresholdScan,
    VortexPoint,
    locate_vortices,
    phase_gradient,
    plaquette_windings,
    ring_count,
    sharing_report,
    threshold_scan,
    winding_number,
)

__all__ = [
    "PulseConfig",
    "UnitSystem",
    "electric_field",
    "vector_potential",
    "net_impulse",
    "MomentumPoint",
    "TwoLevelState",
    "DhwVector",
    "BispinorPair",
    "kinetic_momentum",
    "omega_eff",
    "rabi_eff",
    "two_level_rhs",
    "dhw_matrix",
    "dhw_rhs",
    "dhw_vacuum",
    "dirac_rhs",
    "negative_energy_init",
    "bilinears",
    "bloch_from_amplitudes",
    "IntegratorConfig",
    "IntegrationError",
    "integrate",
    "PairAmplitude",
    "BasisTriple",
    "pair_density",
    "basis_triple",
    "reconstruct_W",
    "energy_density",
    "distribution_from_dhw",
    "GridSpec",
    "DistributionGrid",
    "SweepError",
    "run_sweep",
    "frequency_scan",
    "save_grid",
    "load_grid",
    "VortexPoint",
    "RingCount",
    "SharingReport",
    "ThresholdScan",
    "phase_gradient",
    "plaquette_windings",
    "winding_number",
    "locate_vortices",
    "ring_count",
    "threshold_scan",
    "sharing_report",
    "__version__",
]
