"""Offline figure scripts for pairvortex CSV artifacts.

Reads the CSV/JSON files written by the `pairvortex` command line and
renders publication-style panels: field/potential time series, and
amplitude-magnitude plus cyclic-phase momentum maps with vortex markers.
No physics is computed here beyond display transforms.
"""

__version__ = "0.1.0"

from .render import FigureRecipe, SchemaError, render, render_distribution, render_field

__all__ = [
    "FigureRecipe",
    "SchemaError",
    "render",
    "render_field",
    "render_distribution",
    "__version__",
]
