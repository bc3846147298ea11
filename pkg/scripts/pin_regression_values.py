#!/usr/bin/env python3
"""Regenerate tests/data/regression_values.json from the spinor-evolution oracle.

Regression numbers are never typed in by hand: this script evaluates the
pair density through the independent bispinor route at tight tolerance and
freezes the result together with its provenance.  Run from the repository
root after any intentional physics change:

    python3 scripts/pin_regression_values.py
"""

import json
import pathlib
from datetime import datetime, timezone

from pairvortex import PulseConfig
from pairvortex.dynamics import MomentumPoint
from pairvortex.integrator import IntegratorConfig
from pairvortex.observables import pair_density_bispinor

TIGHT = IntegratorConfig(rel_tol=1e-12, abs_tol=1e-14)

POINTS = [
    {"e0": 0.1, "omega": 1.0, "cycles": 3, "p_par": 0.0, "p_perp": 0.0},
    {"e0": 0.1, "omega": 1.0, "cycles": 3, "p_par": 0.2, "p_perp": 0.2},
]


def main():
    entries = []
    for spec in POINTS:
        cfg = PulseConfig(spec["e0"], spec["omega"], spec["cycles"])
        p = MomentumPoint(spec["p_par"], spec["p_perp"])
        entries.append({**spec, "f": pair_density_bispinor(p, cfg, TIGHT)})
    payload = {
        "generated_by": "scripts/pin_regression_values.py (bispinor oracle)",
        "rtol": TIGHT.rel_tol,
        "atol": TIGHT.abs_tol,
        "created": datetime.now(timezone.utc).isoformat(),
        "values": entries,
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "regression_values.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    print(f"wrote {out}")
    for e in entries:
        print(f"  f={e['f']!r} at p=({e['p_par']}, {e['p_perp']})")


if __name__ == "__main__":
    main()
