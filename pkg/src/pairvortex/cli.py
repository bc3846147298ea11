"""Command-line front end.

Subcommands: field, solve, sweep, scan, vortices, sharing.  Every file the
tool writes is paired with a <path>.manifest.json recording the resolved
parameters, so any artifact can be regenerated byte-for-byte from its
manifest with the same build.  Flags may be preloaded from a plain
key=value config file via --config; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import List, Optional

import numpy as np

from . import __version__
from .dynamics import MomentumPoint
from .integrator import IntegratorConfig, integrate
from .observables import pair_density
from .pulse import PulseConfig, electric_field, vector_potential
from .sweep import (
    GridSpec,
    SweepError,
    default_workers,
    load_grid,
    run_sweep,
    save_grid,
)
from .vortex import locate_vortices, sharing_report, threshold_scan

__all__ = ["main", "dispatch", "RunManifest", "manifest_argv"]


@dataclass
class RunManifest:
    """Everything needed to regenerate an output file with the same build."""

    subcommand: str
    params: dict
    outputs: List[str]
    version: str = __version__
    wall_time_s: float = 0.0
    created: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def write(self, path: str):
        with open(path, "w") as fh:
            json.dump(self.__dict__, fh, indent=2, sort_keys=True)
            fh.write("\n")


def manifest_argv(manifest: dict) -> List[str]:
    """Reconstruct the argument list that reproduces a manifest's outputs."""
    argv = [manifest["subcommand"]]
    for key, value in sorted(manifest["params"].items()):
        if value is None or value is False:
            continue
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif isinstance(value, (list, tuple)):
            argv.extend([flag, ",".join(str(v) for v in value)])
        else:
            argv.extend([flag, str(value)])
    return argv


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _parse_pair(text: str) -> tuple[float, float]:
    parts = [p for p in str(text).split(",") if p != ""]
    if len(parts) == 1:
        v = float(parts[0])
        return v, v
    if len(parts) == 2:
        return float(parts[0]), float(parts[1])
    raise argparse.ArgumentTypeError(f"expected one value or 'par,perp' pair, got {text!r}")


def _parse_int_pair(text: str) -> tuple[int, int]:
    parts = [p for p in str(text).split(",") if p != ""]
    if len(parts) == 1:
        v = int(parts[0])
        return v, v
    if len(parts) == 2:
        return int(parts[0]), int(parts[1])
    raise argparse.ArgumentTypeError(f"expected one count or 'par,perp' pair, got {text!r}")


def _load_config(path: str) -> dict:
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}: malformed line {raw!r}, expected key=value")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairvortex",
        description="Pair creation in pulsed electric fields: momentum maps and vortex analysis.",
    )
    parser.add_argument("--version", action="version", version=f"pairvortex {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp, grid=False, tol=True, workers=False):
        sp.add_argument("--config", help="key=value file supplying defaults for any flag")
        sp.add_argument("--e0", type=float, help="field amplitude in critical-field units")
        sp.add_argument("--omega", type=float, help="carrier frequency (m c^2 / hbar units)")
        sp.add_argument("--cycles", type=int, help="number of carrier cycles (>= 3, default 3)")
        if tol:
            sp.add_argument("--rtol", type=float, help="relative tolerance (default 1e-10)")
            sp.add_argument("--atol", type=float, help="absolute tolerance (default 1e-12)")
        if grid:
            sp.add_argument("--pmin", help="lower momentum bound, one value or 'par,perp'")
            sp.add_argument("--pmax", help="upper momentum bound, one value or 'par,perp'")
            sp.add_argument("--n", help="points per axis, one count or 'par,perp'")
        if workers:
            sp.add_argument("--workers", type=int, help="worker processes (default $PAIRVORTEX_WORKERS or 1)")

    sp = sub.add_parser("field", help="emit the field and potential time series as CSV")
    add_common(sp, tol=False)
    sp.add_argument("--samples", type=int, help="number of sample times (default 1000)")
    sp.add_argument("--out", help="output CSV path")

    sp = sub.add_parser("solve", help="solve a single momentum point")
    add_common(sp)
    sp.add_argument("--ppar", type=float, help="longitudinal momentum (m c units)")
    sp.add_argument("--pperp", type=float, help="transverse momentum (m c units)")
    sp.add_argument("--transient", action="store_true", help="also emit in-pulse occupation history")
    sp.add_argument("--samples", type=int, help="transient sample count (default 400)")
    sp.add_argument("--out", help="CSV path for the transient history")

    sp = sub.add_parser("sweep", help="evaluate the amplitude over a momentum grid")
    add_common(sp, grid=True, workers=True)
    sp.add_argument("--out", help="output basename (.csv/.json/.npz are appended)")

    sp = sub.add_parser("scan", help="ring count over a list of frequencies")
    add_common(sp, grid=True, workers=True)
    sp.add_argument("--omegas", help="comma-separated ascending frequencies")
    sp.add_argument("--out", help="output CSV path")

    sp = sub.add_parser("vortices", help="locate phase singularities in a sweep CSV")
    sp.add_argument("--config", help="key=value file supplying defaults for any flag")
    sp.add_argument("--in", dest="inp", help="sweep CSV path")
    sp.add_argument("--refine", action="store_true", help="sub-cell position refinement")
    sp.add_argument("--out", help="output CSV path (stdout when omitted)")

    sp = sub.add_parser("sharing", help="momentum-sharing report for a sweep CSV")
    sp.add_argument("--config", help="key=value file supplying defaults for any flag")
    sp.add_argument("--in", dest="inp", help="sweep CSV path")
    sp.add_argument("--out", help="output JSON path (stdout when omitted)")

    return parser


_CONVERTERS = {
    "e0": float,
    "omega": float,
    "cycles": int,
    "rtol": float,
    "atol": float,
    "samples": int,
    "ppar": float,
    "pperp": float,
    "workers": int,
    "pmin": str,
    "pmax": str,
    "n": str,
    "omegas": str,
    "out": str,
    "inp": str,
    "transient": lambda s: s.lower() in ("1", "true", "yes"),
    "refine": lambda s: s.lower() in ("1", "true", "yes"),
}


def _merge_config(args: argparse.Namespace):
    if getattr(args, "config", None):
        values = _load_config(args.config)
        alias = {"in": "inp"}
        for key, raw in values.items():
            dest = alias.get(key, key)
            if dest not in _CONVERTERS:
                raise ValueError(f"unknown config key {key!r}")
            current = getattr(args, dest, None)
            if current is None or current is False:
                setattr(args, dest, _CONVERTERS[dest](raw))


def _require(args, names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + ("in" if n == "inp" else n) for n in missing)
        raise UsageError(f"missing required flags: {flags}")


class UsageError(ValueError):
    pass


def _pulse_config(args) -> PulseConfig:
    return PulseConfig(
        e0_ratio=args.e0, omega=args.omega, n_cycles=args.cycles if args.cycles else 3
    )


def _integrator_config(args, dense: Optional[int] = None) -> IntegratorConfig:
    return IntegratorConfig(
        rel_tol=args.rtol if args.rtol else 1e-10,
        abs_tol=args.atol if args.atol else 1e-12,
        dense_samples=dense,
    )


def _grid_spec(args) -> GridSpec:
    pmin = _parse_pair(args.pmin)
    pmax = _parse_pair(args.pmax)
    n = _parse_int_pair(args.n)
    return GridSpec(
        p_par_min=pmin[0],
        p_par_max=pmax[0],
        p_perp_min=pmin[1],
        p_perp_max=pmax[1],
        n_par=n[0],
        n_perp=n[1],
    )


def _params(args, keys) -> dict:
    return {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}


def _cmd_field(args) -> int:
    _require(args, ["e0", "omega", "out"])
    cfg = _pulse_config(args)
    samples = args.samples if args.samples else 1000
    start = time.perf_counter()
    t = np.linspace(0.0, cfg.duration, samples)
    e = electric_field(cfg, t)
    a = vector_potential(cfg, t)
    lines = ["t,E_over_ES,eA_over_mc"]
    lines += [f"{_fmt(ti)},{_fmt(ei)},{_fmt(ai)}" for ti, ei, ai in zip(t, e, a)]
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    wall = time.perf_counter() - start
    manifest = RunManifest(
        subcommand="field",
        params=_params(args, ["e0", "omega", "cycles", "samples", "out"]),
        outputs=[args.out],
        wall_time_s=wall,
    )
    manifest.write(args.out + ".manifest.json")
    print(f"field: {samples} samples over [0, {cfg.duration:.6g}] -> {args.out} ({wall:.2f} s)")
    return 0


def _cmd_solve(args) -> int:
    _require(args, ["e0", "omega", "ppar", "pperp"])
    cfg = _pulse_config(args)
    p = MomentumPoint(args.ppar, args.pperp)
    start = time.perf_counter()
    amp = pair_density(p, cfg, _integrator_config(args))
    outputs = []
    if args.transient:
        _require(args, ["out"])
        from .dynamics import two_level_ode

        samples = args.samples if args.samples else 400
        res = integrate(
            two_level_ode(p, cfg),
            np.array([1.0 + 0j, 0.0 + 0j]),
            0.0,
            cfg.duration,
            _integrator_config(args, dense=samples),
        )
        # in-pulse occupations are basis dependent; only the final row is asymptotic
        lines = ["t,n1,n2,f_transient"]
        for ti, yi in zip(res.dense_t, res.dense_y):
            n1 = abs(yi[0]) ** 2
            n2 = abs(yi[1]) ** 2
            lines.append(f"{_fmt(ti)},{_fmt(n1)},{_fmt(n2)},{_fmt(2.0 * n2)}")
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        outputs.append(args.out)
    wall = time.perf_counter() - start
    phase_text = _fmt(amp.phase) if amp.phase_defined else "undefined"
    print(
        f"solve: p_par={_fmt(p.p_par)} p_perp={_fmt(p.p_perp)} "
        f"f={_fmt(amp.f)} |c2|={_fmt(abs(amp.c2))} phase={phase_text}"
    )
    if outputs:
        manifest = RunManifest(
            subcommand="solve",
            params=_params(
                args, ["e0", "omega", "cycles", "ppar", "pperp", "rtol", "atol", "transient", "samples", "out"]
            ),
            outputs=outputs,
            wall_time_s=wall,
        )
        manifest.write(args.out + ".manifest.json")
    return 0


def _cmd_sweep(args) -> int:
    _require(args, ["e0", "omega", "pmin", "pmax", "n", "out"])
    cfg = _pulse_config(args)
    spec = _grid_spec(args)
    workers = args.workers if args.workers else default_workers()
    start = time.perf_counter()
    grid = run_sweep(cfg, spec, _integrator_config(args), workers=workers)
    paths = save_grid(grid, args.out)
    wall = time.perf_counter() - start
    manifest = RunManifest(
        subcommand="sweep",
        params=_params(
            args, ["e0", "omega", "cycles", "pmin", "pmax", "n", "rtol", "atol", "workers", "out"]
        ),
        outputs=list(paths.values()),
        wall_time_s=wall,
    )
    manifest.write(args.out + ".manifest.json")
    print(
        f"sweep: {spec.n_par}x{spec.n_perp} grid at e0={cfg.e0_ratio} omega={cfg.omega} "
        f"-> {paths['csv']} ({wall:.2f} s)"
    )
    return 0


def _cmd_scan(args) -> int:
    _require(args, ["e0", "omegas", "pmin", "pmax", "n", "out"])
    omegas = [float(w) for w in str(args.omegas).split(",") if w != ""]
    cfg = PulseConfig(
        e0_ratio=args.e0, omega=omegas[0], n_cycles=args.cycles if args.cycles else 3
    )
    spec = _grid_spec(args)
    workers = args.workers if args.workers else default_workers()
    start = time.perf_counter()
    result = threshold_scan(cfg, omegas, spec, _integrator_config(args), workers=workers)
    lines = ["omega,ring_count"]
    lines += [f"{_fmt(w)},{c}" for w, c in zip(result.omegas, result.counts)]
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    wall = time.perf_counter() - start
    manifest = RunManifest(
        subcommand="scan",
        params=_params(
            args, ["e0", "omegas", "cycles", "pmin", "pmax", "n", "rtol", "atol", "workers", "out"]
        ),
        outputs=[args.out],
        wall_time_s=wall,
    )
    manifest.write(args.out + ".manifest.json")
    brackets = ", ".join(f"({lo:g}, {hi:g})" for lo, hi in result.brackets) or "none"
    print(f"scan: counts {list(result.counts)} increment brackets: {brackets} -> {args.out} ({wall:.2f} s)")
    return 0


def _cmd_vortices(args) -> int:
    _require(args, ["inp"])
    grid = load_grid(args.inp)
    start = time.perf_counter()
    points = locate_vortices(grid, refine=bool(args.refine))
    lines = ["p_par,p_perp,charge"]
    lines += [f"{_fmt(v.p_par)},{_fmt(v.p_perp)},{v.charge}" for v in points]
    text = "\n".join(lines) + "\n"
    wall = time.perf_counter() - start
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        manifest = RunManifest(
            subcommand="vortices",
            params=_params(args, ["inp", "refine", "out"]),
            outputs=[args.out],
            wall_time_s=wall,
        )
        manifest.write(args.out + ".manifest.json")
        print(f"vortices: {len(points)} singularities -> {args.out} ({wall:.2f} s)")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_sharing(args) -> int:
    _require(args, ["inp"])
    grid = load_grid(args.inp)
    start = time.perf_counter()
    report = sharing_report(grid)
    text = json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"
    wall = time.perf_counter() - start
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        manifest = RunManifest(
            subcommand="sharing",
            params=_params(args, ["inp", "out"]),
            outputs=[args.out],
            wall_time_s=wall,
        )
        manifest.write(args.out + ".manifest.json")
        print(f"sharing: {report.classification} -> {args.out} ({wall:.2f} s)")
    else:
        sys.stdout.write(text)
    return 0


_HANDLERS = {
    "field": _cmd_field,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "scan": _cmd_scan,
    "vortices": _cmd_vortices,
    "sharing": _cmd_sharing,
}


def dispatch(argv: List[str]) -> int:
    """Parse and run; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        _merge_config(args)
        return _HANDLERS[args.subcommand](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SweepError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[List[str]] = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
