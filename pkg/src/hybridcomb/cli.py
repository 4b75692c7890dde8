"""Command-line interface.

Subcommands: ``bands``, ``dispersion``, ``dos``, ``discrete``, ``merge``,
``sweep``, ``units``.  Data files are CSV (header row, 17-significant-digit
floats, infinities spelled ``inf``) or JSON (``schema_version: 1``); identical
flags produce byte-identical files.  When writing to a path, run metadata goes
to a ``<output>.meta.json`` sidecar so the data files stay timestamp-free.

All energies and lengths are dimensionless (see ``hybridcomb units`` for the
conversion from eV / Angstrom inputs).  Exit codes: 0 success, 2 parameter
error, 3 I/O error, 4 numerical failure.  ``HYBRIDCOMB_THREADS`` caps the
sweep worker pool; the default is the available parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .bands import discrete_spectrum_critical, enumerate_bands
from .dos import OccupationSpec, DosSample, dos_grid, occupation
from .errors import GridTooLarge, NumericalError, OpaqueRegime, ParameterError
from .limits import merge_d_to_a, merge_d_to_zero
from .params import OneSpeciesParams, TwoSpeciesParams
from .secular import secular_grid
from .units import PhysicalUnitsSpec, to_dimensionless

EXIT_OK = 0
EXIT_PARAM = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

SWEEP_PARAMS = ("w0", "w1", "v0", "v1", "d", "a", "eps")
MAX_SWEEP_CELLS = 10_000_000

_FLOAT_KEYS = (
    "w0", "w1", "v0", "v1", "d", "a", "emin", "emax", "tol",
    "mu", "T", "lam", "y0", "mass",
)
_INT_KEYS = ("grid", "samples", "count", "band")
_STR_KEYS = ("format", "output", "stat", "direction", "quantity", "axis1", "axis2", "bands")


def _fmt(x) -> str:
    if isinstance(x, float):
        if x == float("inf"):
            return "inf"
        if x == float("-inf"):
            return "-inf"
        return format(x, ".17g")
    return str(x)


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    with open(output, "w", newline="\n") as fh:
        fh.write(text)


def _emit_sidecar(output: str | None, meta: dict) -> None:
    if output is None or output == "-":
        return
    with open(output + ".meta.json", "w", newline="\n") as fh:
        fh.write(json.dumps(meta, indent=2) + "\n")


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _load_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; '#' starts a comment, keys match flag names."""
    out: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Merge precedence: command line > config file > builtin defaults."""
    cfg = _load_config(args.config) if getattr(args, "config", None) else {}
    for key, raw in cfg.items():
        if not hasattr(args, key):
            continue  # keys for other subcommands are permitted in shared files
        if getattr(args, key) is not None:
            continue
        if key in _FLOAT_KEYS:
            setattr(args, key, float(raw))
        elif key in _INT_KEYS:
            setattr(args, key, int(raw))
        elif key in _STR_KEYS:
            setattr(args, key, raw)
        else:
            raise ValueError(f"unknown configuration key {key!r}")
    for key, value in getattr(args, "builtin_defaults", {}).items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)
    return args


def _build_params(values: dict):
    """One- or two-species record; two-species iff any of v0/v1/d is set."""
    w0 = values.get("w0")
    if w0 is None:
        raise ValueError("missing delta coupling --w0")
    w1 = values.get("w1") or 0.0
    a = values.get("a") or 1.0
    two = any(values.get(k) is not None for k in ("v0", "v1", "d"))
    if not two:
        return OneSpeciesParams(w0=w0, w1=w1, a=a)
    d = values.get("d")
    if d is None:
        raise ValueError("two-species parameters need the displacement --d")
    return TwoSpeciesParams(
        w0=w0, w1=w1, v0=values.get("v0") or 0.0, v1=values.get("v1") or 0.0, d=d, a=a
    )


def _params_values(args) -> dict:
    return {k: getattr(args, k, None) for k in ("w0", "w1", "v0", "v1", "d", "a")}


def _params_meta(p) -> dict:
    if isinstance(p, OneSpeciesParams):
        return {"model": "one_species", "w0": p.w0, "w1": p.w1, "a": p.a}
    return {
        "model": "two_species",
        "w0": p.w0, "w1": p.w1, "v0": p.v0, "v1": p.v1, "d": p.d, "a": p.a,
    }


def _meta(command: str, p_meta: dict, extra: dict) -> dict:
    return {
        "schema_version": 1,
        "tool": "hybridcomb",
        "version": __version__,
        "command": command,
        "params": {**p_meta, **extra},
    }


def _n_workers() -> int:
    env = os.environ.get("HYBRIDCOMB_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _band_payload(band) -> dict:
    return {
        "index": band.index,
        "eps_lo": band.lower.epsilon,
        "eps_hi": band.upper.epsilon,
        "edge_sign_lo": band.lower.edge_sign,
        "edge_sign_hi": band.upper.edge_sign,
        "curvature_sign": band.curvature_sign,
        "samples": [[q, e] for q, e in band.samples],
    }


# --------------------------------------------------------------------------
# subcommand handlers


def cmd_bands(args) -> int:
    p = _build_params(_params_values(args))
    bands = enumerate_bands(
        p,
        eps_min=args.emin,
        eps_max=args.emax,
        n_scan=args.grid,
        tol_edge=args.tol,
        n_samples=args.samples,
    )
    extra = {"emin": args.emin, "emax": args.emax, "tol": args.tol, "samples": args.samples}
    if args.format == "json":
        payload = _meta("bands", _params_meta(p), extra)
        payload["bands"] = [_band_payload(b) for b in bands]
        _emit(_json_text(payload), args.output)
    else:
        rows = [
            (b.index, b.lower.epsilon, b.upper.epsilon,
             b.lower.edge_sign, b.upper.edge_sign, b.curvature_sign)
            for b in bands
        ]
        _emit(_csv("band,eps_lo,eps_hi,edge_sign_lo,edge_sign_hi,curvature_sign", rows),
              args.output)
    _emit_sidecar(args.output, _meta("bands", _params_meta(p), extra))
    return EXIT_OK


def cmd_dispersion(args) -> int:
    p = _build_params(_params_values(args))
    bands = enumerate_bands(
        p,
        eps_min=args.emin,
        eps_max=args.emax,
        n_scan=args.grid,
        tol_edge=args.tol,
        n_samples=args.samples,
    )
    if args.bands is not None:
        wanted = {int(tok) for tok in args.bands.split(",") if tok.strip() != ""}
        bands = [b for b in bands if b.index in wanted]
    rows = [(b.index, q, e) for b in bands for q, e in b.samples]
    extra = {"emin": args.emin, "emax": args.emax, "samples": args.samples}
    if args.format == "json":
        payload = _meta("dispersion", _params_meta(p), extra)
        payload["rows"] = [{"band": b, "q": q, "epsilon": e} for b, q, e in rows]
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv("band,q,epsilon", rows), args.output)
    _emit_sidecar(args.output, _meta("dispersion", _params_meta(p), extra))
    return EXIT_OK


def cmd_dos(args) -> int:
    p = _build_params(_params_values(args))
    spec = None
    if args.stat is not None:
        if args.mu is None or args.T is None:
            raise ValueError("--stat needs both --mu and --T")
        spec = OccupationSpec(statistics=args.stat, mu=args.mu, T=args.T)
        if spec.statistics == "bose_einstein" and args.emin <= spec.mu:
            raise ValueError(
                "Bose-Einstein occupation needs mu below the energy window "
                f"(emin={args.emin} <= mu={spec.mu})"
            )
    n = args.grid
    eps = np.linspace(args.emin, args.emax, n) if n > 0 else np.empty(0)
    g = dos_grid(eps, p) if n > 0 else np.empty(0)
    if spec is None:
        rows = list(zip(eps.tolist(), g.tolist()))
        header = "epsilon,g"
    else:
        rows = []
        for e, gv in zip(eps.tolist(), g.tolist()):
            occ = occupation(DosSample(epsilon=e, g=gv), spec).occupation
            rows.append((e, gv, occ))
        header = "epsilon,g,occupation"
    extra = {"emin": args.emin, "emax": args.emax, "grid": n}
    if spec is not None:
        extra.update({"stat": spec.statistics, "mu": spec.mu, "T": spec.T})
    if args.format == "json":
        payload = _meta("dos", _params_meta(p), extra)
        payload["rows"] = [[("inf" if x == float("inf") else x) for x in row] for row in rows]
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv(header, rows), args.output)
    _emit_sidecar(args.output, _meta("dos", _params_meta(p), extra))
    return EXIT_OK


def cmd_discrete(args) -> int:
    if args.w0 is None:
        raise ValueError("missing delta coupling --w0")
    p = OneSpeciesParams(w0=args.w0, w1=args.w1 if args.w1 is not None else 1.0, a=args.a)
    energies = discrete_spectrum_critical(p, args.count, tol=args.tol)
    extra = {"count": args.count, "tol": args.tol}
    if args.format == "json":
        payload = _meta("discrete", _params_meta(p), extra)
        payload["energies"] = energies
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv("n,epsilon", list(enumerate(energies))), args.output)
    _emit_sidecar(args.output, _meta("discrete", _params_meta(p), extra))
    return EXIT_OK


def cmd_merge(args) -> int:
    values = _params_values(args)
    if values["d"] is None:
        values["d"] = 0.5 * (values["a"] or 1.0)  # formulas do not depend on d
    for key in ("v0", "v1"):
        if values[key] is None:
            values[key] = 0.0
    p = _build_params(values)
    if not isinstance(p, TwoSpeciesParams):
        raise ValueError("merge needs two-species couplings")
    directions = ("to_zero", "to_a") if args.direction == "both" else (args.direction,)
    merged = [merge_d_to_zero(p) if d == "to_zero" else merge_d_to_a(p) for d in directions]
    extra = {"direction": args.direction}
    if args.format == "json":
        payload = _meta("merge", _params_meta(p), extra)
        payload["merged"] = [
            {"direction": m.direction, "u0": m.u0, "u1": m.u1} for m in merged
        ]
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv("direction,u0,u1", [(m.direction, m.u0, m.u1) for m in merged]), args.output)
    _emit_sidecar(args.output, _meta("merge", _params_meta(p), extra))
    return EXIT_OK


def cmd_units(args) -> int:
    spec = PhysicalUnitsSpec(mu=args.mu, lam=args.lam, y0=args.y0, mass=args.mass)
    p = to_dimensionless(spec)
    extra = {"mu": spec.mu, "lambda": spec.lam, "y0": spec.y0, "mass": spec.mass}
    if args.format == "json":
        payload = _meta("units", _params_meta(p), extra)
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv("w0,w1,a", [(p.w0, p.w1, p.a)]), args.output)
    _emit_sidecar(args.output, _meta("units", _params_meta(p), extra))
    return EXIT_OK


# --------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    steps: int

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def _parse_axis(spec: str) -> SweepAxis:
    parts = spec.split(":")
    if len(parts) != 4:
        raise ValueError(f"axis spec must be name:min:max:steps, got {spec!r}")
    name, lo, hi, steps = parts[0], float(parts[1]), float(parts[2]), int(parts[3])
    if name not in SWEEP_PARAMS:
        raise ValueError(f"axis parameter must be one of {SWEEP_PARAMS}, got {name!r}")
    if steps < 2:
        raise ValueError(f"axis needs at least 2 steps, got {steps}")
    if not lo < hi:
        raise ValueError(f"axis needs min < max, got {lo} >= {hi}")
    return SweepAxis(name=name, lo=lo, hi=hi, steps=steps)


def _sweep_params(base: dict, assignments: dict):
    values = dict(base)
    values.update(assignments)
    return _build_params(values)


def cmd_sweep(args) -> int:
    axis1 = _parse_axis(args.axis1)
    axis2 = _parse_axis(args.axis2) if args.axis2 else None
    cells = axis1.steps * (axis2.steps if axis2 else 1)
    if cells > MAX_SWEEP_CELLS:
        raise GridTooLarge(f"{cells} cells exceed the {MAX_SWEEP_CELLS} limit")
    base = _params_values(args)
    quantity = args.quantity
    workers = _n_workers()

    if quantity == "band_mask":
        if axis2 is None or axis2.name != "eps":
            raise ValueError("band_mask needs --axis2 eps:min:max:steps")
        if axis1.name == "eps":
            raise ValueError("band_mask sweeps a parameter on axis1, not eps")
        eps = axis2.values

        def mask_row(v1val: float):
            p = _sweep_params(base, {axis1.name: float(v1val)})
            F, _ = secular_grid(eps, p)
            return (np.abs(F) <= 1.0).astype(int)

        with ThreadPoolExecutor(max_workers=workers) as pool:
            masks = list(pool.map(mask_row, axis1.values))
        rows = [
            (float(v), float(e), int(m))
            for v, mask in zip(axis1.values, masks)
            for e, m in zip(eps, mask)
        ]
        header = f"{axis1.name},eps,allowed"

    elif quantity == "gap_widths":
        if axis2 is not None:
            raise ValueError("gap_widths is a one-axis sweep")
        if axis1.name == "eps":
            raise ValueError("gap_widths sweeps a parameter, not eps")

        def gaps_row(val: float):
            p = _sweep_params(base, {axis1.name: float(val)})
            bands = enumerate_bands(p, eps_min=args.emin, eps_max=args.emax)
            return [
                (i, bands[i].upper.epsilon, bands[i + 1].lower.epsilon)
                for i in range(len(bands) - 1)
            ]

        with ThreadPoolExecutor(max_workers=workers) as pool:
            gap_lists = list(pool.map(gaps_row, axis1.values))
        rows = [
            (float(v), i, lo, hi, hi - lo)
            for v, gaps in zip(axis1.values, gap_lists)
            for i, lo, hi in gaps
        ]
        header = f"{axis1.name},gap_index,eps_lo,eps_hi,width"

    elif quantity == "curvature_sign":
        if axis2 is None or axis2.name == "eps" or axis1.name == "eps":
            raise ValueError("curvature_sign needs two parameter axes")

        def curv_cell(pair):
            v1val, v2val = pair
            p = _sweep_params(base, {axis1.name: float(v1val), axis2.name: float(v2val)})
            try:
                bands = enumerate_bands(p, eps_min=args.emin, eps_max=args.emax)
            except OpaqueRegime:
                return 0
            if args.band >= len(bands):
                return 0
            return bands[args.band].curvature_sign

        grid = [(v1, v2) for v1 in axis1.values for v2 in axis2.values]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            signs = list(pool.map(curv_cell, grid))
        rows = [
            (float(v1), float(v2), s) for (v1, v2), s in zip(grid, signs)
        ]
        header = f"{axis1.name},{axis2.name},curvature_sign"

    else:
        raise ValueError(f"unknown sweep quantity {quantity!r}")

    extra = {
        "quantity": quantity,
        "axis1": args.axis1,
        "axis2": args.axis2,
        "emin": args.emin,
        "emax": args.emax,
        "band": args.band,
    }
    base_meta = {k: v for k, v in base.items() if v is not None}
    if args.format == "json":
        payload = _meta("sweep", base_meta, extra)
        payload["header"] = header.split(",")
        payload["rows"] = [list(r) for r in rows]
        _emit(_json_text(payload), args.output)
    else:
        _emit(_csv(header, rows), args.output)
    _emit_sidecar(args.output, _meta("sweep", base_meta, extra))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_common(sub: argparse.ArgumentParser, *, params: bool = True) -> None:
    if params:
        for flag in ("--w0", "--w1", "--v0", "--v1", "--d", "--a"):
            sub.add_argument(flag, type=float, default=None)
    sub.add_argument("--format", choices=("csv", "json"), default=None)
    sub.add_argument("--output", default=None, help="output path; '-' or omitted = stdout")
    sub.add_argument("--config", default=None, help="flat key = value defaults file")


def _add_window(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--emin", type=float, default=None,
                     help="window bottom; default: below any negative band")
    sub.add_argument("--emax", type=float, default=None)
    sub.add_argument("--grid", type=int, default=None, help="scan / sample point count")
    sub.add_argument("--tol", type=float, default=None, help="edge bisection tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridcomb",
        description="Band spectra and densities of states of periodic "
        "delta / delta-prime potentials (dimensionless units).",
    )
    parser.add_argument("--version", action="version", version=f"hybridcomb {__version__}")
    subs = parser.add_subparsers(dest="command")

    sub = subs.add_parser("bands", help="enumerate allowed bands")
    _add_common(sub)
    _add_window(sub)
    sub.add_argument("--samples", type=int, default=None)
    sub.set_defaults(handler=cmd_bands,
                     builtin_defaults={"emax": 100.0, "tol": 1e-10, "samples": 33, "format": "csv"})

    sub = subs.add_parser("dispersion", help="sample eps_n(q) for each band")
    _add_common(sub)
    _add_window(sub)
    sub.add_argument("--samples", type=int, default=None)
    sub.add_argument("--bands", default=None, help="comma-separated band indices (default all)")
    sub.set_defaults(handler=cmd_dispersion,
                     builtin_defaults={"emax": 100.0, "tol": 1e-10, "samples": 65, "format": "csv"})

    sub = subs.add_parser("dos", help="density of states on an energy grid")
    _add_common(sub)
    _add_window(sub)
    sub.add_argument("--stat", choices=("fermi_dirac", "bose_einstein"), default=None)
    sub.add_argument("--mu", type=float, default=None, help="chemical potential")
    sub.add_argument("--T", type=float, default=None, help="temperature (energy units)")
    sub.set_defaults(handler=cmd_dos,
                     builtin_defaults={"emax": 100.0, "emin": 0.0, "grid": 500, "format": "csv"})

    sub = subs.add_parser("discrete", help="discrete spectrum at the opaque coupling |w1| = 1")
    _add_common(sub)
    sub.add_argument("--count", type=int, default=None)
    sub.add_argument("--tol", type=float, default=None)
    sub.set_defaults(handler=cmd_discrete,
                     builtin_defaults={"count": 5, "tol": 1e-12, "a": 1.0, "format": "csv"})

    sub = subs.add_parser("merge", help="effective couplings of the d -> 0 / d -> a limits")
    _add_common(sub)
    sub.add_argument("--direction", choices=("to_zero", "to_a", "both"), default=None)
    sub.set_defaults(handler=cmd_merge, builtin_defaults={"direction": "both", "format": "csv"})

    sub = subs.add_parser("sweep", help="grid sweeps: band masks, gap widths, curvature maps")
    _add_common(sub)
    _add_window(sub)
    sub.add_argument("--axis1", required=True, help="name:min:max:steps")
    sub.add_argument("--axis2", default=None, help="name:min:max:steps (eps for band_mask)")
    sub.add_argument("--quantity", choices=("band_mask", "gap_widths", "curvature_sign"),
                     required=True)
    sub.add_argument("--band", type=int, default=None, help="band index for curvature_sign")
    sub.set_defaults(handler=cmd_sweep,
                     builtin_defaults={"emax": 100.0, "band": 0, "format": "csv"})

    sub = subs.add_parser("units", help="physical (eV, Angstrom) to dimensionless couplings")
    _add_common(sub, params=False)
    sub.add_argument("--mu", type=float, required=True, help="delta strength, eV*Angstrom")
    sub.add_argument("--lambda", dest="lam", type=float, required=True,
                     help="delta-prime strength, eV*Angstrom**2")
    sub.add_argument("--y0", type=float, required=True, help="lattice spacing, Angstrom")
    sub.add_argument("--mass", type=float, default=None, help="mass in electron masses")
    sub.set_defaults(handler=cmd_units, builtin_defaults={"mass": 1.0, "format": "csv"})

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    if getattr(args, "handler", None) is None:
        parser.print_help()
        return EXIT_PARAM
    try:
        return args.handler(_resolve(args))
    except OpaqueRegime as exc:
        print(f"error: {exc} (try the 'discrete' subcommand)", file=sys.stderr)
        return EXIT_PARAM
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
