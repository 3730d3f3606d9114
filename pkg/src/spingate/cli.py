"""Command-line interface.

Subcommands:
  evolve    time series of probabilities, spins, and energy after switch-on
  fig1      field sweeps of the switching metrics over several repulsions
  sweep     field sweep at a single repulsion ratio
  optimize  optimal-field search at one repulsion ratio (JSON output)
  convert   dimensionless time and field to seconds and Tesla (JSON output)

CSV values carry up to 12 significant digits; given the same flags the
emitted bytes are identical from run to run.  Exit codes: 0 success, 1 a
sweep finished but some grid points failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .evolution import evolve_series, prepare_state
from .model import SZ_A, SZ_B, ModelParams, build_hamiltonian
from .switching import (
    BracketError,
    PhysicalUnits,
    field_in_tesla,
    optimize_field,
    sweep_field,
    time_in_seconds,
)

EVOLVE_HEADER = "t,p1,p2,p3,p4,p5,p6,s_za,s_zb,energy"
SWEEP_HEADER = "u_over_v,h_over_v,t0,s_za_at_t0,p_err,status"
DEFAULT_U_LIST = (0.0, 1.0, 2.0, 5.0, 10.0)


class _UsageError(Exception):
    pass


def _fmt(x) -> str:
    return format(float(x), ".12g")


def _jsonable(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _write(out_path, text: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _finite(name: str, value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise _UsageError(f"{name} must be finite")
    return value


def _positive(name: str, value) -> float:
    value = _finite(name, value)
    if value <= 0.0:
        raise _UsageError(f"{name} must be > 0")
    return value


def _repulsion(name: str, value) -> float:
    value = _finite(name, value)
    if value < 0.0:
        raise _UsageError(f"{name} must be >= 0")
    return value


def _output_flags(sub) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="output format (default csv)")
    sub.add_argument("--out", default=None, metavar="PATH",
                     help="write to PATH instead of stdout")


def _grid_flags(sub) -> None:
    sub.add_argument("--h-min", type=float, default=0.05, help="first field value")
    sub.add_argument("--h-max", type=float, default=6.0, help="last field value")
    sub.add_argument("--h-step", type=float, default=0.05, help="field spacing")
    sub.add_argument("--t-max", type=float, default=None,
                     help="scan horizon per point (default: automatic)")


def _unit_flags(sub, *, required: bool) -> None:
    sub.add_argument("--v-mev", type=float, default=None, required=required,
                     help="tunneling energy in meV")
    sub.add_argument("--g", type=float, default=2.0, help="Lande g factor (default 2)")


def _field_grid(args) -> list:
    h_min = _positive("--h-min", args.h_min)
    h_max = _positive("--h-max", args.h_max)
    h_step = _positive("--h-step", args.h_step)
    if h_max < h_min:
        raise _UsageError("--h-max must be >= --h-min")
    count = int(math.floor((h_max - h_min) / h_step + 1e-9)) + 1
    return [h_min + k * h_step for k in range(count)]


def _horizon(args):
    if args.t_max is None:
        return None
    return _positive("--t-max", args.t_max)


def _units(args) -> PhysicalUnits:
    try:
        return PhysicalUnits(v_mev=args.v_mev, g_factor=args.g)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _emit_sweep(rows, fmt: str, out_path) -> int:
    if fmt == "csv":
        lines = [SWEEP_HEADER]
        for r in rows:
            lines.append(",".join((
                _fmt(r.u_over_v), _fmt(r.h_over_v), _fmt(r.t0),
                _fmt(r.s_za_at_t0), _fmt(r.p_err), r.status,
            )))
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text([
            {
                "u_over_v": r.u_over_v,
                "h_over_v": r.h_over_v,
                "t0": _jsonable(r.t0),
                "s_za_at_t0": _jsonable(r.s_za_at_t0),
                "p_err": _jsonable(r.p_err),
                "status": r.status,
            }
            for r in rows
        ])
    _write(out_path, text)
    return 0 if all(r.status == "ok" for r in rows) else 1


def cmd_evolve(args) -> int:
    u = _repulsion("--u-over-v", args.u_over_v)
    h = _finite("--h-over-v", args.h_over_v)
    t_max = _positive("--t-max", args.t_max)
    dt_out = _positive("--dt-out", args.dt_out)
    params = ModelParams(v=1.0, u=u, h_a=h)
    state = prepare_state(params)
    count = int(math.floor(t_max / dt_out + 1e-9)) + 1
    times = dt_out * np.arange(count)
    amps = evolve_series(state, times)
    probs = np.abs(amps) ** 2
    s_za = probs @ SZ_A
    s_zb = probs @ SZ_B
    hmat = build_hamiltonian(params).astype(complex)
    energy = np.einsum("ti,ij,tj->t", np.conj(amps), hmat, amps).real
    columns = np.column_stack([times, probs, s_za, s_zb, energy])
    if args.format == "csv":
        lines = [EVOLVE_HEADER]
        lines.extend(",".join(_fmt(cell) for cell in row) for row in columns)
        text = "\n".join(lines) + "\n"
    else:
        keys = EVOLVE_HEADER.split(",")
        text = _json_text([
            dict(zip(keys, (float(cell) for cell in row))) for row in columns
        ])
    _write(args.out, text)
    return 0


def cmd_fig1(args) -> int:
    grid = _field_grid(args)
    t_max = _horizon(args)
    rows = []
    for u in args.u_over_v:
        rows.extend(sweep_field(_repulsion("--u-over-v", u), grid, t_max=t_max))
    return _emit_sweep(rows, args.format, args.out)


def cmd_sweep(args) -> int:
    grid = _field_grid(args)
    u = _repulsion("--u-over-v", args.u_over_v)
    rows = sweep_field(u, grid, t_max=_horizon(args))
    return _emit_sweep(rows, args.format, args.out)


def cmd_optimize(args) -> int:
    u = _repulsion("--u-over-v", args.u_over_v)
    if (args.h_min is None) != (args.h_max is None):
        raise _UsageError("--h-min and --h-max must be given together")
    bracket = None
    if args.h_min is not None:
        lo = _positive("--h-min", args.h_min)
        hi = _positive("--h-max", args.h_max)
        if hi <= lo:
            raise _UsageError("--h-max must be > --h-min")
        bracket = (lo, hi)
    try:
        report = optimize_field(u, bracket)
    except BracketError as exc:
        raise _UsageError(str(exc)) from exc
    payload = {
        "u_over_v": report.u_over_v,
        "h_opt_over_v": report.h_over_v,
        "t0": report.t0,
        "s_za_at_t0": report.s_za_at_t0,
        "p_err": report.p_err,
        "status": report.status,
    }
    if args.v_mev is not None:
        units = _units(args)
        payload["t0_seconds"] = time_in_seconds(report.t0, units)
        payload["h_a_tesla"] = field_in_tesla(report.h_over_v, units)
    _write(args.out, _json_text(payload))
    return 0


def cmd_convert(args) -> int:
    units = _units(args)
    t0 = _finite("--t0", args.t0)
    if t0 < 0.0:
        raise _UsageError("--t0 must be >= 0")
    h = _finite("--h-over-v", args.h_over_v)
    payload = {
        "t0": t0,
        "h_over_v": h,
        "v_mev": units.v_mev,
        "g_factor": units.g_factor,
        "t0_seconds": time_in_seconds(t0, units),
        "h_a_tesla": field_in_tesla(h, units),
    }
    _write(args.out, _json_text(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spingate",
        description="Unitary switching dynamics of a two-dot spin inverter.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    evolve_p = sub.add_parser("evolve", help="time series after the field switches on")
    evolve_p.add_argument("--u-over-v", type=float, default=0.0, help="repulsion U/V")
    evolve_p.add_argument("--h-over-v", type=float, default=0.0,
                          help="field H_A/V applied at t = 0")
    evolve_p.add_argument("--t-max", type=float, default=20.0, help="time horizon")
    evolve_p.add_argument("--dt-out", type=float, default=0.02, help="row spacing")
    _output_flags(evolve_p)
    evolve_p.set_defaults(handler=cmd_evolve)

    fig1_p = sub.add_parser("fig1", help="switching metrics over field sweeps")
    fig1_p.add_argument("--u-over-v", type=float, nargs="+",
                        default=list(DEFAULT_U_LIST), metavar="U",
                        help="repulsion ratios, one sweep each")
    _grid_flags(fig1_p)
    _output_flags(fig1_p)
    fig1_p.set_defaults(handler=cmd_fig1)

    sweep_p = sub.add_parser("sweep", help="field sweep at one repulsion ratio")
    sweep_p.add_argument("--u-over-v", type=float, default=0.0, help="repulsion U/V")
    _grid_flags(sweep_p)
    _output_flags(sweep_p)
    sweep_p.set_defaults(handler=cmd_sweep)

    opt_p = sub.add_parser("optimize", help="optimal-field search at one repulsion")
    opt_p.add_argument("--u-over-v", type=float, default=0.0, help="repulsion U/V")
    opt_p.add_argument("--h-min", type=float, default=None, help="bracket low edge")
    opt_p.add_argument("--h-max", type=float, default=None, help="bracket high edge")
    _unit_flags(opt_p, required=False)
    opt_p.add_argument("--out", default=None, metavar="PATH",
                       help="write to PATH instead of stdout")
    opt_p.set_defaults(handler=cmd_optimize)

    conv_p = sub.add_parser("convert", help="dimensionless results to lab units")
    conv_p.add_argument("--t0", type=float, required=True, help="time in hbar/V units")
    conv_p.add_argument("--h-over-v", type=float, required=True, help="field in V units")
    _unit_flags(conv_p, required=True)
    conv_p.add_argument("--out", default=None, metavar="PATH",
                        help="write to PATH instead of stdout")
    conv_p.set_defaults(handler=cmd_convert)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    raise SystemExit(main())
