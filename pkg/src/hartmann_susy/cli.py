"""Command-line interface: ``hartmann-susy {spectrum,wavefunction,validate,potential}``.

Exit codes: 0 success, 1 failed validation check, 2 bad flags or quantum numbers.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys

import numpy as np

from . import __version__
from .model import (
    HartmannParams,
    UnitSystem,
    derive_quantum_numbers,
    potential_value,
    radial_wavefunction,
    spectrum,
)
from .quasipoly import DomainError, QuasiPolyError, qp_shift_power
from .susy import InvalidQuantumNumbers, energy_internal
from .validation import run_validation


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not (x > 0 and math.isfinite(x)):
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return x


def _non_negative_int(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return k


def _count(text: str) -> int:
    k = _non_negative_int(text)
    if k < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return k


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _emit(command: str, params: dict, rows: list[dict], fmt: str, meta: bool, extra: dict | None = None) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        if meta:
            buf.write(f"# hartmann-susy {__version__} python {platform.python_version()} {command}\n")
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({k: _fmt(v) for k, v in row.items()})
        return buf.getvalue()
    doc = {"command": command, "params": params, "results": rows}
    if extra:
        doc.update(extra)
    if meta:
        doc["meta"] = {"package": "hartmann-susy", "version": __version__, "python": platform.python_version()}
    return json.dumps(doc, indent=2, allow_nan=True) + "\n"


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eta", type=_positive, required=True)
    p.add_argument("--sigma", type=_positive, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--meta", action="store_true", help="add a provenance header")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hartmann-susy", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="bound-state energies")
    _add_common(sp)
    sp.add_argument("--m-min", type=int, default=0)
    sp.add_argument("--m-max", type=int, default=0)
    sp.add_argument("--max-excitation", type=_non_negative_int, default=2)
    sp.add_argument("--units", choices=("internal", "epsilon0"), default="internal")

    wf = sub.add_parser("wavefunction", help="radial function R = u/r")
    _add_common(wf)
    wf.add_argument("--m", type=int, default=0)
    wf.add_argument("--nu", type=int, default=0)
    wf.add_argument("--nprime", type=int, default=0)
    wf.add_argument("--r-max", type=_positive, default=None, help="default 30 N / gamma")
    wf.add_argument("--samples", type=_count, default=201)
    wf.add_argument("--emit", choices=("symbolic", "samples", "both"), default="both")

    va = sub.add_parser("validate", help="algebraic and finite-difference checks")
    _add_common(va)
    va.add_argument("--m", type=int, nargs="+", default=[0])
    va.add_argument("--max-n", type=_count, default=4)
    va.add_argument("--grid-n", type=int, default=6000)
    va.add_argument("--r-max", type=_positive, default=None)
    va.add_argument("--suite", choices=("algebra", "numeric", "all"), default="all")
    va.add_argument("--inject-error", action="store_true", help="corrupt one state (harness self-test)")

    po = sub.add_parser("potential", help="sample V(r, theta)")
    _add_common(po)
    po.add_argument("--r-max", type=_positive, default=20.0)
    po.add_argument("--theta", type=float, default=math.pi / 2)
    po.add_argument("--samples", type=_count, default=200)
    return parser


def cmd_spectrum(args) -> tuple[str, int]:
    if args.m_min > args.m_max:
        raise UsageError("argument --m-min: must not exceed --m-max")
    p = HartmannParams(args.eta, args.sigma)
    rows = []
    for e in spectrum(p, UnitSystem(), (args.m_min, args.m_max), args.max_excitation):
        q = e.qn
        rows.append(
            {
                "m": q.m,
                "nu_prime": q.nu,
                "n_prime": q.nprime,
                "M_abs": q.M_abs,
                "L": q.L,
                "N": q.N,
                "E_internal": e.energy_internal,
                "E_over_eps0": e.energy_over_eps0,
            }
        )
    if args.format == "json":
        key = "E_internal" if args.units == "internal" else "E_over_eps0"
        for row in rows:
            row["energy"] = row[key]
    params = {
        "eta": args.eta,
        "sigma": args.sigma,
        "gamma": p.gamma,
        "m_min": args.m_min,
        "m_max": args.m_max,
        "max_excitation": args.max_excitation,
        "units": args.units,
    }
    return _emit("spectrum", params, rows, args.format, args.meta), 0


def cmd_wavefunction(args) -> tuple[str, int]:
    p = HartmannParams(args.eta, args.sigma)
    qn = derive_quantum_numbers(p, args.m, args.nu, args.nprime)
    R = radial_wavefunction(p, UnitSystem(), qn)
    u = qp_shift_power(R, 1)
    params = {
        "eta": args.eta,
        "sigma": args.sigma,
        "gamma": p.gamma,
        "m": qn.m,
        "nu_prime": qn.nu,
        "n_prime": qn.nprime,
        "M_abs": qn.M_abs,
        "L": qn.L,
        "N": qn.N,
        "E_internal": energy_internal(qn.N, p.gamma),
        "length_unit": "a0",
    }
    rows = []
    if args.emit in ("samples", "both"):
        r_max = args.r_max or 30.0 * qn.N / p.gamma
        r = np.linspace(0.0, r_max, args.samples)
        for ri, Ri, ui in zip(r, R(r), u(r)):
            rows.append({"r": float(ri), "R": float(Ri), "u": float(ui)})
    extra = None
    if args.emit in ("symbolic", "both"):
        extra = {"symbolic": {"u": u.to_json(), "R": R.to_json()}}
        if args.format == "csv":
            raise UsageError("argument --emit: symbolic output needs --format json")
    return _emit("wavefunction", params, rows, args.format, args.meta, extra), 0


def cmd_validate(args) -> tuple[str, int]:
    p = HartmannParams(args.eta, args.sigma)
    if args.grid_n < 16:
        raise UsageError("argument --grid-n: must be >= 16")
    results = run_validation(p, args.m, args.max_n, args.suite, args.grid_n, args.r_max, args.inject_error)
    rows = [r.as_dict() for r in results]
    ok = all(r.passed for r in results)
    params = {
        "eta": args.eta,
        "sigma": args.sigma,
        "gamma": p.gamma,
        "m": args.m,
        "max_n": args.max_n,
        "grid_n": args.grid_n,
        "r_max": args.r_max,
        "suite": args.suite,
        "inject_error": args.inject_error,
    }
    extra = {"passed": ok, "n_checks": len(rows), "n_failed": sum(not r.passed for r in results)}
    return _emit("validate", params, rows, args.format, args.meta, extra), (0 if ok else 1)


def cmd_potential(args) -> tuple[str, int]:
    p = HartmannParams(args.eta, args.sigma)
    if abs(math.sin(args.theta)) <= 1e-9:
        raise UsageError(f"argument --theta: {args.theta} lies on the barrier axis (theta = 0 or pi)")
    units = UnitSystem()
    rows = []
    for i in range(1, args.samples + 1):
        r = args.r_max * i / args.samples
        rows.append({"r": r, "V": potential_value(p, units, r, args.theta)})
    params = {"eta": args.eta, "sigma": args.sigma, "theta": args.theta, "r_max": args.r_max}
    return _emit("potential", params, rows, args.format, args.meta), 0


COMMANDS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "validate": cmd_validate,
    "potential": cmd_potential,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hartmann-susy: error: {exc}", file=sys.stderr)
        return 2
    except (InvalidQuantumNumbers, DomainError, QuasiPolyError) as exc:
        print(f"hartmann-susy: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
