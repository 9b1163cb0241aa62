"""Command-line front end: ``mop eval|coeffs|weights|verify|limits|table``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 parameter
pole or invalid index, 4 I/O failure.  Every flag may also come from a JSON
file given with ``--config``; flags on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import limits, verify
from .hahn import InvalidIndexError, MomentRangeError, SingularSystemError
from .hypergeo import HypothesisViolation
from .scalar import DEFAULT_PRECISION, PoleError, format_scalar, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_POLE, EXIT_IO = 0, 1, 2, 3, 4

ENV_PRECISION = "MOP_PRECISION_BITS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser, *, family=True, kind=False, index=False, a=False, params=True, modes=("exact", "float")):
    if family:
        p.add_argument("--family", help="hahn or a family name (JacobiPineiro, MeixnerI, ..., or JP, MI, ...)")
    if kind:
        p.add_argument("--kind", choices=("type1", "type2"))
    if index:
        p.add_argument("--n1", type=int)
        p.add_argument("--n2", type=int)
    if a:
        p.add_argument("--a", type=int, choices=(1, 2), help="weight index")
    if params:
        p.add_argument("--params", help="comma separated name=value pairs, values as p/q")
    p.add_argument("--mode", choices=modes)
    p.add_argument("--precision", type=int, help=f"float precision in bits (env {ENV_PRECISION}, default {DEFAULT_PRECISION})")
    p.add_argument("--config", help="JSON file with default values for any flag")


def _output(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--output", "-o", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mop", description="Hahn-family multiple orthogonal polynomials: evaluation, tables and checks.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a type I or type II polynomial")
    _common(p, kind=True, index=True, a=True)
    p.add_argument("--x", action="append", help="evaluation point (repeatable)")
    p.add_argument("--core", action="store_true", help="type I without the per-weight constant")

    p = sub.add_parser("coeffs", help="tabulate polynomial coefficients")
    _common(p, kind=True, index=True, a=True)
    p.add_argument("--core", action="store_true", help="type I without the per-weight constant")
    _output(p)

    p = sub.add_parser("weights", help="tabulate weight values")
    _common(p, a=True)
    p.add_argument("--x", action="append", help="point (repeatable); default: the finite support")
    _output(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", nargs="?", help=", ".join(verify.SUITES))
    _common(p, modes=("auto", "exact", "float"))
    p.add_argument("--max-order", type=int, dest="max_order")
    p.add_argument("--seed", type=int)
    p.add_argument("--draws", type=int)
    p.add_argument("--max-length", type=int, dest="max_length")
    p.add_argument("--output", "-o", help="write the JSON report here (default: stdout)")

    p = sub.add_parser("limits", help="residuals of a limit route over a parameter sequence")
    p.add_argument("--route", help=", ".join(r.value for r in limits.LimitRoute))
    _common(p, family=False, kind=True, index=True)
    p.add_argument("--sequence", help="comma separated limit parameter values")
    _output(p)

    p = sub.add_parser("table", help="tabulate polynomial values over indexes and points")
    _common(p, kind=True, a=True)
    p.add_argument("--max-order", type=int, dest="max_order")
    p.add_argument("--x", action="append", help="point (repeatable); default: finite support or 0..5")
    p.add_argument("--core", action="store_true", help="type I without the per-weight constant")
    _output(p)
    return parser


_DEFAULTS = {
    "mode": "exact",
    "format": "csv",
    "max_order": 4,
    "seed": 0,
    "draws": 200,
    "max_length": 8,
    "core": False,
}


def _load_config(args) -> None:
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise OSError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        for key, value in data.items():
            key = key.replace("-", "_")
            if not hasattr(args, key):
                raise UsageError(f"config key {key!r} is not a flag of {args.command}")
            current = getattr(args, key)
            if current is None or current is False:
                if key in ("x",) and not isinstance(value, list):
                    value = [value]
                if key == "params" and isinstance(value, dict):
                    value = ",".join(f"{k}={v}" for k, v in value.items())
                setattr(args, key, value)
    if args.command == "verify" and args.mode is None:
        args.mode = "auto"
    for key, value in _DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    if hasattr(args, "precision") and args.precision is None:
        env = os.environ.get(ENV_PRECISION)
        try:
            args.precision = int(env) if env else DEFAULT_PRECISION
        except ValueError as exc:
            raise UsageError(f"{ENV_PRECISION}={env!r} is not an integer") from exc
    if hasattr(args, "precision") and args.precision < 64:
        raise UsageError("precision must be at least 64 bits")


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"{args.command}: missing " + ", ".join("--" + m.replace("_", "-") for m in missing))


def parse_params(text: str | None) -> dict:
    if not text:
        return {}
    out = {}
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not name=value")
        k, v = item.split("=", 1)
        try:
            parse_rational(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc)) from exc
        out[k.strip()] = v.strip()
    return out


def _params(args):
    fam = _family(args)
    values = parse_params(args.params)
    if not values:
        raise UsageError("--params is required")
    return fam, verify.make_family_params(fam, values)


def _family(args) -> str:
    _require(args, "family")
    try:
        key = verify.family_key(args.family)
    except verify.ConfigError as exc:
        raise UsageError(str(exc)) from exc
    if key == "all":
        raise UsageError("--family all is only accepted by verify")
    return key


def _point(text) -> Any:
    try:
        return parse_rational(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from exc


def _digits(bits: int) -> int:
    return max(1, int(bits * math.log10(2)))


def _fmt(value, args) -> str:
    if isinstance(value, (int, Fraction)):
        return format_scalar(value)
    return format_scalar(value, _digits(args.precision))


# ---------------------------------------------------------------------------
# output helpers


def _emit(args, header: Sequence[str], rows: list, meta: dict | None = None) -> None:
    if args.format == "json":
        data = dict(meta or {})
        data["columns"] = list(header)
        data["rows"] = [list(r) for r in rows]
        text = json.dumps(data, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    _write(args.output, text)


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _float_cols(args) -> list:
    return [] if args.mode == "exact" else ["precision_bits"]


def _float_vals(args) -> list:
    return [] if args.mode == "exact" else [str(args.precision)]


# ---------------------------------------------------------------------------
# commands


def _polys(args, fam, params, idx):
    """``[(label, poly)]`` for the requested kind (and weight index)."""
    if args.kind == "type2":
        return [(None, verify.type2_of(fam, idx, params))]
    pair = verify.type1_of(fam, idx, params, args.mode, args.precision, core=args.core)
    parts = (args.a,) if args.a else (1, 2)
    return [(a, pair[a]) for a in parts]


def cmd_eval(args) -> int:
    _require(args, "kind", "n1", "n2", "x")
    fam, params = _params(args)
    if args.kind == "type1" and args.a is None:
        raise UsageError("eval --kind type1 needs --a")
    idx = (args.n1, args.n2)
    pts = [_point(x) for x in args.x]
    (_, poly), = _polys(args, fam, params, idx)
    for x in pts:
        v = poly(x)
        if args.mode == "float" and isinstance(v, (int, Fraction)):
            v = verify.FloatArith(args.precision).num(v)
        sys.stdout.write(_fmt(v, args) + "\n")
    return EXIT_OK


def cmd_coeffs(args) -> int:
    _require(args, "kind", "n1", "n2")
    fam, params = _params(args)
    idx = (args.n1, args.n2)
    polys = _polys(args, fam, params, idx)
    rows = []
    for a, poly in polys:
        for l, c in enumerate(poly.coeffs):
            rows.append(([str(a)] if len(polys) > 1 else []) + [str(l), _fmt(c, args)] + _float_vals(args))
    header = (["a"] if len(polys) > 1 else []) + ["l", "coefficient"] + _float_cols(args)
    basis = "(-x)_l" if verify.is_discrete(fam) else "x^l"
    _emit(args, header, rows, {"family": fam, "kind": args.kind, "index": list(idx), "basis": basis})
    return EXIT_OK


def cmd_weights(args) -> int:
    _require(args, "a")
    fam, params = _params(args)
    if args.x:
        pts = [_point(x) for x in args.x]
    else:
        support = verify.finite_support(fam, params)
        if support is None:
            raise UsageError(f"{fam} has infinite support; give points with --x")
        pts = list(support)
    rows = [[format_scalar(x), _fmt(verify.weight_of(fam, args.a, x, params, args.mode, args.precision), args)] + _float_vals(args) for x in pts]
    _emit(args, ["x", "weight"] + _float_cols(args), rows, {"family": fam, "a": args.a})
    return EXIT_OK


def cmd_verify(args) -> int:
    _require(args, "suite")
    if args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}")
    fam = verify.family_key(args.family) if args.family else "hahn"
    values = parse_params(args.params) or None
    if values:
        verify.make_family_params(fam, values)  # fail early on a bad parameter set
    cfg = verify.SuiteConfig(
        suite=args.suite,
        family=fam,
        max_order=args.max_order,
        params=values,
        mode=args.mode,
        precision=args.precision,
        seed=args.seed,
        draws=args.draws,
        max_length=args.max_length,
    )
    try:
        cfg.validate()
    except verify.ConfigError as exc:
        raise UsageError(str(exc)) from exc
    report = verify.run_suite(cfg)
    if args.output:
        _write(args.output, report.to_json())
        sys.stdout.write(report.render() + "\n")
    else:
        sys.stdout.write(report.to_json())
        sys.stderr.write(report.render() + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_limits(args) -> int:
    _require(args, "route", "kind", "n1", "n2")
    try:
        route = limits.LimitRoute.parse(args.route)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    default_params, default_seq = limits.LIMIT_DEFAULTS[route]
    target = limits.ROUTES[route].target
    values = parse_params(args.params)
    params = verify.make_family_params(target.value, values) if values else default_params
    seq = [_point(v) for v in args.sequence.split(",")] if args.sequence else list(default_seq)
    idx = (args.n1, args.n2)
    rows, residuals = [], []
    for v in seq:
        r = limits.limit_residual(route, idx, v, params, args.kind, None, args.precision)
        residuals.append(r)
        rows.append([format_scalar(v), format_scalar(r, _digits(args.precision)), str(args.precision)])
    meta = {"route": route.value, "kind": args.kind, "index": list(idx)}
    if len(seq) >= 3:
        try:
            rec = limits.convergence_study(route, idx, seq, params, args.kind, None, args.precision)
            meta["order"] = None if rec.order is None else format_scalar(rec.order, 12)
        except ValueError:
            meta["order"] = None
    _emit(args, [limits.ROUTES[route].param_name, "residual", "precision_bits"], rows, meta)
    return EXIT_OK


def cmd_table(args) -> int:
    _require(args, "kind")
    fam, params = _params(args)
    if args.x:
        pts = [_point(x) for x in args.x]
    else:
        support = verify.finite_support(fam, params)
        pts = list(support) if support is not None else [Fraction(k) for k in range(6)]
    top = args.max_order
    if verify.finite_support(fam, params) is not None:
        top = min(top, params.N)
    rows = []
    for total in range(top + 1):
        for n1 in range(total, -1, -1):
            idx = (n1, total - n1)
            if args.kind == "type1" and total == 0:
                continue
            for a, poly in _polys(args, fam, params, idx):
                for x in pts:
                    v = poly(x)
                    rows.append([str(idx[0]), str(idx[1])] + ([str(a)] if a else []) + [format_scalar(x), _fmt(v, args)] + _float_vals(args))
    header = ["n1", "n2"] + (["a"] if args.kind == "type1" else []) + ["x", "value"] + _float_cols(args)
    _emit(args, header, rows, {"family": fam, "kind": args.kind})
    return EXIT_OK


_COMMANDS = {
    "eval": cmd_eval,
    "coeffs": cmd_coeffs,
    "weights": cmd_weights,
    "verify": cmd_verify,
    "limits": cmd_limits,
    "table": cmd_table,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing command; choose from " + ", ".join(_COMMANDS))
        _load_config(args)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"mop: usage error: {exc}\n")
        return EXIT_USAGE
    except verify.ExactUnavailable as exc:
        sys.stderr.write(f"mop: usage error: {exc}\n")
        return EXIT_USAGE
    except verify.ConfigError as exc:
        sys.stderr.write(f"mop: usage error: {exc}\n")
        return EXIT_USAGE
    except (PoleError, SingularSystemError, InvalidIndexError, MomentRangeError, HypothesisViolation) as exc:
        sys.stderr.write(f"mop: pole or invalid index: {exc}\n")
        return EXIT_POLE
    except OSError as exc:
        sys.stderr.write(f"mop: I/O error: {exc}\n")
        return EXIT_IO
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        # parameter outside its domain, point outside the support, etc.
        sys.stderr.write(f"mop: invalid parameters: {exc}\n")
        return EXIT_POLE


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
