"""Command-line front end: ``morrey {norm,modulus,verify,mollify,gen}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 data error (missing or malformed input).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .grid import GridError
from .io import ParseError, read_function, write_function
from .mollifier import approximation_curve
from .norm import CENTER_POLICIES, MorreyParams, morrey_norm, use_oracle, vanishing_modulus
from .verify.battery import KINDS, generate
from .verify.checks import UnknownCheck, run_suite
from .verify.report import dumps, fmt_float, reports_to_csv, reports_to_json
from .weights import WeightError, parse_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _extended(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if math.isnan(x):
        raise argparse.ArgumentTypeError("NaN is not allowed")
    return x


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morrey", description=__doc__.splitlines()[0])
    ap.add_argument("--oracle", action="store_true", help="use the brute-force norm implementation")
    sub = ap.add_subparsers(dest="command", required=True)

    def norm_args(sp, rho_required=False):
        sp.add_argument("--in", dest="input", required=True, help="MGF1 binary or CSV grid function")
        sp.add_argument("--weight", required=True, help="power:L | trunc:L:RHO | capped:L | table:path.csv")
        sp.add_argument("--p", type=_extended, required=True, help="exponent in [1, inf]")
        sp.add_argument("--center-policy", choices=CENTER_POLICIES, default="mask")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("norm", help="Morrey norm of a grid function (JSON)")
    norm_args(sp)
    sp.add_argument("--rho", type=_extended, default=math.inf)

    sp = sub.add_parser("modulus", help="vanishing modulus curve rho -> norm (CSV)")
    norm_args(sp)
    sp.add_argument("--rho-samples", type=_float_list, required=True, help="ascending, comma separated")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("verify", help="run named inequality checks")
    sp.add_argument("--suite", default="all", help="'all' or comma-separated check ids")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--size", type=int, default=512)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--out")

    sp = sub.add_parser("mollify", help="mollifier approximation curve (CSV)")
    norm_args(sp)
    sp.add_argument("--eps", type=_float_list, required=True, help="descending multiples of h")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("gen", help="write a battery fixture")
    sp.add_argument("--kind", required=True, help=", ".join(KINDS))
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--size", type=int, default=512)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=("binary", "csv"), default="binary")
    return ap


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}
    return {k: (fmt_float(v) if isinstance(v, float) and not math.isfinite(v) else v) for k, v in cfg.items()}


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _params(args, rho=math.inf) -> MorreyParams:
    if not args.p >= 1:
        raise UsageError(f"p must be in [1, inf], got {args.p}")
    if not rho > 0:
        raise UsageError(f"rho must be > 0, got {rho}")
    return MorreyParams(args.p, parse_weight(args.weight), rho)


def _csv_table(config: dict, header, rows) -> str:
    out = io.StringIO()
    out.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) for v in row])
    return out.getvalue()


def cmd_norm(args) -> int:
    params = _params(args, args.rho)
    f = read_function(args.input)
    res = morrey_norm(f, params, args.center_policy)
    _emit(dumps({"config": _config(args), "result": res.as_dict()}), args.out)
    return EXIT_OK


def cmd_modulus(args) -> int:
    rhos = args.rho_samples
    if not rhos:
        raise UsageError("no rho samples given")
    if any(b < a for a, b in zip(rhos[:-1], rhos[1:])):
        raise UsageError("rho samples must be ascending")
    params = _params(args, rhos[-1])
    f = read_function(args.input)
    curve = vanishing_modulus(f, params, rhos, args.center_policy)
    if args.format == "json":
        doc = {"config": _config(args), "curve": [{"rho": r, "value": v} for r, v in curve]}
        _emit(dumps(doc), args.out)
    else:
        _emit(_csv_table(_config(args), ("rho", "value"), curve), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.n < 1 or args.size < 8:
        raise UsageError("need n >= 1 and size >= 8")
    try:
        reports, summary = run_suite(args.suite, seed=args.seed, n=args.n, size=args.size)
    except UnknownCheck as exc:
        raise UsageError(f"unknown check id(s): {exc.args[0]}") from None
    cfg = _config(args)
    text = reports_to_json(reports, cfg) if args.format == "json" else (
        "# config: " + json.dumps(cfg, sort_keys=True) + "\n" + reports_to_csv(reports))
    _emit(text, args.out)
    return EXIT_OK if summary["ok"] else EXIT_FAIL


def cmd_mollify(args) -> int:
    eps = args.eps
    if not eps:
        raise UsageError("no eps samples given")
    if any(b > a for a, b in zip(eps[:-1], eps[1:])):
        raise UsageError("eps samples must be descending")
    params = _params(args)
    f = read_function(args.input)
    h = f.domain.spacing
    for e in eps:
        steps = e / h
        if steps < 1 - 1e-9:
            raise UsageError(f"eps {e} is below the grid spacing {h}")
        if abs(steps - round(steps)) > 1e-9 * steps:
            raise UsageError(f"eps {e} is not a multiple of the grid spacing {h}")
    if not f.domain.full:
        raise GridError("mollification needs a function on a full-mask grid")
    rows = approximation_curve(f, params, eps)
    if args.format == "json":
        doc = {"config": _config(args),
               "curve": [{"eps": e, "morrey_err": m, "lp_err": l} for e, m, l in rows]}
        _emit(dumps(doc), args.out)
    else:
        _emit(_csv_table(_config(args), ("eps", "morrey_err", "lp_err"), rows), args.out)
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind not in KINDS:
        raise UsageError(f"unknown kind {args.kind!r}; choose from {', '.join(KINDS)}")
    if args.n < 1 or args.size < 1:
        raise UsageError("need n >= 1 and size >= 1")
    f = generate(args.kind, args.n, args.size, args.seed)
    write_function(f, args.out, args.format)
    return EXIT_OK


COMMANDS = {"norm": cmd_norm, "modulus": cmd_modulus, "verify": cmd_verify,
            "mollify": cmd_mollify, "gen": cmd_gen}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    if args.oracle:
        use_oracle(True)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, WeightError) as exc:
        print(f"morrey: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ParseError, GridError) as exc:
        print(f"morrey: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"morrey: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.oracle:
            use_oracle(False)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
