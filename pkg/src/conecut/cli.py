"""Command-line interface.

Subcommands:
  verify         run the registered verification suites
  resolve-curve  strict transform of a plane curve under one blow-up
  check-map      adaptedness, rank, and normal-derivative report
  sphere-demo    blown-up sphere vs the projective plane
  groupoid-demo  structure-map axioms and isotropy dimensions
  dnc-demo       deformation-space maps, equivariance, continuity
  euler-demo     Euler-like flow and the tubular embedding
  dnc-ring-demo  exact Laurent model and its two characters

Output is deterministic: the same arguments and seed produce the same
bytes.  Floats are printed with 17 significant digits.  Exit code 0
means all requested checks passed, 1 means a check failed, 2 means the
invocation or an input could not be parsed.

Per-suite tolerance overrides for `verify` are spelled with a dotted
flag, e.g. ``--tol.atlas 1e-9``; these are collected before regular
argument parsing.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from . import verify as vf
from .errors import ConecutError, ParseError
from .expr import finite_diff_jacobian, jet_eval
from .pairs import MapOfPairs, PairDims, check_adapted, check_rank_conditions, normal_derivative
from .parse import parse_expr, parse_map
from .ring import (
    LaurentElement,
    MultiPoly,
    char_xs,
    char_yxi,
    expr_to_poly,
    laurent_mul,
    vanishing_order,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


# -- deterministic serialization --------------------------------------


def _fmt_float(x: float) -> str:
    if x != x:
        return '"nan"'
    if x == float("inf"):
        return '"inf"'
    if x == float("-inf"):
        return '"-inf"'
    return "%.17g" % x


def to_json(obj, indent: int = 0) -> str:
    """Minimal JSON emitter with sorted keys and %.17g floats."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key in sorted(obj, key=str):
            items.append(f'{inner}"{key}": {to_json(obj[key], indent + 1)}')
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)) or isinstance(obj, np.ndarray):
        seq = list(obj.tolist()) if isinstance(obj, np.ndarray) else list(obj)
        if not seq:
            return "[]"
        items = [f"{inner}{to_json(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, Fraction):
        return f'"{obj}"'
    if obj is None:
        return "null"
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _emit(payload, args) -> None:
    if getattr(args, "format", "json") == "csv":
        text = _to_csv(payload)
    else:
        text = to_json(payload) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(payload) -> str:
    """Flat CSV for list-of-dicts payloads (e.g. verify suite rows)."""
    rows = payload.get("suites") if isinstance(payload, dict) else None
    if rows is None:
        rows = payload if isinstance(payload, list) else [payload]
    flat_rows = []
    for row in rows:
        flat = {}
        for key, value in sorted(row.items(), key=lambda kv: str(kv[0])):
            if isinstance(value, dict):
                continue
            if isinstance(value, float):
                flat[key] = "%.17g" % value
            elif isinstance(value, bool):
                flat[key] = "true" if value else "false"
            elif isinstance(value, (list, tuple)):
                flat[key] = ";".join(str(v) for v in value)
            else:
                flat[key] = str(value)
        flat_rows.append(flat)
    headers = sorted({k for row in flat_rows for k in row})
    lines = [",".join(headers)]
    for flat in flat_rows:
        lines.append(",".join(flat.get(h, "") for h in headers))
    return "\n".join(lines) + "\n"


# -- dotted tolerance flags -------------------------------------------


def extract_suite_tols(argv):
    """Pull ``--tol.<suite> <value>`` (or ``=``-joined) out of argv."""
    remaining = []
    overrides = {}
    i = 0
    while i < len(argv):
        token = argv[i]
        if token.startswith("--tol."):
            if "=" in token:
                flag, value = token.split("=", 1)
            else:
                if i + 1 >= len(argv):
                    raise ParseError(f"flag {token} needs a value", 0)
                flag, value = token, argv[i + 1]
                i += 1
            suite = flag[len("--tol.") :]
            if suite not in vf.SUITES:
                raise ParseError(f"unknown suite in {flag}", 0)
            try:
                overrides[suite] = float(value)
            except ValueError:
                raise ParseError(f"bad tolerance for {flag}: {value}", 0)
        else:
            remaining.append(token)
        i += 1
    return remaining, overrides


# -- subcommand implementations ---------------------------------------


def _cmd_verify(args, tol_overrides) -> int:
    names = args.suite or sorted(vf.SUITES)
    for name in names:
        if name not in vf.SUITES:
            print(f"unknown suite: {name}", file=sys.stderr)
            return EXIT_USAGE
    results = []
    for name in sorted(names):
        samples = args.samples if args.samples is not None else vf.DEFAULT_SUITE_SAMPLES[name]
        tol = tol_overrides.get(name, args.tol)
        results.append(vf.SUITES[name](samples=samples, seed=args.seed, tol=tol))
    payload = {
        "seed": args.seed,
        "suites": [r.as_dict() for r in results],
        "all_ok": all(r.ok for r in results),
    }
    _emit(payload, args)
    return EXIT_OK if payload["all_ok"] else EXIT_FAILED


def _poly_from_text(text: str, p: int, q: int, var_names) -> MultiPoly:
    expr = parse_expr(text, var_names)
    return expr_to_poly(expr, p, q)


def _cmd_resolve_curve(args, _tols) -> int:
    from .blowup import strict_transform_curve

    poly = _poly_from_text(args.poly, 0, 2, ["x", "y"])
    strict, roots = strict_transform_curve(poly, args.chart)
    payload = {
        "input": args.poly,
        "chart": args.chart,
        "strict_transform": str(strict),
        "exceptional_roots": [
            {"root": r, "multiplicity": m} for r, m in roots
        ],
    }
    _emit(payload, args)
    return EXIT_OK


def _parse_dims(text: str) -> PairDims:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"dims must be 'n,p': {text}", 0)
    return PairDims(int(parts[0]), int(parts[1]))


def _cmd_check_map(args, _tols) -> int:
    source = _parse_dims(args.source_dims)
    target = _parse_dims(args.target_dims) if args.target_dims else source
    var_names = [f"y{i + 1}" for i in range(source.p)] + [
        f"x{i + 1}" for i in range(source.q)
    ]
    f = parse_map(args.map, source.n, var_names)
    if f.output_dim != target.n:
        print(
            f"map has {f.output_dim} components, target expects {target.n}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    m = MapOfPairs(f, source, target)
    adapted = check_adapted(m, samples=args.samples, seed=args.seed)
    payload = {
        "map": args.map,
        "source_dims": [source.n, source.p],
        "target_dims": [target.n, target.p],
        "adapted": adapted.ok,
        "worst_slice_violation": adapted.worst_violation,
    }
    if adapted.ok:
        y0 = np.zeros(source.p)
        dn = normal_derivative(m, y0)
        ad_vs_fd = float(
            np.max(
                np.abs(
                    jet_eval(f, np.zeros(source.n)).jacobian
                    - finite_diff_jacobian(f, np.zeros(source.n))
                )
            )
        )
        ranks = check_rank_conditions(m, samples=min(args.samples, 256), seed=args.seed)
        payload["normal_derivative_at_0"] = dn
        payload["rank_full"] = ranks.rank_f
        payload["rank_restricted"] = ranks.rank_f_restricted
        payload["rank_normal_derivative"] = ranks.fiberwise_rank_dN
        payload["rank_full_constant"] = ranks.rank_f_constant
        payload["rank_normal_derivative_constant"] = ranks.dN_rank_constant
        payload["ad_fd_residual"] = ad_vs_fd
    _emit(payload, args)
    return EXIT_OK if adapted.ok else EXIT_FAILED


def _suite_demo(name):
    def run(args, tols) -> int:
        samples = args.samples if args.samples is not None else vf.DEFAULT_SUITE_SAMPLES[name]
        result = vf.SUITES[name](
            samples=samples, seed=args.seed, tol=tols.get(name, args.tol)
        )
        _emit(result.as_dict(), args)
        return EXIT_OK if result.ok else EXIT_FAILED

    return run


def _parse_laurent(text: str, p: int, q: int) -> LaurentElement:
    """Parse '(poly)*t^k + ... ' into the exact Laurent model.

    Terms are separated by '+' at parenthesis depth zero.  Each term is
    '(poly)*t^<int>', a bare '(poly)' or poly (no t), or 't^<int>'/'t'.
    An exponent e on t stores the coefficient at filtration key -e.
    """
    var_names = [f"y{i + 1}" for i in range(p)] + [f"x{i + 1}" for i in range(q)]
    terms = []
    depth = 0
    current = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append(current)
            current = ""
        else:
            current += ch
    terms.append(current)
    total = LaurentElement(p, q, {})
    for term in terms:
        term = term.strip()
        if not term:
            raise ParseError("empty term in element", 0)
        poly_text, exponent = term, 0
        if "t^" in term or term.rstrip().endswith("*t") or term == "t":
            star = term.rfind("*t")
            if term == "t":
                poly_text, exponent = "1", 1
            elif term.startswith("t^"):
                poly_text, exponent = "1", int(term[2:])
            elif star >= 0:
                poly_text = term[:star]
                tail = term[star + 2 :]
                exponent = int(tail[1:]) if tail.startswith("^") else 1
        poly = _poly_from_text(poly_text, p, q, var_names)
        total = total + LaurentElement.from_poly(poly, -exponent)
    return total


def _cmd_ring_demo(args, _tols) -> int:
    p, q = args.p, args.q
    element = _parse_laurent(args.element, p, q)
    x_point = [Fraction(1, 2)] * (p + q)
    s_val = Fraction(1, 3)
    y_point = [Fraction(1, 2)] * p
    xi_point = [Fraction(2, 3)] * q
    t = LaurentElement.t_element(p, q)
    payload = {
        "element": str(element),
        "filtration_keys": sorted(element.coeffs),
        "vanishing_orders": {
            str(k): (
                "inf"
                if vanishing_order(f) == float("inf")
                else int(vanishing_order(f))
            )
            for k, f in element.coeffs.items()
        },
        "char_xs_at_half_third": str(char_xs(element, x_point, s_val)),
        "char_yxi_at_half_twothirds": str(char_yxi(element, y_point, xi_point)),
        "times_t": str(laurent_mul(element, t)),
    }
    _emit(payload, args)
    return EXIT_OK


# -- parser wiring -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conecut", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = parser.add_subparsers(dest="command", required=True)
    default_seed = int(os.environ.get("CONECUT_SEED", "42"))

    def common(sp, samples_default=None):
        sp.add_argument("--seed", type=int, default=default_seed)
        sp.add_argument("--samples", type=int, default=samples_default)
        sp.add_argument("--tol", type=float, default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", action="append", help="suite name (repeatable)")
    common(sp)

    sp = sub.add_parser("resolve-curve", help="strict transform of a plane curve")
    sp.add_argument("--poly", required=True, help="polynomial in x, y")
    sp.add_argument("--chart", type=int, choices=[1, 2], default=1)
    common(sp)

    sp = sub.add_parser("check-map", help="adaptedness and rank report")
    sp.add_argument("--map", required=True, help="comma-separated components in y1..,x1..")
    sp.add_argument("--source-dims", required=True, help="n,p of the source pair")
    sp.add_argument("--target-dims", default=None, help="m,p of the target pair")
    common(sp, samples_default=512)

    for name, suite in [
        ("sphere-demo", "sphere"),
        ("groupoid-demo", "groupoid"),
        ("dnc-demo", "dnc"),
        ("euler-demo", "euler"),
    ]:
        sp = sub.add_parser(name, help=f"run the {suite} suite and report")
        common(sp)
        sp.set_defaults(suite_name=suite)

    sp = sub.add_parser("dnc-ring-demo", help="exact Laurent model report")
    sp.add_argument(
        "--element",
        default="(x1*x2)*t^-1 + (y1) + t",
        help="terms '(poly)*t^<k>' joined by '+'",
    )
    sp.add_argument("--p", type=int, default=1, help="number of y variables")
    sp.add_argument("--q", type=int, default=2, help="number of x variables")
    common(sp)
    return parser


_COMMANDS = {
    "verify": _cmd_verify,
    "resolve-curve": _cmd_resolve_curve,
    "check-map": _cmd_check_map,
    "sphere-demo": _suite_demo("sphere"),
    "groupoid-demo": _suite_demo("groupoid"),
    "dnc-demo": _suite_demo("dnc"),
    "euler-demo": _suite_demo("euler"),
    "dnc-ring-demo": _cmd_ring_demo,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        argv, tol_overrides = extract_suite_tols(argv)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.command](args, tol_overrides)
    except (ConecutError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
