"""Command line front end.

    chargedhh basis    --s 2 --charge 2 --max-degree 4
    chargedhh hh       --s 2 --r 1 --charge 2 --max-degree 9 --format json
    chargedhh poincare --target hom-u2 --s 3 --r 1
    chargedhh verify   --suite all

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 truncation
too small for a reliable answer.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import paths
from .checks import SUITES, run_suite
from .poincare import ABSOLUTE, COMODULE, Series, format_poly, p_rep_f2, p_u2

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3
DEFAULT_MAX_DEGREE = 8
TARGETS = ("hom-u2", "rep-f2-u2")


class UsageError(Exception):
    pass


class TruncationError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chargedhh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, charge=True):
        p.add_argument("--s", type=int, default=None, help="rank of the free group F_s")
        p.add_argument("--r", type=int, default=0, help="rank of the torus factor Z^r")
        if charge:
            p.add_argument("--charge", type=int, default=2, choices=(0, 1, 2))
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("basis", help="quotient dimensions of kdef(F_s)")
    common(p)
    p.add_argument("--show-basis", action="store_true", help="list the reduced basis monomials")

    p = sub.add_parser("hh", help="iterated Hochschild homology dimensions")
    common(p)
    p.add_argument("--method", choices=paths.METHODS, default="complex")

    p = sub.add_parser("poincare", help="closed-form Poincaré polynomials")
    common(p, charge=False)
    p.add_argument("--target", choices=TARGETS, default="hom-u2")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--format", choices=("json", "table"), default="table")
    return parser


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _dims_json(series: Series) -> dict[str, str]:
    return {str(n): str(c) for n, c in enumerate(series.coeffs)}


def _need_s(args) -> int:
    if args.s is None:
        raise UsageError("--s is required")
    if args.s < 0:
        raise UsageError("--s must be non-negative")
    return args.s


def _check_bounds(args) -> int:
    if args.r < 0:
        raise UsageError("--r must be non-negative")
    d = DEFAULT_MAX_DEGREE if args.max_degree is None else args.max_degree
    if d < 0:
        raise UsageError("--max-degree must be non-negative")
    return d


def cmd_basis(args) -> tuple[dict, list[str]]:
    s = _need_s(args)
    D = _check_bounds(args)
    alg = paths.kdef(s)
    c = args.charge
    series = Series([alg.quotient_dim(d, c) for d in range(D + 1)], D, ABSOLUTE)
    report = {
        "config": {"command": "basis", "s": s, "charge": c, "max_degree": D},
        "convention": ABSOLUTE,
        "dims": _dims_json(series),
        "series": series.to_json(),
        "warnings": [],
    }
    lines = [f"basis  s={s} charge={c} max_degree={D}"]
    if args.show_basis:
        report["basis"] = {}
    for d in range(D + 1):
        lines.append(f"(d={d},c={c}): dim {series.int_coeffs()[d]}")
        if args.show_basis:
            monos = [str(m) for m in alg.presentation.basis(d, c)]
            report["basis"][str(d)] = monos
            lines.extend(f"    {m}" for m in monos)
    return report, lines


def cmd_hh(args) -> tuple[dict, list[str]]:
    s = _need_s(args)
    D = _check_bounds(args)
    c, r, method = args.charge, args.r, args.method
    if method == "closed-form" and c != 2:
        raise UsageError("--method closed-form needs --charge 2")
    series, warnings = paths.dims(method, s, r, c, D)
    report = {
        "config": {"command": "hh", "s": s, "r": r, "charge": c, "max_degree": D, "method": method},
        "convention": ABSOLUTE,
        "dims": _dims_json(series),
        "series": series.to_json(),
        "warnings": list(warnings),
    }
    lines = [f"hh  s={s} r={r} charge={c} max_degree={D} method={method}"]
    lines += [f"(d={d},c={c}): dim {n}" for d, n in enumerate(series.int_coeffs())]
    lines.append(f"absolute: {format_poly(series)} + O(t^{D + 1})")
    if c == 2:
        como = paths.comodule_series(series)
        report["comodule"] = como.to_json()
        lines.append(f"comodule: {format_poly(como)} + O(t^{D + 1})")
        lines.append("absolute = comodule / ((1-t^2)(1-t^4))")
    lines += [f"warning: {w}" for w in warnings]
    if warnings:
        raise TruncationError((report, lines))
    return report, lines


def cmd_poincare(args) -> tuple[dict, list[str]]:
    if args.r < 0:
        raise UsageError("--r must be non-negative")
    if args.target == "rep-f2-u2":
        if args.s is not None and args.s != 2:
            raise UsageError("the rep-f2-u2 target is only defined for s = 2")
        s, convention = 2, ABSOLUTE
        poly = p_rep_f2(args.r)
    else:
        s, convention = _need_s(args), COMODULE
        poly = p_u2(s, args.r)
    top = poly.degree()
    if args.max_degree is not None:
        if args.max_degree < 0:
            raise UsageError("--max-degree must be non-negative")
        if args.max_degree < top:
            raise TruncationError(f"--max-degree {args.max_degree} is below the polynomial degree {top}")
    poly = Series(poly.coeffs, max(top, 0), convention)
    report = {
        "config": {"command": "poincare", "s": s, "r": args.r, "target": args.target},
        "convention": convention,
        "dims": _dims_json(poly),
        "series": poly.to_json(),
        "warnings": [],
    }
    lines = [f"poincare  target={args.target} s={s} r={args.r} ({convention})", format_poly(poly)]
    return report, lines


def cmd_verify(args) -> int:
    results = run_suite(args.suite)
    failed = [res for res in results if not res.ok]
    if args.format == "json":
        print(
            canonical_json(
                {
                    "config": {"command": "verify", "suite": args.suite},
                    "results": [
                        {"name": res.name, "anchor": res.anchor, "ok": res.ok, "detail": res.detail} for res in results
                    ],
                }
            )
        )
    else:
        for res in results:
            print(res.line())
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print(f"first failure: {failed[0].name} {failed[0].detail}".rstrip(), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


COMMANDS = {"basis": cmd_basis, "hh": cmd_hh, "poincare": cmd_poincare}


def _emit(args, report, lines, elapsed) -> None:
    if args.format == "json":
        print(canonical_json(report))
    else:
        print("\n".join(lines))
        print(f"time: {elapsed:.3f}s")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args)
    start = time.perf_counter()
    try:
        report, lines = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"chargedhh {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TruncationError as exc:
        payload = exc.args[0]
        if isinstance(payload, tuple):
            _emit(args, *payload, time.perf_counter() - start)
        else:
            print(f"chargedhh {args.command}: error: {payload}", file=sys.stderr)
        return EXIT_TRUNCATION
    _emit(args, report, lines, time.perf_counter() - start)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
