"""Command-line entry point.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
3 a resource cap or budget was exceeded.

Global flags may also come from the environment: GENUSCHANGE_WORKERS,
GENUSCHANGE_BUDGET, GENUSCHANGE_SEED and GENUSCHANGE_JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .curves import enumerate_points, family_coefficient, make_curve, verify_bounds, verify_point, Curve
from .errors import CheckpointError, ConstructionError, ResourceError
from .field import get_field, is_prime
from .genus import (
    absolute_parametrization_check,
    expected_relative_genus,
    point_parameter_roundtrip,
    relative_genus,
    rr_dimension_fast,
    rr_dimension_oracle,
)
from .orbits import IndexParams, bound_holds, orbit_decomposition
from .poly import RatFn, SparsePoly, format_poly, format_ratfn, parse_ratfn
from .report import DEFAULT_MATRIX, build_report, format_report
from .search import (
    DEFAULT_BUDGET,
    SearchSpec,
    bruteforce_coefficients,
    compare_with_construction,
    numerators,
    partitioned_run,
)

ENV_PREFIX = "GENUSCHANGE_"
SCHEMA_VERSION = 1
ORACLE_M = 4


class UsageError(Exception):
    pass


def _env_default(name: str, default, cast=str):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for {ENV_PREFIX}{name}: {raw!r}")


def _odd_prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if p == 2 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"p must be an odd prime, got {p}")
    return p


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _non_negative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _envelope(command: str, payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": command, **payload}


def _emit_json(args, command: str, payload: dict) -> None:
    if not args.json:
        return
    text = json.dumps(_envelope(command, payload), sort_keys=True, indent=1) + "\n"
    if args.json == "-":
        sys.stdout.write(text)
    else:
        with open(args.json, "w") as fh:
            fh.write(text)


# -- commands ---------------------------------------------------------------------

def cmd_orbits(args) -> int:
    params = IndexParams(args.p, args.n)
    orbits = orbit_decomposition(params)
    ok = bound_holds(params, len(orbits))
    print(f"p={args.p} n={args.n} q={params.q}: {len(orbits)} orbit(s) on {2**args.n} admissible indices")
    print(f"{'orbit':>5}  {'length':>6}  members")
    for idx, o in enumerate(orbits):
        print(f"{idx:>5}  {o.length:>6}  {' -> '.join(map(str, o.members))}")
    print(f"bound 2n*N_orb >= 2^n: {2 * args.n}*{len(orbits)} >= {2**args.n} {'ok' if ok else 'FAILED'}")
    _emit_json(args, "orbits", {"p": args.p, "n": args.n, "n_orbits": len(orbits),
                                "orbits": [o.to_json() for o in orbits], "bound": ok})
    return 0 if ok else 1


def cmd_bounds(args) -> int:
    b = verify_bounds(args.p, args.n)
    print(f"p={args.p} n={args.n}: N_orb={b['n_orbits']} lengths={b['orbit_lengths']}")
    print(f"  #C_n(F_p(t))      >= p^{b['count_Fp_exponent']} = {b['count_Fp']}   "
          f"[2n*N_orb >= 2^n: {'ok' if b['bound_Fp'] else 'FAILED'}]")
    print(f"  #C_n(F_p^2n(t))   >= p^{b['count_Fp2n_exponent']} = {b['count_Fp2n']}   "
          f"[exponent == 2^n: {'ok' if b['bound_Fp2n'] else 'FAILED'}]")
    _emit_json(args, "bounds", b)
    return 0 if b["bound_Fp"] and b["bound_Fp2n"] else 1


def cmd_points(args) -> int:
    curve = make_curve(args.p, args.n)
    pts = enumerate_points(curve, args.k, limit=args.limit, workers=args.workers)
    ok = all(verify_point(curve, pt.x, pt.y) for pt in pts)
    print(f"C_{args.n} over F_{args.p}^{args.k}(t): {len(pts)} point(s), all verified: {ok}")
    for pt in pts[: args.show]:
        print(f"  x = {format_ratfn(pt.x)}")
        print(f"    y = {format_ratfn(pt.y)}")
    if len(pts) > args.show:
        print(f"  ... {len(pts) - args.show} more")
    _emit_json(args, "points", {"p": args.p, "n": args.n, "k": args.k,
                                "field": get_field(args.p, args.k).to_json(),
                                "count": len(pts), "verified": ok,
                                "points": [pt.to_json(curve) for pt in pts]})
    return 0 if ok else 1


def _curve_from_args(args) -> Curve:
    if args.a is None:
        return make_curve(args.p, args.n)
    a = parse_ratfn(args.a, get_field(args.p))
    try:
        return Curve(args.p, args.n, a)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_genus(args) -> int:
    curve = _curve_from_args(args)
    p = curve.p
    top = max(2 * p, 4)
    reports = [rr_dimension_fast(curve, m) for m in range(top + 1)]
    g = relative_genus(curve)
    expected = expected_relative_genus(p)
    payload = {"p": p, "n": curve.n, "a": format_ratfn(curve.a),
               "reports": [r.to_json() for r in reports], "genus": g,
               "paper_value": expected, "match": g == expected}
    print(f"a = {format_ratfn(curve.a)}")
    print(f"{'m':>3} {'deg':>4} {'l(D)':>5} {'deg+1-l':>8}")
    for r in reports:
        print(f"{r.m:>3} {r.deg:>4} {r.ell:>5} {r.genus_estimate:>8}")
    print(f"relative genus g_K = {g}; (p-1)(p-2)/2 = {expected}: {'match' if g == expected else 'MISMATCH'}")
    ok = g == expected
    if args.oracle:
        rows = []
        for m in range(ORACLE_M + 1):
            fast, orc = rr_dimension_fast(curve, m).ell, rr_dimension_oracle(curve, m)
            rows.append({"m": m, "fast": fast, "oracle": orc})
            print(f"  oracle m={m}: fast {fast}, semilinear elimination {orc} {'ok' if fast == orc else 'DIFFER'}")
        payload["oracle"] = rows
        ok &= all(r["fast"] == r["oracle"] for r in rows)
    _emit_json(args, "genus", payload)
    return 0 if ok else 1



def cmd_param_check(args) -> int:
    curve = _curve_from_args(args)
    param = absolute_parametrization_check(curve)
    print(f"a_hat(s) = {format_ratfn(param.a_hat, 's')}; x = z^{curve.p}, y = z - a_hat(s) z^{curve.p}: identity holds")
    payload = {"p": curve.p, "n": curve.n, "parametrization": param.to_json(), "identity": True}
    ok = True
    if curve.is_standard and args.k:
        pts = enumerate_points(curve, args.k, limit=args.limit)
        ok = all(point_parameter_roundtrip(curve, pt, param) for pt in pts)
        print(f"z^p == x for {len(pts)} point(s) over F_{curve.p}^{args.k}(t): {ok}")
        payload.update(k=args.k, roundtrip_points=len(pts), roundtrip=ok)
    _emit_json(args, "param-check", payload)
    return 0 if ok else 1


def cmd_oracle_coeffs(args) -> int:
    res = bruteforce_coefficients(args.p, args.n, args.k, workers=args.workers,
                                  partitions=max(args.workers, 1), budget=args.budget)
    curve = make_curve(args.p, args.n)
    found = sorted(numerators(res), key=SparsePoly.sort_key)
    built = sorted((pt.x_raw[0] for pt in enumerate_points(curve, args.k)), key=SparsePoly.sort_key)
    ok = found == built
    print(f"{res.examined} candidate(s), {len(found)} survivor(s); construction gives {len(built)}: "
          f"{'identical sets' if ok else 'SETS DIFFER'}")
    for f in found[: args.show]:
        print(f"  a(t) = {format_poly(f)}")
    _emit_json(args, "oracle-coeffs", dict(res.to_json(), matches_construction=ok))
    return 0 if ok else 1


def cmd_oracle_points(args) -> int:
    curve = _curve_from_args(args)
    coefficient = None if curve.is_standard else json.dumps(curve.a.to_json(), sort_keys=True, separators=(",", ":"))
    spec = SearchSpec("points", curve.p, curve.n, args.k, height=args.height,
                      partitions=args.partitions or max(args.workers, 1), budget=args.budget,
                      coefficient=coefficient)
    t0 = time.perf_counter()
    res = partitioned_run(spec, workers=args.workers, checkpoint=args.checkpoint)
    cmp = compare_with_construction(res)
    print(f"height <= {args.height} over F_{curve.p}^{args.k}(t): {res.examined} candidate(s), "
          f"{cmp['survivors']} survivor(s), {cmp['constructed']} constructed")
    print(f"  constructed points all found: {cmp['constructed_subset']}")
    print(f"  extra survivors: {len(cmp['extras'])}")
    for x in cmp["extras"]:
        print(f"    EXTRA x = {format_ratfn(RatFn.from_json(get_field(curve.p, args.k), x))}")
    print(f"  ({time.perf_counter() - t0:.2f} s)")
    _emit_json(args, "oracle-points", dict(res.to_json(), comparison=cmp))
    return 0 if cmp["constructed_subset"] and not cmp["extras"] else 1


def _specialization_n(p: int, u: RatFn) -> int | None:
    """n with u == t^(p^n + 1), if any."""
    if u.den.degree() != 0 or len(u.num.terms) != 1 or u.num.lc_code() != 1:
        return None
    e = u.num.degree() - 1
    n = 0
    while e > 1 and e % p == 0:
        e //= p
        n += 1
    return n if e == 1 and n >= 1 else None


def cmd_family(args) -> int:
    u = parse_ratfn(args.u, get_field(args.p))
    coeff = family_coefficient(args.p, u)
    print(f"t*f(u) = {format_ratfn(coeff)}")
    payload = {"p": args.p, "u": format_ratfn(u), "coefficient": coeff.to_json(),
               "coefficient_text": format_ratfn(coeff)}
    n = _specialization_n(args.p, u)
    ok = True
    if n is not None:
        ok = coeff == make_curve(args.p, n).a
        print(f"u = t^(p^{n}+1): matches the coefficient of C_{n}: {'yes' if ok else 'NO'}")
        payload.update(n=n, matches_curve=ok)
    _emit_json(args, "family", payload)
    return 0 if ok else 1


def cmd_report(args) -> int:
    if args.p or args.n:
        ps = args.p or sorted({p for p, _ in DEFAULT_MATRIX})
        ns = args.n or sorted({n for _, n in DEFAULT_MATRIX})
        matrix = tuple((p, n) for p in ps for n in ns)
    else:
        matrix = DEFAULT_MATRIX
    t0 = time.perf_counter()
    data = build_report(matrix, oracle=args.oracle, workers=args.workers, seed=args.seed)
    print(format_report(data))
    print(f"({time.perf_counter() - t0:.1f} s)")
    if args.json:
        text = json.dumps(data, sort_keys=True, indent=1) + "\n"
        if args.json == "-":
            sys.stdout.write(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text)
    return 0 if data["all_pass"] else 1


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=_env_default("JSON", None),
                        help="write machine-readable output to PATH ('-' for stdout)")
    common.add_argument("--workers", type=_positive, default=_env_default("WORKERS", os.cpu_count() or 1, int))
    common.add_argument("--budget", type=_positive, default=_env_default("BUDGET", DEFAULT_BUDGET, int),
                        help="largest brute-force candidate count allowed")
    common.add_argument("--seed", type=int, default=_env_default("SEED", 0, int))

    parser = argparse.ArgumentParser(prog="genuschange", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, pn=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if pn:
            sp.add_argument("--p", type=_odd_prime, required=True)
            sp.add_argument("--n", type=_positive, required=True)
        sp.set_defaults(func=fn)
        return sp

    add("orbits", cmd_orbits, "orbits of phi on admissible indices")
    add("bounds", cmd_bounds, "orbit count and point-count bounds")
    sp = add("points", cmd_points, "construct and verify rational points")
    sp.add_argument("--k", type=_positive, default=1, help="constant field F_{p^k}")
    sp.add_argument("--limit", type=_positive)
    sp.add_argument("--show", type=_non_negative, default=5)
    sp = add("genus", cmd_genus, "relative genus via Riemann-Roch dimensions")
    sp.add_argument("--a", help="general coefficient, e.g. 't+t^2' or '(t)/(t+1)'")
    sp.add_argument("--oracle", action="store_true", help="cross-check with semilinear elimination")
    sp = add("param-check", cmd_param_check, "absolute genus 0 via the inseparable parametrisation")
    sp.add_argument("--a")
    sp.add_argument("--k", type=_positive, default=1)
    sp.add_argument("--limit", type=_positive)
    sp = add("oracle-coeffs", cmd_oracle_coeffs, "exhaustive coefficient search vs construction")
    sp.add_argument("--k", type=_positive, default=1)
    sp.add_argument("--show", type=_non_negative, default=10)
    sp = add("oracle-points", cmd_oracle_points, "bounded-height exhaustive point search")
    sp.add_argument("--k", type=_positive, default=1)
    sp.add_argument("--height", type=_non_negative, required=True)
    sp.add_argument("--a")
    sp.add_argument("--partitions", type=_positive)
    sp.add_argument("--checkpoint", metavar="PATH")
    sp = add("family", cmd_family, "coefficient t*f(u) of the one-parameter family", pn=False)
    sp.add_argument("--p", type=_odd_prime, required=True)
    sp.add_argument("--u", required=True, help="u as text, e.g. 't^4' or '(t+1)/(t^2)'")
    sp = add("report", cmd_report, "regenerate every desk-scale check", pn=False)
    sp.add_argument("--p", type=_odd_prime, nargs="+")
    sp.add_argument("--n", type=_positive, nargs="+")
    sp.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceError, CheckpointError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 3
    except ConstructionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
