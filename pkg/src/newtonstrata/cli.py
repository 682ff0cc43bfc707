"""Command-line front end: parse group specs and points, dispatch, emit
JSON (default), text, or DOT deterministically."""

import argparse
import json
import re
import sys

from . import affine, chamber, strata, toruseval, verify
from .rationals import NEG_INF, Q, fmt_point, fmt_scalar, parse_point
from .rootdata import GroupSpecError, build_group

_GLN = re.compile(r"^GL(\d+)$")


def _is_gln(datum):
    return bool(_GLN.match(datum.label))


def _slopes(point):
    return [fmt_scalar(s) for s in toruseval.coords_to_slopes(point)]


def _emit(args, payload):
    if args.format == "text":
        for line in _text_lines(payload, ""):
            print(line)
    else:
        print(json.dumps(payload))


def _text_lines(obj, prefix):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                yield f"{prefix}{k}:"
                yield from _text_lines(v, prefix + "  ")
            else:
                yield f"{prefix}{k}: {v}"
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                yield from _text_lines(v, prefix + "  ")
            else:
                yield f"{prefix}- {v}"
    else:
        yield f"{prefix}{obj}"


def _parse_integral(s):
    return tuple(int(c) for c in s.split(","))


def cmd_describe(datum, args):
    payload = {
        "group": datum.label,
        "n": datum.n,
        "l": datum.l,
        "factors": [
            {"type": f.letter, "rank": f.rank, "simple_roots":
             [j + 1 for j in f.indices]}
            for f in datum.factors
        ],
        "component_group": list(datum.component_group()),
    }
    _emit(args, payload)
    return 0


def cmd_retract(datum, args):
    d = parse_point(args.d)
    y, face = chamber.retract(datum, d)
    payload = {"y": fmt_point(y), "levi": sorted(j + 1 for j in face)}
    if _is_gln(datum):
        payload["slopes"] = _slopes(y)
    _emit(args, payload)
    return 0


def cmd_stratum(datum, args):
    d = parse_point(args.d)
    np = strata.stratum_of(datum, d)
    payload = np.to_json()
    if _is_gln(datum):
        payload["slopes"] = _slopes(np.point)
    _emit(args, payload)
    return 0


def cmd_conditions(datum, args):
    mu = parse_point(args.mu)
    conds = strata.stratum_conditions(datum, mu, closed=args.closed)
    _emit(args, conds.to_json())
    return 0


def cmd_dim(datum, args):
    mu = parse_point(args.mu)
    _emit(args, {"dim": strata.dim_leq(datum, mu)})
    return 0


def cmd_codim(datum, args):
    nu = parse_point(args.nu)
    mu = parse_point(args.mu)
    if args.chai:
        c = strata.codim_chai(datum, nu, mu)
    else:
        c = strata.codim(datum, nu, mu)
    _emit(args, {"codim": c})
    return 0


def cmd_newton_points(datum, args):
    mu = parse_point(args.mu)
    points = chamber.newton_points_below(datum, mu)
    if args.dot:
        print(chamber.hasse_dot(datum, points))
        return 0
    _emit(args, [np.to_json() for np in points])
    return 0


def cmd_defect(datum, args):
    nu = _parse_integral(args.nu)
    rep = affine.verify_defect_identity(datum, nu)
    payload = {
        "nu": rep["nu"],
        "w_word": rep["w_word"],
        "defect": rep["defect"],
        "d_G": fmt_scalar(rep["d_G"]),
        "pass": rep["pass"],
    }
    _emit(args, payload)
    return 0 if rep["pass"] else 1


def cmd_dg(datum, args):
    nu = parse_point(args.nu)
    if any(c is NEG_INF for c in nu):
        raise ValueError("dg needs finite coordinates")
    _emit(args, {"d_G": fmt_scalar(strata.d_G(datum, nu))})
    return 0


def cmd_eval(datum, args):
    a = toruseval.parse_torus_point(args.a)
    if len(a.values) != datum.n:
        raise ValueError("torus point has wrong length")
    values, d_c = toruseval.eval_c(datum, a)
    payload = {
        "c": [v.to_json() for v in values],
        "d_c": fmt_point(d_c),
        "nu_a": fmt_point(toruseval.nu_a(datum, a)),
    }
    _emit(args, payload)
    return 0


def cmd_verify(datum, args):
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    reports = verify.run_suites(datum, names, seed=args.seed, count=args.count)
    ok = all(r["pass"] for r in reports)
    if args.format == "json":
        print(json.dumps(reports))
    else:
        for r in reports:
            status = "pass" if r["pass"] else "FAIL"
            print(f"{r['suite']}: {status} ({r['count']} cases,"
                  f" {len(r['failures'])} failures)")
            for f in r["failures"]:
                print(f"  failure: {json.dumps(f)}")
    return 0 if ok else 1


def build_parser():
    top = argparse.ArgumentParser(
        prog="newtonstrata",
        description="Newton stratification of the adjoint quotient:"
        " retraction, strata, dimensions, defect, torus evaluation.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        p.add_argument("--group", required=True,
                       help='group spec, e.g. "GL3", "B2*T1", "Gext(E6)"')
        p.add_argument("--format", choices=("json", "text"), default="json")
        for flag, kw in flags.items():
            p.add_argument(flag, **kw)
        p.set_defaults(func=func)
        return p

    add("describe", cmd_describe)
    add("retract", cmd_retract, **{"--d": {"required": True}})
    add("stratum", cmd_stratum, **{"--d": {"required": True}})
    add("conditions", cmd_conditions, **{
        "--mu": {"required": True},
        "--closed": {"action": "store_true"},
    })
    add("dim", cmd_dim, **{"--mu": {"required": True}})
    add("codim", cmd_codim, **{
        "--nu": {"required": True},
        "--mu": {"required": True},
        "--chai": {"action": "store_true"},
    })
    add("newton-points", cmd_newton_points, **{
        "--mu": {"required": True},
        "--dot": {"action": "store_true"},
    })
    add("defect", cmd_defect, **{"--nu": {"required": True}})
    add("dg", cmd_dg, **{"--nu": {"required": True}})
    add("eval", cmd_eval, **{"--a": {"required": True}})
    add("verify", cmd_verify, **{
        "--suite": {"choices": ("all", "rnu", "defect", "chars"),
                    "default": "all"},
        "--seed": {"type": int, "default": 0},
        "--count": {"type": int, "default": 1000},
    })
    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        datum = build_group(args.group)
    except GroupSpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        return args.func(datum, args)
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
