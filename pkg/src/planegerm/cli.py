"""Command line front end: planegerm <subcommand> ..."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import FieldElem
from .errors import GermError, InputError, ResourceLimit
from .parser import __doc__ as GRAMMAR
from .parser import parse, parse_branch

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _rat(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, FieldElem):
        return str(v.rational_value()) if v.is_rational() else str(v)
    return v


def _jsonable(o):
    if isinstance(o, dict):
        return {str(k): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, (Fraction, FieldElem)):
        return _rat(o)
    if isinstance(o, float) and o == float("inf"):
        return "inf"
    return o


def _emit(args, text_lines, payload):
    if args.json:
        print(json.dumps(_jsonable(payload), sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _bindings(args):
    out = {}
    for item in args.param or []:
        if "=" not in item:
            raise InputError(f"--param expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _germ(args, text):
    return parse(text, _bindings(args)).poly


def _branch(args):
    lam = parse_branch(args.branch)
    if args.tail is not None:
        from .puiseux import DemiBranch

        return DemiBranch(lam, Fraction(args.tail))
    return lam


# -- subcommands ----------------------------------------------------------------------------

def cmd_polygon(args):
    from .polygon import boundary_function, relative_polygon

    P = relative_polygon(_germ(args, args.germ), _branch(args))
    edges = [{"from": list(a), "to": list(b), "slope": s} for a, b, s in P.edges]
    pieces = [
        {"lo": p.lo, "hi": p.hi, "phi": "inf" if p.intercept is None else f"{p.intercept} + ({p.slope})*x"}
        for p in boundary_function(P)
    ]
    lines = ["vertices: " + ", ".join(f"({i}, {_rat(Fraction(j))})" for i, j in P.vertices)]
    lines += [f"edge ({a[0]}, {_rat(Fraction(a[1]))}) -- ({b[0]}, {_rat(Fraction(b[1]))}) slope {_rat(s)}"
              for a, b, s in P.edges]
    _emit(args, lines, {"vertices": [list(v) for v in P.vertices], "edges": edges, "boundary": pieces})
    return EXIT_OK


def cmd_ordfn(args):
    from .polygon import order_function

    F = order_function(_germ(args, args.germ), _branch(args))
    lines = ["breakpoints: " + ", ".join(f"({_rat(x)}, {_rat(v)})" for x, v in F.breakpoints)]
    lines.append("slopes: " + ", ".join(str(s) for s in F.slopes))
    if F.certified_below is not None:
        lines.append(f"certified for xi < {_rat(F.certified_below)}")
    _emit(args, lines, {
        "breakpoints": [list(b) for b in F.breakpoints],
        "slopes": list(F.slopes),
        "certified_below": F.certified_below,
    })
    return EXIT_OK


def cmd_edgepoly(args):
    from .polygon import edge_polynomial

    E = edge_polynomial(_germ(args, args.germ), _branch(args), Fraction(args.xi))
    lines = [f"P(z) = {E.poly.to_str()}", f"ord = {_rat(E.ord)}"]
    _emit(args, lines, {"xi": E.xi, "ord": E.ord, "poly": E.poly.to_str(),
                        "coeffs": list(E.poly.coeffs)})
    return EXIT_OK


def cmd_tree(args):
    from .tree import build_real_tree, render_tree

    T = build_real_tree(_germ(args, args.germ))
    if args.json:
        print(json.dumps(_jsonable(T.to_json()), sort_keys=True))
    else:
        print(render_tree(T))
        print(json.dumps(_jsonable(T.to_json()), sort_keys=True))
    return EXIT_OK


def _first_diff(a: bytes, b: bytes):
    for k, (u, v) in enumerate(zip(a, b)):
        if u != v:
            return k
    return min(len(a), len(b))


def cmd_equiv(args):
    from .tree import blow_analytic_equivalent, build_real_tree, canonical_code

    f, g = _germ(args, args.f), _germ(args, args.g)
    mode = "orientation-preserving" if args.orientation_preserving else "free"
    ok = blow_analytic_equivalent(f, g, mode)
    payload = {"equivalent": ok, "mode": mode}
    lines = [f"{'equivalent' if ok else 'not equivalent'} ({mode})"]
    if not ok:
        cf = canonical_code(build_real_tree(f), mode)
        cg = canonical_code(build_real_tree(g), mode)
        k = _first_diff(cf, cg)
        payload.update({"first_difference": k, "code_f": cf.decode(), "code_g": cg.decode()})
        lines.append(f"canonical codes first differ at position {k}")
        lines.append(f"  f: {cf.decode()}")
        lines.append(f"  g: {cg.decode()}")
    _emit(args, lines, payload)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_fukui(args):
    from .invariants import fukui_set

    mode = {None: "all", "+": "nonneg", "-": "nonpos"}[args.sign]
    S = fukui_set(_germ(args, args.germ), args.bound, mode)
    _emit(args, [S.describe()], S.to_json())
    return EXIT_OK


def cmd_weighted(args):
    from .invariants import classify_weighted

    rel = {"c1": "c1", "bilip": "bilipschitz", "bilipschitz": "bilipschitz"}[args.relation]
    V = classify_weighted(_germ(args, args.f), _germ(args, args.g), rel, args.orientation_preserving)
    lines = [f"{V.verdict}: {V.reason}"]
    if V.certificate:
        lines.append("certificate: " + json.dumps(_jsonable(V.certificate), sort_keys=True))
    _emit(args, lines, {"verdict": V.verdict, "reason": V.reason, "certificate": V.certificate})
    return EXIT_FALSE if V.verdict == "not-equivalent" else EXIT_OK


def cmd_verify_example(args):
    from . import numeric

    if args.example == "5.1":
        cm, rep = numeric.example_51(args.samples, args.seed)
        extra = {}
    else:
        ab, cm, rep = numeric.example_52(args.samples, args.seed)
        extra = {"a": ab[0], "b": ab[1]}
    res, viol = numeric.phi_residual(cm)
    d1, d2 = numeric.phi_derivative_bounds(cm)
    payload = dict(rep.to_json(), phi_residual=res, phi_prime_max=d1, phi_minus_z_phi_prime_max=d2, **extra)
    lines = [f"example {args.example}"]
    lines += [f"  {k} = {payload[k]}" for k in sorted(payload)]
    _emit(args, lines, payload)
    good = rep.residual_max < 1e-8 and rep.monotonicity_violations == 0 and res < 1e-8
    return EXIT_OK if good else EXIT_FALSE


# -- argument parsing -------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="planegerm",
        description="Invariants of real plane curve germs.",
        epilog="Expression grammar:\n" + GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"planegerm {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON on stdout")
    common.add_argument("--param", action="append", metavar="NAME=VALUE",
                        help="bind a parameter to a rational (repeatable)")
    sub = p.add_subparsers(dest="cmd", required=True)

    def branch_args(sp):
        sp.add_argument("germ")
        sp.add_argument("--branch", required=True, help="x = lambda(y), e.g. 'y^(3/2)'")
        sp.add_argument("--tail", help="generic term exponent of the branch")

    sp = sub.add_parser("polygon", parents=[common], help="Newton polygon relative to a branch")
    branch_args(sp)
    sp.set_defaults(fn=cmd_polygon)
    sp = sub.add_parser("ordfn", parents=[common], help="order function along a branch")
    branch_args(sp)
    sp.set_defaults(fn=cmd_ordfn)
    sp = sub.add_parser("edgepoly", parents=[common], help="edge polynomial at xi")
    branch_args(sp)
    sp.add_argument("--xi", required=True)
    sp.set_defaults(fn=cmd_edgepoly)
    sp = sub.add_parser("tree", parents=[common], help="real tree model")
    sp.add_argument("germ")
    sp.set_defaults(fn=cmd_tree)
    sp = sub.add_parser("equiv", parents=[common], help="blow-analytic equivalence via trees")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--orientation-preserving", action="store_true")
    sp.set_defaults(fn=cmd_equiv)
    sp = sub.add_parser("fukui", parents=[common], help="Fukui invariant set up to a bound")
    sp.add_argument("germ")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--sign", choices=["+", "-"])
    sp.set_defaults(fn=cmd_fukui)
    sp = sub.add_parser("weighted", parents=[common], help="classify weighted homogeneous germs")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--relation", choices=["c1", "bilip", "bilipschitz"], required=True)
    sp.add_argument("--orientation-preserving", action="store_true")
    sp.set_defaults(fn=cmd_weighted)
    sp = sub.add_parser("verify-example", parents=[common], help="numeric conjugacy check")
    sp.add_argument("example", choices=["5.1", "5.2"])
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_verify_example)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except ResourceLimit as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (GermError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
