"""Command-line front end: ``szlattice <subcommand> ...``."""
import argparse
import sys
from fractions import Fraction

from . import __version__
from .cover import (
    cover_planes,
    densest_planes_count,
    enum_primitive_lattices,
    format_planes,
    subdivide,
)
from .experiments import EXPERIMENTS, ExperimentError, parse_config, run_experiment
from .polynomial import ParseError, parse_polynomial_file
from .projection import SpaceCurve, best_projection, projection_report
from .variety import affine, count_affine_points, count_proj_points, projective


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_cover(args):
    C = cover_planes(args.n, args.k, args.b)
    print(f"planes: {C.size}")
    print(f"max_det_sq: {C.max_det_sq}")
    if args.emit_planes:
        with open(args.emit_planes, "w", encoding="utf-8") as fh:
            fh.write(format_planes(C.planes))
    return 0


def cmd_densest(args):
    planes, N = densest_planes_count(args.n, args.k, args.d, args.b)
    print(f"points: {N}")
    for P in planes:
        print(f"{P}  det_sq={P.det_sq}")
    return 0


def cmd_enum_lattices(args):
    res = enum_primitive_lattices(args.ambient, args.rank, args.hsq)
    print(f"count: {len(res)}  method: {res.method}  complete: {res.complete}")
    for L in res:
        print(f"{L}  det_sq={L.det_sq}")
    return 0


def _load_polys(path, nvars):
    return parse_polynomial_file(_read(path), nvars)


def cmd_count(args):
    polys = _load_polys(args.input, args.nvars)
    if not polys:
        raise ValueError("no polynomials in input")
    nv = polys[0].n_vars
    if args.projective:
        V = projective(nv - 1, *polys)
        print(count_proj_points(V, args.b))
    else:
        V = affine(nv, *polys)
        print(count_affine_points(V, args.b))
    return 0


def cmd_project(args):
    polys = _load_polys(args.input, 3)
    if len(polys) != 2:
        raise ValueError(f"expected two polynomials, found {len(polys)}")
    p, q = polys
    degree = args.degree
    if degree is None:
        # the product of the degrees bounds the degree of a complete intersection
        degree = max(1, p.degree * q.degree)
    C = SpaceCurve(p, q, degree)
    for drop in range(3):
        r = projection_report(C, drop)
        if "collapsed" in r:
            print(f"drop x{drop}: collapsed ({r['collapsed']})")
        else:
            print(
                f"drop x{drop}: eliminant degree {r['eliminant_degree']}, "
                f"reduced degree {r['squarefree_degree']}"
            )
    choice = best_projection(C, check=args.degree is not None)
    print(f"best: drop x{choice.drop}, d' = {choice.d_prime}")
    return 0


def cmd_experiment(args):
    cfg = parse_config(_read(args.config)) if args.config else {}
    exp = args.id or cfg.get("id")
    if not exp:
        raise ExperimentError("no experiment id given")
    rep = run_experiment(exp, cfg)
    if args.out:
        rep.write(args.out)
    sys.stdout.write(rep.summary_text())
    return 0 if rep.passed else 1


def cmd_subdivide(args):
    S = subdivide(Fraction(args.h), args.k)
    cap = args.k * float(Fraction(args.h)) ** (1 / args.k)
    print(f"K: {S.K}  (k H^(1/k) = {cap:.6f})")
    for i, b in enumerate(S.endpoints):
        print(f"b_{i} = {float(b):.12g}")
    checks = S.verify()
    for name, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return 0 if all(checks.values()) else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="szlattice", description=__doc__)
    ap.add_argument("--version", action="version", version=f"szlattice {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cover", help="cover P^n(Q,B) by k-planes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--emit-planes", metavar="PATH")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("densest", help="points on the union of the d densest k-planes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.set_defaults(func=cmd_densest)

    s = sub.add_parser("enum-lattices", help="primitive lattices with det_sq <= hsq")
    s.add_argument("--ambient", type=int, required=True)
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--hsq", type=int, required=True)
    s.set_defaults(func=cmd_enum_lattices)

    s = sub.add_parser("count", help="count points of bounded height on a variety")
    s.add_argument("--input", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--projective", action="store_true")
    g.add_argument("--affine", action="store_true")
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--nvars", type=int)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("project", help="coordinate projections of a space curve")
    s.add_argument("--input", required=True)
    s.add_argument("--degree", type=int, help="curve degree (enables the d' bound check)")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("experiment", help="run a scaling experiment")
    s.add_argument("--id", choices=sorted(EXPERIMENTS))
    s.add_argument("--config")
    s.add_argument("--out")
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("subdivide", help="endpoints of the height subdivision")
    s.add_argument("--h", required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_subdivide)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
