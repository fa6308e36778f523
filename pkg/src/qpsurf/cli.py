"""Command-line entry point.

Exit codes: 0 success, 1 check failure, 2 input or validation error.
Output is canonical text and contains nothing run-dependent.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction

from . import examples_data
from .jacobian import JacobianError, finite_dim_evidence, is_rigid_up_to, truncated_quotient_dim
from .potential import qp_of_triangulation, unreduced_potential
from .qp import QP, QPError, mutate_qp
from .quiver import QuiverError, quiver_from_matrix
from .surface import SurfaceError, Triangulation, flip, signed_adjacency, unreduced_quiver, validate_triangulation
from .verify import (
    check_flip_compatibility,
    check_involution,
    check_restriction_commutes,
    explore_mutation_class,
)

INPUT_ERROR = 2
CHECK_FAILURE = 1


class CliError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(str(exc)) from None


def _parse_scalars(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        name, value = item.split("=", 1)
        out[name.strip()] = Fraction(value.strip())
    return out


def _load_triangulation(args):
    tri = Triangulation.from_text(_read(args.tri), _parse_scalars(getattr(args, "scalars", None)))
    problems = validate_triangulation(tri)
    if problems:
        raise CliError("invalid triangulation: " + "; ".join(problems))
    return tri


def _load_qp(args):
    return QP.from_text(_read(args.qp))


def _cmd_validate(args, out):
    tri = Triangulation.from_text(_read(args.tri))
    problems = validate_triangulation(tri)
    if problems:
        raise CliError("; ".join(problems))
    out.write("ok\n")
    return 0


def _cmd_matrix(args, out):
    out.write(signed_adjacency(_load_triangulation(args)).to_text())
    return 0


def _cmd_quiver(args, out):
    tri = _load_triangulation(args)
    if args.unreduced:
        quiver, provenance = unreduced_quiver(tri)
        out.write(quiver.to_text())
        for name in sorted(provenance):
            out.write("# %s from %s\n" % (name, " ".join(str(x) for x in provenance[name])))
    else:
        out.write(quiver_from_matrix(signed_adjacency(tri)).to_text())
    return 0


def _cmd_potential(args, out):
    tri = _load_triangulation(args)
    if args.unreduced:
        out.write(unreduced_potential(tri, args.order).to_text())
    else:
        out.write(qp_of_triangulation(tri, args.order).potential.to_text())
    return 0


def _cmd_qp(args, out):
    out.write(qp_of_triangulation(_load_triangulation(args), args.order).to_text())
    return 0


def _cmd_flip(args, out):
    out.write(flip(_load_triangulation(args), args.arc).to_text())
    return 0


def _cmd_mutate(args, out):
    out.write(mutate_qp(_load_qp(args), args.vertex).to_text())
    return 0


def _cmd_dim(args, out):
    qp = _load_qp(args)
    if args.stabilize:
        out.write(finite_dim_evidence(qp, args.order).to_text())
    else:
        out.write(truncated_quotient_dim(qp, args.order).to_text())
    return 0


def _cmd_rigid(args, out):
    report = is_rigid_up_to(_load_qp(args), args.order)
    out.write(report.to_text())
    return 0


def _cmd_check(args, out):
    if args.what == "flip-compat":
        tri = _load_triangulation(args)
        report = check_flip_compatibility(tri, args.arg, args.order)
    elif args.what == "involution":
        report = check_involution(_load_qp(args), args.arg, args.order)
    elif args.what == "restriction":
        keep = [v for v in args.keep.split(",") if v]
        report = check_restriction_commutes(_load_qp(args), keep, args.arg, args.order)
    else:
        raise CliError("unknown check %r" % args.what)
    out.write(report.to_text())
    return 0 if report.passed else CHECK_FAILURE


def _cmd_explore(args, out):
    report, graph = explore_mutation_class(_load_qp(args), args.depth, args.order)
    out.write(report.to_text())
    out.write(graph.to_text())
    return 0 if report.passed else CHECK_FAILURE


def _cmd_examples(args, out):
    try:
        out.write(examples_data.example_text(args.name))
    except KeyError as exc:
        raise CliError(str(exc)) from None
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qpsurf",
        description="Quivers with potentials from triangulated surfaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def tri_arg(p):
        p.add_argument("tri", nargs="?", default="-", help="triangulation file ('-' for stdin)")

    def qp_arg(p):
        p.add_argument("qp", nargs="?", default="-", help="QP file ('-' for stdin)")

    def order_arg(p):
        p.add_argument("--order", type=int, default=6, help="truncation order (default 6)")

    p = sub.add_parser("validate", help="validate a triangulation file")
    tri_arg(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("matrix", help="signed adjacency matrix")
    tri_arg(p)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("quiver", help="adjacency quiver")
    tri_arg(p)
    p.add_argument("--unreduced", action="store_true")
    p.set_defaults(func=_cmd_quiver)

    p = sub.add_parser("potential", help="potential of a triangulation")
    tri_arg(p)
    p.add_argument("--unreduced", action="store_true")
    p.add_argument("--scalars", help="puncture scalar overrides, e.g. p1=2/1,p2=3/1")
    order_arg(p)
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("qp", help="reduced QP of a triangulation")
    tri_arg(p)
    p.add_argument("--scalars")
    order_arg(p)
    p.set_defaults(func=_cmd_qp)

    p = sub.add_parser("flip", help="flip an arc")
    tri_arg(p)
    p.add_argument("arc")
    p.set_defaults(func=_cmd_flip)

    p = sub.add_parser("mutate", help="mutate a QP at a vertex")
    qp_arg(p)
    p.add_argument("vertex")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("dim", help="truncated quotient dimension report")
    qp_arg(p)
    order_arg(p)
    p.add_argument("--stabilize", action="store_true",
                   help="raise the order until the certificate fires")
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("rigid", help="rigidity check up to an order")
    qp_arg(p)
    order_arg(p)
    p.set_defaults(func=_cmd_rigid)

    p = sub.add_parser("check", help="run a compatibility check")
    p.add_argument("what", choices=["flip-compat", "involution", "restriction"])
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("arg", help="arc or vertex")
    p.add_argument("--keep", default="", help="vertices kept by the restriction")
    order_arg(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("explore", help="breadth-first mutation-class exploration")
    qp_arg(p)
    p.add_argument("--depth", type=int, default=3)
    order_arg(p)
    p.set_defaults(func=_cmd_explore)

    p = sub.add_parser("examples", help="print a built-in triangulation")
    p.add_argument("name")
    p.set_defaults(func=_cmd_examples)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code not in (0, None) else 0
    if args.command == "check":
        if args.what == "flip-compat":
            args.tri = args.input
        else:
            args.qp = args.input
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.func(args, out)
        for w in caught:
            sys.stderr.write("warning: %s\n" % w.message)
        return code
    except (CliError, QuiverError, QPError, SurfaceError, JacobianError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
