"""Command-line front end.

Reads JSON documents, dispatches to the library, and prints one compact
JSON verdict on stdout. Exit codes: 0 success, 1 domain error (with the
offending operation named), 2 parse or I/O error. Identical inputs produce
byte-identical output.

The TROPCRAM_CAP environment variable replaces the enumeration caps of the
oracle subcommands; inputs above the replaced cap still fail hard.
"""

import argparse
import os
import sys
from fractions import Fraction

from . import geometry, hypergraph, io, oracle, twla
from .core import is_saturated
from .errors import DomainError, ParseError


def _oracle_cap(default: int) -> int:
    raw = os.environ.get("TROPCRAM_CAP")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"TROPCRAM_CAP must be an integer, got {raw!r}") from None


def _cmd_perm(args) -> dict:
    A = io.matrix_from_json(io.load_json(args.matrix))
    res = twla.tw_permanent(A)
    out = {
        "value": io.format_rational(res.value),
        "singular": res.singular,
        "optimal": io.partition_to_json(res.optimal),
    }
    if res.witness is not None:
        out["witness"] = io.partition_to_json(res.witness)
    return out


def _cmd_sing(args) -> dict:
    A = io.matrix_from_json(io.load_json(args.matrix))
    singular, witness = twla.is_tw_singular(A)
    return {
        "singular": singular,
        "witness": io.partition_to_json(witness) if witness is not None else None,
    }


def _cmd_kernel(args) -> dict:
    A = io.matrix_from_json(io.load_json(args.matrix))
    x = io.vector_from_json(io.load_json(args.vector))
    member, counts = twla.tw_kernel_membership(A, x)
    return {"member": member, "counts": list(counts)}


def _cmd_minors(args) -> dict:
    A = io.matrix_from_json(io.load_json(args.matrix))
    return {"minors": [io.format_rational(v) for v in twla.maximal_minors(A)]}


def _cmd_cramer(args) -> dict:
    A = io.matrix_from_json(io.load_json(args.matrix))
    vec, unique = twla.cramer_solve(A)
    return {"minors": [io.format_rational(v) for v in vec], "unique": unique}


def _cmd_fit(args) -> dict:
    polytope = io.polytope_from_json(io.load_json(args.polytope))
    conds = io.conditions_from_json(io.load_json(args.conditions))
    f, unique = geometry.fit_hypersurface(polytope, conds)
    return {"polynomial": io.polynomial_to_json(f), "unique": unique}


def _cmd_dual(args) -> dict:
    f = io.polynomial_from_json(io.load_json(args.poly))
    sub = geometry.dual_complex(f)
    out = io.subdivision_to_json(sub)
    out["saturated_input"] = is_saturated(f)
    return out


def _cmd_rigid(args) -> dict:
    sub = io.subdivision_from_json(io.load_json(args.subdivision))
    w = io.weighting_from_json(io.load_json(args.weighting), sub)
    if args.brute:
        rigid, witnesses = oracle.brute_rigid(w, cap=_oracle_cap(oracle.RIGIDITY_CAP))
        return {"rigid": rigid, "witnesses": [sorted(x) for x in witnesses]}
    rigid, witness = geometry.is_rigid(w)
    return {"rigid": rigid, "witness": sorted(witness) if witness is not None else None}


def _cmd_deform(args) -> dict:
    f = io.polynomial_from_json(io.load_json(args.poly))
    try:
        indices = [int(s) for s in args.set.split(",") if s]
    except ValueError:
        raise ParseError(f"--set expects comma-separated indices, got {args.set!r}") from None
    pts = f.polytope.lattice_points
    for i in indices:
        if not 0 <= i < len(pts):
            raise DomainError("deform", f"lattice point index {i} out of range")
    eps = io.parse_rational(args.eps)
    g = geometry.deform(f, [pts[i] for i in indices], eps)
    return io.polynomial_to_json(g)


def _cmd_plot(args) -> dict:
    from . import plot

    f = io.polynomial_from_json(io.load_json(args.poly))
    conds = None
    if args.points:
        conds = io.conditions_from_json(io.load_json(args.points))
    viewport = None
    if args.viewport:
        parts = args.viewport.split(",")
        if len(parts) != 4:
            raise ParseError("--viewport expects x0,y0,x1,y1")
        viewport = tuple(io.parse_rational(p) for p in parts)
    plot.render(f, args.output, conditions=conds, show_dual=args.dual, viewport=viewport)
    return {"written": args.output}


def _cmd_oracle_perm(args) -> dict:
    A = io.matrix_from_json(io.load_json(args.matrix))
    value, optima = oracle.brute_perm(A, cap=_oracle_cap(oracle.BRUTE_PERM_CAP))
    return {
        "value": io.format_rational(value),
        "optima": [io.partition_to_json(p) for p in optima],
    }


def _cmd_oracle_tvertices(args) -> dict:
    try:
        weights = [int(s) for s in args.weights.split(",") if s]
    except ValueError:
        raise ParseError(f"--weights expects comma-separated integers, got {args.weights!r}") from None
    verts = oracle.T_vertices(weights, args.cols, cap=_oracle_cap(oracle.TRANSPORT_CAP))
    return {
        "count": len(verts),
        "vertices": [
            {
                "matrix": [[io.format_rational(v) for v in row] for row in tv.matrix],
                "edges": [sorted(e) for e in tv.support.edges],
            }
            for tv in verts
        ],
    }


def _cmd_oracle_mintransport(args) -> dict:
    A = io.matrix_from_json(io.load_json(args.matrix))
    value, argmin = oracle.min_over_transport(A, cap=_oracle_cap(oracle.TRANSPORT_CAP))
    return {
        "value": io.format_rational(value),
        "unique": len(argmin) == 1,
        "argmin_edges": [[sorted(e) for e in tv.support.edges] for tv in argmin],
    }


def _cmd_oracle_rigid(args) -> dict:
    sub = io.subdivision_from_json(io.load_json(args.subdivision))
    w = io.weighting_from_json(io.load_json(args.weighting), sub)
    rigid, witnesses = oracle.brute_rigid(w, cap=_oracle_cap(oracle.RIGIDITY_CAP))
    return {"rigid": rigid, "witnesses": [sorted(x) for x in witnesses]}


def _cmd_oracle_span(args) -> dict:
    sub = io.subdivision_from_json(io.load_json(args.subdivision))
    ok, lhs, rhs = oracle.span_inequality_check(sub)
    return {"ok": ok, "lhs": lhs, "rhs": rhs}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropcram",
        description="Exact min-plus linear algebra with multiplicities and curve fitting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("perm", help="weighted permanent of a square-weight matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_perm)

    p = sub.add_parser("sing", help="singularity of a square-weight matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_sing)

    p = sub.add_parser("kernel", help="kernel membership of a vector")
    p.add_argument("matrix")
    p.add_argument("vector")
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("cramer", help="minor vector and uniqueness flag")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_cramer)

    p = sub.add_parser("minors", help="maximal minors of a K = N-1 matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_minors)

    p = sub.add_parser("fit", help="fit a hypersurface through weighted points")
    p.add_argument("polytope")
    p.add_argument("conditions")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("dual", help="dual subdivision of a polynomial")
    p.add_argument("poly")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("rigid", help="rigidity of a weighting")
    p.add_argument("subdivision")
    p.add_argument("weighting")
    p.add_argument("--brute", action="store_true", help="exhaustive search with all witnesses")
    p.set_defaults(func=_cmd_rigid)

    p = sub.add_parser("deform", help="decrease chosen coefficients")
    p.add_argument("poly")
    p.add_argument("--set", required=True, help="comma-separated lattice point indices")
    p.add_argument("--eps", required=True, help="positive rational amount")
    p.set_defaults(func=_cmd_deform)

    p = sub.add_parser("plot", help="render the curve of a 2-d polynomial to SVG")
    p.add_argument("poly")
    p.add_argument("--points", help="conditions JSON with marked points")
    p.add_argument("--dual", action="store_true", help="draw the dual subdivision inset")
    p.add_argument("--viewport", help="x0,y0,x1,y1")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_plot)

    po = sub.add_parser("oracle", help="brute-force reference computations")
    osub = po.add_subparsers(dest="oracle_command", required=True)

    p = osub.add_parser("perm", help="exhaustive permanent with all optima")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_oracle_perm)

    p = osub.add_parser("tvertices", help="transportation polytope vertices")
    p.add_argument("--weights", required=True, help="comma-separated row weights")
    p.add_argument("--cols", required=True, type=int, help="number of columns N")
    p.set_defaults(func=_cmd_oracle_tvertices)

    p = osub.add_parser("mintransport", help="minimize over transportation vertices")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_oracle_mintransport)

    p = osub.add_parser("rigid", help="exhaustive rigidity with all minimal witnesses")
    p.add_argument("subdivision")
    p.add_argument("weighting")
    p.set_defaults(func=_cmd_oracle_rigid)

    p = osub.add_parser("span", help="dimension-count inequality of a simplicial complex")
    p.add_argument("subdivision")
    p.set_defaults(func=_cmd_oracle_span)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except DomainError as exc:
        sys.stdout.write(
            io.dump_json({"error": {"operation": exc.operation, "message": exc.message}})
        )
        return 1
    except (ParseError, OSError) as exc:
        sys.stdout.write(io.dump_json({"error": {"operation": "parse", "message": str(exc)}}))
        return 2
    sys.stdout.write(io.dump_json(out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
