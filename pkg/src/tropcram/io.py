"""JSON schemas for every object the CLI reads or writes.

Rationals serialize as canonical lowest-terms "p/q" strings, or as plain
integers when the denominator is 1. Floats are rejected: all inputs must be
exact.
"""

import json
from fractions import Fraction
from typing import Any, Sequence

from .core import TropPolynomial
from .errors import ParseError
from .geometry import LatticeSubdivision, PointCondition, Weighting
from .hypergraph import Hypergraph, LinkageHypergraph
from .lattice import LatticePolytope
from .twla import Partition, TwMatrix


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {value!r}: {exc}") from None
    raise ParseError(f"expected an int or 'p/q' string, got {value!r}")


def format_rational(value: Fraction) -> Any:
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def _require(obj: dict, key: str, kind: type) -> Any:
    if key not in obj:
        raise ParseError(f"missing key {key!r}")
    val = obj[key]
    if kind is not object and not isinstance(val, kind):
        raise ParseError(f"key {key!r} should be {kind.__name__}")
    return val


def load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None


def matrix_from_json(obj: Any) -> TwMatrix:
    if not isinstance(obj, dict):
        raise ParseError("matrix document must be an object")
    weights = _require(obj, "weights", list)
    rows = _require(obj, "rows", list)
    if not all(isinstance(w, int) for w in weights):
        raise ParseError("weights must be integers")
    parsed = [[parse_rational(v) for v in row] for row in rows]
    return TwMatrix.from_rows(parsed, weights)


def matrix_to_json(A: TwMatrix) -> dict:
    return {
        "weights": list(A.weights),
        "rows": [[format_rational(v) for v in row] for row in A.entries],
    }


def vector_from_json(obj: Any) -> tuple[Fraction, ...]:
    if not isinstance(obj, dict):
        raise ParseError("vector document must be an object")
    vec = _require(obj, "vector", list)
    return tuple(parse_rational(v) for v in vec)


def vector_to_json(vec: Sequence[Fraction]) -> dict:
    return {"vector": [format_rational(v) for v in vec]}


def polynomial_from_json(obj: Any) -> TropPolynomial:
    if not isinstance(obj, dict):
        raise ParseError("polynomial document must be an object")
    dim = _require(obj, "dim", int)
    terms = _require(obj, "terms", list)
    coeffs = {}
    for t in terms:
        if not isinstance(t, dict):
            raise ParseError("each term must be an object")
        exp = _require(t, "exp", list)
        if not all(isinstance(e, int) for e in exp):
            raise ParseError("exponents must be integers")
        coeffs[tuple(exp)] = parse_rational(_require(t, "coef", object))
    if not coeffs:
        raise ParseError("polynomial has no terms")
    return TropPolynomial.from_dict(dim, coeffs)


def polynomial_to_json(f: TropPolynomial) -> dict:
    return {
        "dim": f.dimension,
        "terms": [
            {"exp": list(m), "coef": format_rational(c)} for m, c in f.terms
        ],
    }


def polytope_from_json(obj: Any) -> LatticePolytope:
    if not isinstance(obj, dict):
        raise ParseError("polytope document must be an object")
    dim = _require(obj, "dim", int)
    verts = _require(obj, "vertices", list)
    for v in verts:
        if not isinstance(v, list) or not all(isinstance(c, int) for c in v):
            raise ParseError("polytope vertices must be integer vectors")
    return LatticePolytope(dim, tuple(tuple(v) for v in verts))


def polytope_to_json(p: LatticePolytope) -> dict:
    return {"dim": p.dimension, "vertices": [list(v) for v in p.vertices]}


def conditions_from_json(obj: Any) -> list[PointCondition]:
    if not isinstance(obj, dict):
        raise ParseError("conditions document must be an object")
    conds = _require(obj, "conditions", list)
    out = []
    for c in conds:
        if not isinstance(c, dict):
            raise ParseError("each condition must be an object")
        point = [parse_rational(v) for v in _require(c, "point", list)]
        mult = _require(c, "mult", int)
        out.append(PointCondition.make(point, mult))
    return out


def conditions_to_json(conds: Sequence[PointCondition]) -> dict:
    return {
        "conditions": [
            {"point": [format_rational(x) for x in c.point], "mult": c.mult} for c in conds
        ]
    }


def hypergraph_from_json(obj: Any) -> Hypergraph:
    if not isinstance(obj, dict):
        raise ParseError("hypergraph document must be an object")
    n = _require(obj, "vertices", int)
    edges = _require(obj, "edges", list)
    for e in edges:
        if not isinstance(e, list) or not all(isinstance(v, int) for v in e):
            raise ParseError("edges must be lists of 0-based vertex indices")
    return Hypergraph.from_lists(n, edges)


def hypergraph_to_json(g: Hypergraph) -> dict:
    return {"vertices": g.num_vertices, "edges": [sorted(e) for e in g.edges]}


def subdivision_from_json(obj: Any) -> LatticeSubdivision:
    if not isinstance(obj, dict):
        raise ParseError("subdivision document must be an object")
    polytope = polytope_from_json(_require(obj, "polytope", dict))
    cells = _require(obj, "cells", list)
    for c in cells:
        if not isinstance(c, list) or not all(isinstance(i, int) for i in c):
            raise ParseError("cells must be lists of lattice point indices")
    return LatticeSubdivision.from_cells(polytope, cells)


def subdivision_to_json(sub: LatticeSubdivision) -> dict:
    return {
        "polytope": polytope_to_json(sub.polytope),
        "lattice_points": [list(p) for p in sub.polytope.lattice_points],
        "cells": [sorted(c) for c in sub.cells],
    }


def weighting_from_json(obj: Any, sub: LatticeSubdivision) -> Weighting:
    if not isinstance(obj, dict):
        raise ParseError("weighting document must be an object")
    entries = _require(obj, "mu", list)
    weights = {}
    for e in entries:
        if not isinstance(e, dict):
            raise ParseError("each weight entry must be an object")
        cell = _require(e, "cell", list)
        if not all(isinstance(i, int) for i in cell):
            raise ParseError("weighted cells are lists of lattice point indices")
        weights[frozenset(cell)] = _require(e, "weight", int)
    return Weighting.from_dict(sub, weights)


def weighting_to_json(w: Weighting) -> dict:
    return {"mu": [{"cell": sorted(c), "weight": wt} for c, wt in w.mu]}


def partition_to_json(p: Partition) -> list[list[int]]:
    """Partitions are reported with 1-based column numbers."""
    return [[j + 1 for j in block] for block in p]


def dump_json(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"
