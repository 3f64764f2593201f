"""Exact min-plus linear algebra with row multiplicities.

Weighted permanents and kernels, Cramer-style curve fitting through points
with multiplicities, dual subdivisions with rigidity tests, and brute-force
oracles for every production path.
"""

from .core import (
    EvalResult,
    TropPolynomial,
    evaluate,
    is_saturated,
    multiplicity_at,
    saturate,
)
from .errors import DomainError, ParseError
from .geometry import (
    LatticeSubdivision,
    PointCondition,
    Weighting,
    deform,
    dual_complex,
    fit_hypersurface,
    is_deformable,
    is_lattice_simplicial,
    is_rigid,
    used,
    weighting_from_points,
)
from .hypergraph import (
    GoodOrientation,
    Hypergraph,
    LinkageHypergraph,
    complementary_linkage,
    find_simple_cycle,
    game_rescale,
    good_orientations,
    graphify,
    hypergraph_stats,
)
from .lattice import LatticePolytope
from .twla import (
    PermResult,
    Rescaling,
    TwMatrix,
    alternate_kernel_vector,
    cramer_solve,
    is_tw_singular,
    kernel_witness_square,
    maximal_minors,
    normalize_by_kernel_vector,
    rescale_nonneg_zero_perm,
    tw_kernel_membership,
    tw_permanent,
)

__all__ = [
    "DomainError",
    "EvalResult",
    "GoodOrientation",
    "Hypergraph",
    "LatticePolytope",
    "LatticeSubdivision",
    "LinkageHypergraph",
    "ParseError",
    "PermResult",
    "PointCondition",
    "Rescaling",
    "TropPolynomial",
    "TwMatrix",
    "Weighting",
    "alternate_kernel_vector",
    "complementary_linkage",
    "cramer_solve",
    "deform",
    "dual_complex",
    "evaluate",
    "find_simple_cycle",
    "fit_hypersurface",
    "game_rescale",
    "good_orientations",
    "graphify",
    "hypergraph_stats",
    "is_deformable",
    "is_lattice_simplicial",
    "is_rigid",
    "is_saturated",
    "is_tw_singular",
    "kernel_witness_square",
    "maximal_minors",
    "multiplicity_at",
    "normalize_by_kernel_vector",
    "rescale_nonneg_zero_perm",
    "saturate",
    "tw_kernel_membership",
    "tw_permanent",
    "used",
    "weighting_from_points",
]
