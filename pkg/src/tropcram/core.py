"""Min-plus polynomials: evaluation, point multiplicity, saturation.

Values live in the min-plus semiring over the rationals: addition is min,
multiplication is +. All arithmetic is exact; ties are exact equalities.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from . import hull
from .errors import DomainError
from .lattice import LatticePolytope

Monomial = tuple[int, ...]


def tadd(a: Fraction, b: Fraction) -> Fraction:
    """Semiring addition: min."""
    return min(a, b)


def tmul(a: Fraction, b: Fraction) -> Fraction:
    """Semiring multiplication: ordinary +."""
    return a + b


@dataclass(frozen=True)
class TropPolynomial:
    """Finite map from integer exponent vectors to exact rational coefficients.

    Exponent vectors must be lattice points of `polytope`; the term list is
    kept in ascending lexicographic order so equal polynomials compare equal.
    """

    dimension: int
    terms: tuple[tuple[Monomial, Fraction], ...]
    polytope: LatticePolytope

    def __post_init__(self):
        if not self.terms:
            raise DomainError("trop_polynomial", "term map is empty")
        seen = set()
        for mono, coef in self.terms:
            if len(mono) != self.dimension or not all(isinstance(e, int) for e in mono):
                raise DomainError("trop_polynomial", f"bad exponent vector {mono}")
            if not isinstance(coef, Fraction):
                raise DomainError("trop_polynomial", "coefficients must be Fractions")
            if mono in seen:
                raise DomainError("trop_polynomial", f"duplicate exponent vector {mono}")
            seen.add(mono)
        if list(self.terms) != sorted(self.terms):
            raise DomainError("trop_polynomial", "terms must be sorted; use from_dict")
        lat = set(self.polytope.lattice_points)
        for mono, _ in self.terms:
            if mono not in lat:
                raise DomainError(
                    "trop_polynomial", f"exponent vector {mono} outside the polytope"
                )

    @classmethod
    def from_dict(
        cls,
        dimension: int,
        coeffs: Mapping[Sequence[int], object],
        polytope: Optional[LatticePolytope] = None,
    ) -> "TropPolynomial":
        terms = tuple(
            sorted((tuple(int(e) for e in mono), Fraction(c)) for mono, c in coeffs.items())
        )
        if not terms:
            raise DomainError("trop_polynomial", "term map is empty")
        if polytope is None:
            polytope = LatticePolytope.from_points([m for m, _ in terms])
        return cls(dimension, terms, polytope)

    @cached_property
    def coeff(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    @property
    def support(self) -> tuple[Monomial, ...]:
        return tuple(m for m, _ in self.terms)

    def with_coeffs(self, coeffs: Mapping[Monomial, Fraction]) -> "TropPolynomial":
        return TropPolynomial.from_dict(self.dimension, coeffs, self.polytope)


@dataclass(frozen=True)
class EvalResult:
    min_value: Fraction
    argmin: frozenset[Monomial]


def evaluate(f: TropPolynomial, point: Sequence) -> EvalResult:
    """Minimum of coefficient + <exponent, point> and the monomials tying it."""
    x = tuple(Fraction(c) for c in point)
    if len(x) != f.dimension:
        raise DomainError("evaluate", f"point has dimension {len(x)}, expected {f.dimension}")
    values = {m: c + sum(e * xk for e, xk in zip(m, x)) for m, c in f.terms}
    best = min(values.values())
    return EvalResult(best, frozenset(m for m, v in values.items() if v == best))


def multiplicity_at(f: TropPolynomial, point: Sequence) -> int:
    """Number of tying monomials minus one; 0 exactly off the hypersurface."""
    return len(evaluate(f, point).argmin) - 1


def lifted_hull(f: TropPolynomial) -> hull.LowerHull:
    """Lower hull of the coefficient lift of f's support."""
    return hull.lower_hull({m: c for m, c in f.terms})


def saturate(f: TropPolynomial) -> TropPolynomial:
    """Drop every coefficient to the lower-hull envelope of the lift.

    The result defines the same hypersurface, is a fixed point of this map,
    and is the least decrease achieving that.
    """
    lh = lifted_hull(f)
    return f.with_coeffs({m: lh.envelope(m) for m, _ in f.terms})


def is_saturated(f: TropPolynomial) -> bool:
    lh = lifted_hull(f)
    return all(c == lh.envelope(m) for m, c in f.terms)
