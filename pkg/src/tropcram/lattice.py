"""Lattice polytopes with exact integer-point enumeration.

A polytope is given by integer points (not necessarily extremal). Facets are
recovered by brute force over point subsets inside the affine hull, which is
exact and fast at the sizes this package works with.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .errors import DomainError
from .linalg import affine_basis_indices, matrix_rank, solve_linear_system

Point = tuple[int, ...]


def _nullspace_vector(rows: list[list[Fraction]], ncols: int) -> Optional[list[Fraction]]:
    """One nonzero kernel vector of the row system, or None if full rank."""
    m = len(rows)
    a = [[Fraction(v) for v in row] for row in rows]
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [v / inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivot_of_col[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivot_of_col]
    if not free:
        return None
    x = [Fraction(0)] * ncols
    x[free[0]] = Fraction(1)
    for c, i in pivot_of_col.items():
        x[c] = -a[i][free[0]]
    return x


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points, with its lattice points enumerated."""

    dimension: int
    vertices: tuple[Point, ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError("lattice_polytope", "dimension must be >= 1")
        if not self.vertices:
            raise DomainError("lattice_polytope", "vertex list is empty")
        for v in self.vertices:
            if len(v) != self.dimension:
                raise DomainError("lattice_polytope", f"vertex {v} has wrong dimension")
            if not all(isinstance(c, int) for c in v):
                raise DomainError("lattice_polytope", f"vertex {v} is not integral")

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]]) -> "LatticePolytope":
        pts = [tuple(int(c) for c in p) for p in points]
        return cls(len(pts[0]), tuple(sorted(set(pts))))

    @cached_property
    def _frame(self) -> tuple[tuple[Fraction, ...], list[list[Fraction]]]:
        """Base point and affine basis difference vectors of the hull."""
        pts = [tuple(Fraction(c) for c in v) for v in self.vertices]
        base = pts[0]
        basis_idx = affine_basis_indices(pts)
        basis = [[pts[i][k] - base[k] for k in range(self.dimension)] for i in basis_idx[1:]]
        return base, basis

    @cached_property
    def _facets(self) -> list:
        """Facet inequalities (a, c) in hull coordinates, meaning a . t <= c."""
        base, basis = self._frame
        d = len(basis)
        pts = [tuple(Fraction(c) for c in v) for v in self.vertices]
        coords = [self._hull_coords_of(p, base, basis) for p in pts]
        inequalities = []
        if d >= 1:
            seen = set()
            for sub in combinations(range(len(coords)), d):
                diffs = [
                    [coords[i][k] - coords[sub[0]][k] for k in range(d)] for i in sub[1:]
                ]
                if matrix_rank(diffs) != d - 1:
                    continue
                normal = _nullspace_vector(diffs, d) if d > 1 else [Fraction(1)]
                if normal is None:
                    continue
                c0 = sum(normal[k] * coords[sub[0]][k] for k in range(d))
                vals = [sum(normal[k] * q[k] for k in range(d)) for q in coords]
                if all(v <= c0 for v in vals):
                    a, c = normal, c0
                elif all(v >= c0 for v in vals):
                    a, c = [-x for x in normal], -c0
                else:
                    continue
                key = _normalize_ineq(a, c)
                if key not in seen:
                    seen.add(key)
                    inequalities.append((a, c))
        return inequalities

    def _hull_coords_of(self, p, base, basis) -> Optional[tuple[Fraction, ...]]:
        """Coordinates of p in the affine basis, or None if p is off the hull."""
        if not basis:
            return () if all(p[k] == base[k] for k in range(self.dimension)) else None
        cols = [[basis[j][k] for j in range(len(basis))] for k in range(self.dimension)]
        rhs = [p[k] - base[k] for k in range(self.dimension)]
        sol = solve_linear_system(cols, rhs)
        if sol is None:
            return None
        return tuple(sol)

    def contains(self, point: Sequence) -> bool:
        """Exact membership test for a rational point."""
        p = tuple(Fraction(c) for c in point)
        if len(p) != self.dimension:
            raise DomainError("lattice_polytope", "point has wrong dimension")
        base, basis = self._frame
        t = self._hull_coords_of(p, base, basis)
        if t is None:
            return False
        return all(sum(a[k] * t[k] for k in range(len(t))) <= c for a, c in self._facets)

    @cached_property
    def lattice_points(self) -> tuple[Point, ...]:
        """All integer points of the hull, in ascending lexicographic order."""
        lo = [min(v[k] for v in self.vertices) for k in range(self.dimension)]
        hi = [max(v[k] for v in self.vertices) for k in range(self.dimension)]
        pts = []
        for cand in product(*(range(lo[k], hi[k] + 1) for k in range(self.dimension))):
            if self.contains(cand):
                pts.append(cand)
        return tuple(sorted(pts))

    @property
    def size(self) -> int:
        return len(self.lattice_points)

    def index_of(self, point: Sequence[int]) -> int:
        p = tuple(int(c) for c in point)
        try:
            return self.lattice_points.index(p)
        except ValueError:
            raise DomainError("lattice_polytope", f"{p} is not a lattice point of the polytope")


def _normalize_ineq(a: list[Fraction], c: Fraction):
    lead = next(x for x in a if x != 0)
    return (tuple(x / abs(lead) for x in a), c / abs(lead))
