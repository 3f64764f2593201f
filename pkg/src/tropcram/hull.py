"""Lower convex hulls of lifted lattice points.

Heights over a point configuration induce a polyhedral subdivision of the
configuration's hull: the domains where single affine functions support the
lifted points from below. This module finds those supporting functions and
the point sets they touch, exactly, for configurations of affine dimension
at most 2 (dimension of the ambient space may be larger).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .errors import DomainError
from .linalg import affine_basis_indices, affine_rank, solve_linear_system

Point = tuple[int, ...]


@dataclass(frozen=True)
class SupportPlane:
    """Affine function alpha + <slope, t> touching the lift exactly on `cell`.

    Coordinates `t` are working coordinates: the ambient ones when the
    configuration is full-dimensional, else coordinates in an affine basis
    of the configuration.
    """

    cell: frozenset[Point]
    alpha: Fraction
    slope: tuple[Fraction, ...]


@dataclass(frozen=True)
class LowerHull:
    points: tuple[Point, ...]
    working_dim: int
    full_dimensional: bool
    planes: tuple[SupportPlane, ...]
    _coords: Mapping[Point, tuple[Fraction, ...]]

    def coords(self, p: Point) -> tuple[Fraction, ...]:
        return self._coords[p]

    def envelope(self, p: Point) -> Fraction:
        """Value of the lower hull at a configuration point."""
        t = self._coords[p]
        return max(pl.alpha + _dot(pl.slope, t) for pl in self.planes)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum(x * y for x, y in zip(a, b))


def lower_hull(heights: Mapping[Point, Fraction]) -> LowerHull:
    """Supporting planes and their touch sets for the lifted configuration.

    Raises DomainError if the points affinely span more than 2 dimensions.
    """
    points = sorted(heights)
    n = len(points[0])
    d = affine_rank(points)
    if d > 2:
        raise DomainError("lower_hull", "configurations of affine dimension > 2 are not supported")
    full = d == n
    if full:
        coords = {p: tuple(Fraction(c) for c in p) for p in points}
    else:
        frac_pts = [tuple(Fraction(c) for c in p) for p in points]
        base = frac_pts[0]
        bidx = affine_basis_indices(frac_pts)
        basis = [[frac_pts[i][k] - base[k] for k in range(n)] for i in bidx[1:]]
        coords = {}
        for p, fp in zip(points, frac_pts):
            if basis:
                cols = [[basis[j][k] for j in range(len(basis))] for k in range(n)]
                sol = solve_linear_system(cols, [fp[k] - base[k] for k in range(n)])
                assert sol is not None
                coords[p] = tuple(sol)
            else:
                coords[p] = ()

    if d == 0:
        p = points[0]
        plane = SupportPlane(frozenset({p}), Fraction(heights[p]), ())
        return LowerHull(tuple(points), 0, full, (plane,), coords)

    planes: dict[frozenset[Point], SupportPlane] = {}
    for sub in combinations(points, d + 1):
        if affine_rank([coords[p] for p in sub]) != d:
            continue
        # solve alpha + <w, t> = h on the subset
        rows = [[Fraction(1)] + list(coords[p]) for p in sub]
        sol = solve_linear_system(rows, [Fraction(heights[p]) for p in sub])
        assert sol is not None
        alpha, w = sol[0], tuple(sol[1:])
        values = {p: alpha + _dot(w, coords[p]) for p in points}
        if any(Fraction(heights[p]) < values[p] for p in points):
            continue
        cell = frozenset(p for p in points if Fraction(heights[p]) == values[p])
        planes.setdefault(cell, SupportPlane(cell, alpha, w))
    assert planes, "a bounded lift always has at least one supporting plane"
    ordered = tuple(planes[c] for c in sorted(planes, key=lambda c: sorted(c)))
    return LowerHull(tuple(points), d, full, ordered, coords)


def cell_faces(hull: LowerHull, cell: frozenset[Point]) -> set[frozenset[Point]]:
    """Proper faces of one hull cell, as subsets of the configuration.

    For a segment these are its two endpoints; for a polygon its boundary
    edges (with every configuration point lying on them) and corners.
    """
    pts = sorted(cell)
    d = affine_rank(pts)
    faces: set[frozenset[Point]] = set()
    if d == 0:
        return faces
    if d == 1:
        key = lambda p: hull.coords(p)
        faces.add(frozenset({min(pts, key=key)}))
        faces.add(frozenset({max(pts, key=key)}))
        return faces
    coords = {p: hull.coords(p) for p in pts}
    corners = convex_polygon_hull([coords[p] for p in pts])
    corner_pts = [pts[[coords[p] for p in pts].index(c)] for c in corners]
    for a, b in zip(corner_pts, corner_pts[1:] + corner_pts[:1]):
        edge = frozenset(p for p in pts if _on_segment(coords[a], coords[b], coords[p]))
        faces.add(edge)
        faces.add(frozenset({a}))
    return faces


def convex_polygon_hull(pts2: Sequence[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Corners of the convex hull of 2-d points, counterclockwise."""
    uniq = sorted(set(pts2))
    if len(uniq) <= 2:
        return uniq

    def half(points):
        out = []
        for p in points:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(uniq)
    upper = half(list(reversed(uniq)))
    return lower[:-1] + upper[:-1]


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(a, b, p) -> bool:
    if _cross(a, b, p) != 0:
        return False
    return all(min(ak, bk) <= pk <= max(ak, bk) for ak, bk, pk in zip(a, b, p))
