"""Dual subdivisions of polynomials, weightings, rigidity, and curve fitting.

A subdivision stores each cell as the set of indices of the lattice points
lying on it, in the polytope's canonical (ascending lexicographic) point
order. Weightings assign each cell a non-negative integer below its point
count; a set of lattice points is deformable when it meets every weighted
cell either not at all or beyond its weight, and a weighting is rigid when
no admissible set is deformable.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from . import hull
from .core import Monomial, TropPolynomial, evaluate, multiplicity_at, saturate
from .errors import DomainError
from .lattice import LatticePolytope
from .linalg import affine_rank
from .twla import TwMatrix, cramer_solve

RIGIDITY_SEARCH_LIMIT = 16

DeformationWitness = frozenset[int]


@dataclass(frozen=True)
class LatticeSubdivision:
    polytope: LatticePolytope
    cells: tuple[frozenset[int], ...]

    def __post_init__(self):
        size = self.polytope.size
        seen = set()
        for cell in self.cells:
            if not cell:
                raise DomainError("lattice_subdivision", "empty cell")
            if any(not 0 <= i < size for i in cell):
                raise DomainError("lattice_subdivision", "cell index out of range")
            if cell in seen:
                raise DomainError("lattice_subdivision", "duplicate cell")
            seen.add(cell)
        if list(self.cells) != sorted(self.cells, key=_cell_key):
            raise DomainError("lattice_subdivision", "cells must be sorted; use from_cells")

    @classmethod
    def from_cells(
        cls, polytope: LatticePolytope, cells: Iterable[Iterable[int]]
    ) -> "LatticeSubdivision":
        canon = sorted({frozenset(int(i) for i in c) for c in cells}, key=_cell_key)
        return cls(polytope, tuple(canon))

    def cell_points(self, cell: frozenset[int]) -> tuple[tuple[int, ...], ...]:
        pts = self.polytope.lattice_points
        return tuple(pts[i] for i in sorted(cell))

    def cell_dim(self, cell: frozenset[int]) -> int:
        return affine_rank(self.cell_points(cell))

    @cached_property
    def vertex_cells(self) -> frozenset[int]:
        """Indices of lattice points that appear as 0-dimensional cells."""
        return frozenset(next(iter(c)) for c in self.cells if len(c) == 1)


def _cell_key(cell: frozenset[int]):
    return (len(cell), tuple(sorted(cell)))


@dataclass(frozen=True)
class PointCondition:
    point: tuple[Fraction, ...]
    mult: int

    def __post_init__(self):
        if self.mult < 1:
            raise DomainError("point_condition", "multiplicity must be at least 1")

    @classmethod
    def make(cls, point: Sequence, mult: int) -> "PointCondition":
        return cls(tuple(Fraction(c) for c in point), int(mult))


@dataclass(frozen=True)
class Weighting:
    subdivision: LatticeSubdivision
    mu: tuple[tuple[frozenset[int], int], ...]

    def __post_init__(self):
        cells = set(self.subdivision.cells)
        seen = set()
        for cell, w in self.mu:
            if cell not in cells:
                raise DomainError("weighting", "weight on a set that is not a cell")
            if cell in seen:
                raise DomainError("weighting", "duplicate weighted cell")
            seen.add(cell)
            if not 0 <= w <= len(cell) - 1:
                raise DomainError(
                    "weighting", f"weight {w} outside [0, {len(cell) - 1}] for a cell"
                )
        if list(self.mu) != sorted(self.mu, key=lambda cw: _cell_key(cw[0])):
            raise DomainError("weighting", "weights must be sorted; use from_dict")

    @classmethod
    def from_dict(
        cls, subdivision: LatticeSubdivision, weights: Mapping[frozenset[int], int]
    ) -> "Weighting":
        canon = sorted(
            ((frozenset(c), int(w)) for c, w in weights.items() if w != 0),
            key=lambda cw: _cell_key(cw[0]),
        )
        return cls(subdivision, tuple(canon))

    @cached_property
    def weight_of(self) -> dict[frozenset[int], int]:
        return dict(self.mu)

    def weight(self, cell: frozenset[int]) -> int:
        return self.weight_of.get(cell, 0)

    @property
    def total(self) -> int:
        return sum(w for _, w in self.mu)

    def full_cells(self) -> list[frozenset[int]]:
        """Cells carrying their maximal weight; every singleton cell qualifies."""
        return [c for c in self.subdivision.cells if self.weight(c) == len(c) - 1]

    def deficient_cells(self) -> list[frozenset[int]]:
        return [c for c, w in self.mu if 0 < w < len(c) - 1]

    def is_full(self) -> bool:
        return not self.deficient_cells()


def dual_complex(f: TropPolynomial) -> LatticeSubdivision:
    """Subdivision of the support hull induced by lifting by coefficients.

    The input is saturated first (which does not change the hypersurface);
    cells are the sets of support points touched by each supporting affine
    function together with all of their faces.
    """
    fs = saturate(f)
    lh = hull.lower_hull({m: c for m, c in fs.terms})
    cell_sets: set[frozenset[Monomial]] = set()
    for plane in lh.planes:
        cell_sets.add(plane.cell)
        cell_sets.update(hull.cell_faces(lh, plane.cell))
    polytope = LatticePolytope.from_points(fs.support)
    index = {p: i for i, p in enumerate(polytope.lattice_points)}
    return LatticeSubdivision.from_cells(
        polytope, [frozenset(index[p] for p in cs) for cs in cell_sets]
    )


def is_lattice_simplicial(subdivision: LatticeSubdivision) -> bool:
    """Every d-dimensional cell has exactly d + 1 lattice points."""
    return all(
        len(cell) == subdivision.cell_dim(cell) + 1 for cell in subdivision.cells
    )


def weighting_from_points(
    f: TropPolynomial, conditions: Sequence[PointCondition]
) -> Weighting:
    """Weight each condition's tie cell by its required multiplicity.

    Conditions must sit on the hypersurface with enough multiplicity and no
    two of them may share a tie cell.
    """
    subdivision = dual_complex(f)
    index = {p: i for i, p in enumerate(subdivision.polytope.lattice_points)}
    weights: dict[frozenset[int], int] = {}
    for cond in conditions:
        ev = evaluate(f, cond.point)
        if len(ev.argmin) - 1 < cond.mult:
            raise DomainError(
                "weighting_from_points",
                f"multiplicity {len(ev.argmin) - 1} at {cond.point} is below {cond.mult}",
            )
        cell = frozenset(index[m] for m in ev.argmin)
        if cell not in set(subdivision.cells):
            raise DomainError(
                "weighting_from_points", "tie set at a point is not a cell; saturate first"
            )
        if cell in weights:
            raise DomainError(
                "weighting_from_points", "two conditions share the same cell"
            )
        weights[cell] = cond.mult
    return Weighting.from_dict(subdivision, weights)


def used(L: Iterable[int], weighting: Weighting) -> int:
    """Total weight of cells already met beyond their weight by L."""
    ls = frozenset(L)
    return sum(w for cell, w in weighting.mu if len(cell & ls) >= w + 1)


def is_deformable(L: Iterable[int], weighting: Weighting) -> bool:
    """Does L meet every weighted cell either not at all or beyond its weight?"""
    ls = frozenset(L)
    if not ls:
        raise DomainError("is_deformable", "the set must be nonempty")
    if weighting.subdivision.vertex_cells <= ls:
        raise DomainError("is_deformable", "the set must not contain all vertex cells")
    return _deformable_raw(ls, weighting.mu)


def _deformable_raw(ls: frozenset[int], mu: Sequence[tuple[frozenset[int], int]]) -> bool:
    for cell, w in mu:
        k = len(cell & ls)
        if 0 < k < w + 1:
            return False
    return True


def supp_components(weighting: Weighting) -> list[frozenset[int]]:
    """Lattice-point sets of the connected components of the full cells."""
    full = weighting.full_cells()
    parent = list(range(len(full)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in combinations(range(len(full)), 2):
        if full[a] & full[b]:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, set[int]] = {}
    for i in range(len(full)):
        groups.setdefault(find(i), set()).update(full[i])
    return sorted((frozenset(g) for g in groups.values()), key=lambda s: sorted(s))


def supp_connected(weighting: Weighting) -> bool:
    return len(supp_components(weighting)) <= 1


def is_rigid(weighting: Weighting) -> tuple[bool, Optional[DeformationWitness]]:
    """Whether no admissible set is deformable; a witness when one is.

    On lattice simplicial subdivisions whose total weight is one less than
    the lattice point count, rigidity is equivalent to the full cells being
    connected with no deficient cell, which is decided without search; the
    witness for the non-rigid case still comes from a search (or, past the
    search cap, from the connectivity structure itself).
    """
    sub = weighting.subdivision
    size = sub.polytope.size
    covered = {i for c in sub.cells if len(c) == 1 for i in c}
    fast = (
        is_lattice_simplicial(sub)
        and weighting.total == size - 1
        and covered == set(range(size))
    )
    if fast:
        rigid = weighting.is_full() and supp_connected(weighting)
        if rigid:
            return True, None
        if size <= RIGIDITY_SEARCH_LIMIT:
            witness = _search_witness(weighting)
            assert witness is not None, "non-rigid weightings admit a witness"
        else:
            witness = _constructive_witness(weighting)
        return False, witness
    if size > RIGIDITY_SEARCH_LIMIT:
        raise DomainError(
            "is_rigid", f"exhaustive search capped at {RIGIDITY_SEARCH_LIMIT} lattice points"
        )
    witness = _search_witness(weighting)
    return (witness is None), witness


def _search_witness(weighting: Weighting) -> Optional[DeformationWitness]:
    """First deformable admissible set, by size then lexicographic order."""
    sub = weighting.subdivision
    size = sub.polytope.size
    vertex_cells = sub.vertex_cells
    for k in range(1, size + 1):
        for combo in combinations(range(size), k):
            ls = frozenset(combo)
            if vertex_cells <= ls:
                continue
            if _deformable_raw(ls, weighting.mu):
                return ls
    return None


def _constructive_witness(weighting: Weighting) -> DeformationWitness:
    """Witness for a non-rigid weighting in the simplicial, tight-count case.

    Mirrors the structure of the rigidity criterion: a disconnected full
    part yields a component (or its complement); a deficient cell meeting a
    component twice seeds a set that is completed greedily while its used
    weight stays at least its size.
    """
    comps = supp_components(weighting)
    deficient = weighting.deficient_cells()
    for cell in deficient:
        meeting = [c for c in comps if cell & c]
        seed = [c for c in meeting if len(cell & c) >= 2]
        if seed:
            chosen = [seed[0]]
            rest = [c for c in meeting if c is not seed[0]]
            while len(cell & frozenset().union(*chosen)) <= weighting.weight(cell):
                chosen.append(rest.pop(0))
            ls = set().union(*chosen)
            while not _deformable_raw(frozenset(ls), weighting.mu):
                violated = next(
                    c
                    for c, w in weighting.mu
                    if 0 < len(c & ls) < w + 1
                )
                need = weighting.weight(violated) + 1 - len(violated & ls)
                ls.update(sorted(violated - ls)[:need])
            ls = frozenset(ls)
            assert used(ls, weighting) >= len(ls)
            assert not weighting.subdivision.vertex_cells <= ls
            return ls
    if weighting.is_full():
        assert len(comps) >= 2, "a rigid-looking full weighting cannot reach this point"
        return comps[0]
    # deficient cells all meet each component at most once: drop one component
    assert len(comps) >= 2
    all_points = frozenset(range(weighting.subdivision.polytope.size))
    ls = all_points - comps[0]
    assert _deformable_raw(ls, weighting.mu)
    return ls


def fit_hypersurface(
    polytope: LatticePolytope, conditions: Sequence[PointCondition]
) -> tuple[TropPolynomial, bool]:
    """Coefficients through weighted point conditions, via maximal minors.

    Rows evaluate the lattice monomials at each condition point and carry
    the condition's multiplicity as weight; the minors give coefficients
    whose hypersurface meets every condition, uniquely iff all minors are
    non-singular.
    """
    pts = polytope.lattice_points
    total = sum(c.mult for c in conditions)
    if total != len(pts) - 1:
        raise DomainError(
            "fit_hypersurface",
            f"multiplicities sum to {total}, need {len(pts) - 1}",
        )
    rows = [
        [sum(Fraction(e) * x for e, x in zip(mono, cond.point)) for mono in pts]
        for cond in conditions
    ]
    A = TwMatrix.from_rows(rows, [c.mult for c in conditions])
    vec, unique = cramer_solve(A)
    f = TropPolynomial.from_dict(
        polytope.dimension, {pts[j]: vec[j] for j in range(len(pts))}, polytope
    )
    for cond in conditions:
        assert multiplicity_at(f, cond.point) >= cond.mult
    return f, unique


def deform(f: TropPolynomial, subset: Iterable[Monomial], eps) -> TropPolynomial:
    """Decrease the coefficients of the chosen monomials by eps."""
    epsilon = Fraction(eps)
    if epsilon <= 0:
        raise DomainError("deform", "eps must be positive")
    chosen = {tuple(int(e) for e in m) for m in subset}
    missing = chosen - set(f.support)
    if missing:
        raise DomainError("deform", f"monomials {sorted(missing)} are not in the support")
    return f.with_coeffs(
        {m: (c - epsilon if m in chosen else c) for m, c in f.terms}
    )
