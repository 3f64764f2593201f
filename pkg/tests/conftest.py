import random
from fractions import Fraction

import pytest

import tropcram as tc
from tropcram import hull
from tropcram.core import lifted_hull


@pytest.fixture
def honeycomb() -> tc.TropPolynomial:
    """Conic whose dual subdivision is the four-triangle honeycomb."""
    return tc.TropPolynomial.from_dict(
        2, {(0, 0): 2, (1, 0): 0, (0, 1): 0, (2, 0): 2, (1, 1): 0, (0, 2): 2}
    )


@pytest.fixture
def flat_conic() -> tc.TropPolynomial:
    return tc.TropPolynomial.from_dict(
        2, {(0, 0): 0, (1, 0): 0, (0, 1): 0, (2, 0): 0, (1, 1): 0, (0, 2): 0}
    )


@pytest.fixture
def trop_line() -> tc.TropPolynomial:
    return tc.TropPolynomial.from_dict(2, {(0, 0): 0, (1, 0): 3, (0, 1): -2})


def random_weights(rng: random.Random, total: int) -> list[int]:
    """A random composition of `total` into positive parts."""
    parts = []
    left = total
    while left > 0:
        w = rng.randint(1, left)
        parts.append(w)
        left -= w
    rng.shuffle(parts)
    return parts


def random_matrix(rng: random.Random, num_cols: int, total_weight: int, lo=-5, hi=5) -> tc.TwMatrix:
    weights = random_weights(rng, total_weight)
    rows = [[Fraction(rng.randint(lo, hi)) for _ in range(num_cols)] for _ in weights]
    return tc.TwMatrix.from_rows(rows, weights)


def curve_samples(f: tc.TropPolynomial) -> dict[frozenset, tuple]:
    """A point in the relative interior of each dual region of each curve cell.

    Keys are tie sets (frozensets of monomials) of size at least 2; every
    returned point is verified to have exactly that tie set.
    """
    fs = tc.saturate(f)
    lh = lifted_hull(fs)
    assert lh.full_dimensional, "sampling needs a full-dimensional support"
    samples: dict[frozenset, tuple] = {}
    vertex_of = {}
    for pl in lh.planes:
        y = tuple(-s for s in pl.slope)
        assert tc.evaluate(fs, y).argmin == pl.cell
        vertex_of[pl.cell] = y
        samples[pl.cell] = y
    owners: dict[frozenset, list[frozenset]] = {}
    for pl in lh.planes:
        for face in hull.cell_faces(lh, pl.cell):
            if len(face) >= 2:
                owners.setdefault(face, []).append(pl.cell)
    for face, cells in owners.items():
        if len(cells) == 2:
            a, b = vertex_of[cells[0]], vertex_of[cells[1]]
            y = tuple((ai + bi) / 2 for ai, bi in zip(a, b))
        else:
            (cell,) = cells
            direction = _boundary_direction(face, cell)
            start = vertex_of[cell]
            step = Fraction(1)
            while True:
                y = tuple(s + step * d for s, d in zip(start, direction))
                if tc.evaluate(fs, y).argmin == face:
                    break
                step /= 2
                assert step > Fraction(1, 2**40), "probe failed to localize the face"
        assert tc.evaluate(fs, y).argmin == face
        samples[face] = y
    return samples


def _boundary_direction(face: frozenset, cell: frozenset) -> tuple:
    from math import gcd

    pts = sorted(face)
    if len(pts[0]) == 1:
        return (Fraction(0),)
    a, b = pts[0], pts[-1]
    dx, dy = b[0] - a[0], b[1] - a[1]
    g = gcd(abs(dx), abs(dy))
    dx, dy = dx // g, dy // g
    normal = (dy, -dx)
    cx = Fraction(sum(p[0] for p in cell), len(cell))
    cy = Fraction(sum(p[1] for p in cell), len(cell))
    if (cx - a[0]) * normal[0] + (cy - a[1]) * normal[1] > 0:
        normal = (-normal[0], -normal[1])
    return (-normal[0], -normal[1])


def random_on_curve_conditions(
    rng: random.Random, f: tc.TropPolynomial, total: int, tries: int = 200
) -> list[tc.PointCondition]:
    """Conditions with distinct tie cells whose multiplicities sum to total."""
    samples = list(curve_samples(f).items())
    for _ in range(tries):
        rng.shuffle(samples)
        conds = []
        left = total
        for cell, point in samples:
            if left == 0:
                break
            cap = len(cell) - 1
            if cap < 1:
                continue
            if rng.random() < 0.25 and len(conds) < len(samples) - 1:
                continue
            m = rng.randint(1, min(cap, left))
            conds.append(tc.PointCondition.make(point, m))
            left -= m
        if left == 0 and conds:
            return conds
    raise AssertionError("could not assemble conditions for this curve")


def strip_subdivision() -> tc.LatticeSubdivision:
    """Two unit squares side by side, with all faces."""
    poly = tc.LatticePolytope(2, ((0, 0), (2, 0), (0, 1), (2, 1)))
    pts = poly.lattice_points
    idx = {p: i for i, p in enumerate(pts)}

    def cell(*points):
        return [idx[p] for p in points]

    cells = [
        cell((0, 0), (0, 1), (1, 0), (1, 1)),
        cell((1, 0), (1, 1), (2, 0), (2, 1)),
        cell((0, 0), (0, 1)),
        cell((0, 0), (1, 0)),
        cell((0, 1), (1, 1)),
        cell((1, 0), (1, 1)),
        cell((1, 0), (2, 0)),
        cell((1, 1), (2, 1)),
        cell((2, 0), (2, 1)),
    ] + [[i] for i in range(len(pts))]
    return tc.LatticeSubdivision.from_cells(poly, cells)


def all_weightings(sub: tc.LatticeSubdivision, total: int):
    """Every weighting of the subdivision with the given total weight."""
    cells = [c for c in sub.cells if len(c) >= 2]
    caps = [len(c) - 1 for c in cells]

    def rec(i, left, current):
        if i == len(cells):
            if left == 0:
                yield tc.Weighting.from_dict(sub, dict(current))
            return
        hi = min(caps[i], left)
        for w in range(hi + 1):
            if w:
                current.append((cells[i], w))
            yield from rec(i + 1, left - w, current)
            if w:
                current.pop()

    yield from rec(0, total, [])
