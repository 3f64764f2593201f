"""Exact linear algebra over the rationals.

Gaussian elimination with Fraction arithmetic; no pivots are ever compared
by magnitude, only by being nonzero, so results are exact.
"""

from fractions import Fraction
from typing import Optional, Sequence


def solve_linear_system(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[list[Fraction]]:
    """Solve A x = b exactly.

    Returns one solution (free variables set to 0), or None if the system
    is inconsistent.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(n):
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
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = a[i][n]
    return x


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    a = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = a[rank][c]
        a[rank] = [v / inv for v in a[rank]]
        for i in range(m):
            if i != rank and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(p[k]) - Fraction(base[k]) for k in range(len(base))] for p in points[1:]]
    return matrix_rank(diffs)


def affine_basis_indices(points: Sequence[Sequence]) -> list[int]:
    """Indices of points forming an affine basis of the hull of `points`.

    The first returned index is 0; subsequent points are added greedily in
    input order whenever they increase the affine rank.
    """
    if not points:
        return []
    chosen = [0]
    dim = len(points[0])
    rows: list[list[Fraction]] = []
    for i in range(1, len(points)):
        cand = [Fraction(points[i][k]) - Fraction(points[0][k]) for k in range(dim)]
        if matrix_rank(rows + [cand]) > len(rows):
            rows.append(cand)
            chosen.append(i)
    return chosen
