"""Row-weighted min-plus matrices.

A matrix carries positive integer row weights m_i with K = sum(m_i). Its
permanent is the minimum, over ordered partitions of the columns into blocks
of sizes m_i, of the sum of selected entries; the matrix is singular when
two partitions tie. Kernel membership asks each row's minimum to be attained
at least m_i + 1 times. Small permanents are enumerated outright; larger
ones go through an exact min-cost b-matching with a residual-cycle test for
uniqueness.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Optional, Sequence

from . import matching
from .errors import DomainError

Partition = tuple[tuple[int, ...], ...]

BRUTE_LIMIT = 8


@dataclass(frozen=True)
class TwMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DomainError("tw_matrix", "matrix must have at least one row and column")
        if len({len(r) for r in self.entries}) != 1:
            raise DomainError("tw_matrix", "ragged rows")
        if len(self.weights) != len(self.entries):
            raise DomainError("tw_matrix", "one weight per row required")
        if any(not isinstance(w, int) or w < 1 for w in self.weights):
            raise DomainError("tw_matrix", "row weights must be positive integers")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], weights: Sequence[int]) -> "TwMatrix":
        return cls(
            tuple(tuple(Fraction(v) for v in row) for row in rows),
            tuple(int(w) for w in weights),
        )

    @property
    def num_rows(self) -> int:
        return len(self.entries)

    @property
    def num_cols(self) -> int:
        return len(self.entries[0])

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def drop_column(self, j: int) -> "TwMatrix":
        return TwMatrix(
            tuple(tuple(v for k, v in enumerate(row) if k != j) for row in self.entries),
            self.weights,
        )

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for row in self.entries for v in row)


@dataclass(frozen=True)
class PermResult:
    value: Fraction
    optimal: Partition
    singular: bool
    witness: Optional[Partition]


@dataclass(frozen=True)
class Rescaling:
    row_offsets: tuple[Fraction, ...]
    col_offsets: tuple[Fraction, ...]


@dataclass(frozen=True)
class RescaleResult:
    matrix: TwMatrix
    rescaling: Rescaling
    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]


def tw_kernel_membership(A: TwMatrix, x: Sequence) -> tuple[bool, tuple[int, ...]]:
    """Does each row's min of x_j + A_ij tie at least m_i + 1 times?"""
    vec = tuple(Fraction(v) for v in x)
    if len(vec) != A.num_cols:
        raise DomainError("tw_kernel_membership", "vector length does not match column count")
    counts = []
    ok = True
    for i, row in enumerate(A.entries):
        values = [xj + aij for xj, aij in zip(vec, row)]
        best = min(values)
        c = values.count(best)
        counts.append(c)
        if c < A.weights[i] + 1:
            ok = False
    return ok, tuple(counts)


def _partitions(columns: tuple[int, ...], weights: tuple[int, ...]) -> Iterator[Partition]:
    """All ordered partitions into blocks of the given sizes, in lex order."""
    if not weights:
        yield ()
        return
    m = weights[0]
    for block in combinations(columns, m):
        rest = tuple(c for c in columns if c not in block)
        for tail in _partitions(rest, weights[1:]):
            yield (block,) + tail


def partition_cost(A: TwMatrix, partition: Partition) -> Fraction:
    return sum(A.entries[i][j] for i, block in enumerate(partition) for j in block)


def tw_permanent(A: TwMatrix) -> PermResult:
    """Minimum selected-entry sum over ordered column partitions.

    The optimal partition reported is the lexicographically least one
    (blocks ascending, compared in row order); `witness` is a second optimal
    partition exactly when the matrix is singular.
    """
    if A.total_weight != A.num_cols:
        raise DomainError("tw_permanent", "sum of row weights must equal the column count")
    if A.num_cols <= BRUTE_LIMIT:
        return _perm_enumerate(A)
    return _perm_matching(A)


def _perm_enumerate(A: TwMatrix) -> PermResult:
    best: Optional[Fraction] = None
    first: Optional[Partition] = None
    second: Optional[Partition] = None
    for part in _partitions(tuple(range(A.num_cols)), A.weights):
        v = partition_cost(A, part)
        if best is None or v < best:
            best, first, second = v, part, None
        elif v == best and second is None:
            second = part
    assert best is not None and first is not None
    return PermResult(best, first, second is not None, second)


def _perm_matching(A: TwMatrix) -> PermResult:
    costs = [list(row) for row in A.entries]
    supplies = list(A.weights)
    value, owner = matching.solve_b_matching(costs, supplies)
    pot = matching.potentials(costs, supplies, owner)
    cycle = matching.zero_residual_cycle(costs, owner, pot)
    optimal = _lex_least_optimal(A, value)
    witness = None
    if cycle is not None:
        other = matching.apply_cycle(owner, cycle, A.num_rows)
        witness = _partition_of_owner(other, A.num_rows)
        if witness == optimal:
            witness = _partition_of_owner(owner, A.num_rows)
        assert witness != optimal and partition_cost(A, witness) == value
    return PermResult(value, optimal, cycle is not None, witness)


def _partition_of_owner(owner: Sequence[int], num_rows: int) -> Partition:
    blocks = [[] for _ in range(num_rows)]
    for j, i in enumerate(owner):
        blocks[i].append(j)
    return tuple(tuple(sorted(b)) for b in blocks)


def _lex_least_optimal(A: TwMatrix, value: Fraction) -> Partition:
    """Build the lex-least optimal partition by forcing columns row by row."""
    forced: dict[int, int] = {}
    blocks: list[tuple[int, ...]] = []
    for i in range(A.num_rows):
        block: list[int] = []
        for j in sorted(set(range(A.num_cols)) - set(forced)):
            if len(block) == A.weights[i]:
                break
            trial = dict(forced)
            trial[j] = i
            if _value_with_forced(A, trial) == value:
                forced[j] = i
                block.append(j)
        assert len(block) == A.weights[i]
        blocks.append(tuple(block))
    return tuple(blocks)


def _value_with_forced(A: TwMatrix, forced: dict[int, int]) -> Fraction:
    fixed_cost = sum(A.entries[i][j] for j, i in forced.items())
    remaining = [j for j in range(A.num_cols) if j not in forced]
    supplies = list(A.weights)
    for i in forced.values():
        supplies[i] -= 1
    if any(s < 0 for s in supplies):
        raise AssertionError("forced more columns than a row's weight")
    if not remaining:
        return fixed_cost
    costs = [[A.entries[i][j] for j in remaining] for i in range(A.num_rows)]
    sub_value, _ = matching.solve_b_matching(costs, supplies)
    return fixed_cost + sub_value


def is_tw_singular(A: TwMatrix) -> tuple[bool, Optional[Partition]]:
    """Whether two partitions tie the permanent; a second optimum if so."""
    res = tw_permanent(A)
    return res.singular, res.witness


def maximal_minors(A: TwMatrix) -> tuple[Fraction, ...]:
    """Permanent of A with column j removed, for each j."""
    if A.total_weight != A.num_cols - 1:
        raise DomainError("maximal_minors", "row weights must sum to one less than the columns")
    return tuple(tw_permanent(A.drop_column(j)).value for j in range(A.num_cols))


def minor_matrix(A: TwMatrix, j: int) -> TwMatrix:
    if not 0 <= j < A.num_cols:
        raise DomainError("maximal_minors", f"column index {j} out of range")
    return A.drop_column(j)


def cramer_solve(A: TwMatrix) -> tuple[tuple[Fraction, ...], bool]:
    """Kernel vector of a K = N-1 matrix from its maximal minors.

    The minor vector always lies in the kernel; it is the unique kernel
    vector up to additive scaling exactly when every minor is non-singular.
    """
    if A.total_weight != A.num_cols - 1:
        raise DomainError("cramer_solve", "row weights must sum to one less than the columns")
    results = [tw_permanent(A.drop_column(j)) for j in range(A.num_cols)]
    vec = tuple(r.value for r in results)
    unique = not any(r.singular for r in results)
    member, _ = tw_kernel_membership(A, vec)
    assert member, "minor vector must lie in the kernel"
    return vec, unique


def rescale_nonneg_zero_perm(A: TwMatrix) -> RescaleResult:
    """Permute columns and shift rows/columns to reach a canonical form.

    The output matrix B satisfies B[i][j] = A[i][perm[j]] - row_off[i]
    + col_off[j], is non-negative, has permanent 0, and the block-diagonal
    partition ({0..m_1-1}, {m_1..}, ...) is optimal with every selected
    entry equal to 0. Optimal partitions (hence singularity) correspond
    across the rescaling.
    """
    if A.total_weight != A.num_cols:
        raise DomainError("rescale_nonneg_zero_perm", "square case requires K = N")
    res = tw_permanent(A)
    col_perm = tuple(j for block in res.optimal for j in block)
    n = A.num_cols
    owner_row = []
    for i, block in enumerate(res.optimal):
        owner_row.extend([i] * len(block))
    # selected entries become zero via column shifts
    d = [A.entries[owner_row[j]][col_perm[j]] for j in range(n)]
    b = [[A.entries[i][col_perm[j]] - d[j] for j in range(n)] for i in range(A.num_rows)]
    # expand repeated rows and relax shortest walks; no negative cycles exist
    # because the expanded diagonal is an optimal zero permutation
    row_of = [i for i, w in enumerate(A.weights) for _ in range(w)]
    dist = [[b[row_of[u]][v] if u != v else Fraction(0) for v in range(n)] for u in range(n)]
    for mid in range(n):
        for u in range(n):
            du = dist[u][mid]
            for v in range(n):
                cand = du + dist[mid][v]
                if cand < dist[u][v]:
                    dist[u][v] = cand
    for u in range(n):
        assert dist[u][u] >= 0, "negative cycle despite zero permanent"
    c = [min(Fraction(0), min(dist[u])) for u in range(n)]
    first_of_row = {}
    for u, i in enumerate(row_of):
        first_of_row.setdefault(i, u)
        assert c[u] == c[first_of_row[i]], "potentials must agree on repeated rows"
    row_off = tuple(c[first_of_row[i]] for i in range(A.num_rows))
    col_off = tuple(c[j] - d[j] for j in range(n))
    out = TwMatrix(
        tuple(
            tuple(A.entries[i][col_perm[j]] - row_off[i] + col_off[j] for j in range(n))
            for i in range(A.num_rows)
        ),
        A.weights,
    )
    assert out.is_nonnegative()
    start = 0
    for i, w in enumerate(A.weights):
        assert all(out.entries[i][j] == 0 for j in range(start, start + w))
        start += w
    return RescaleResult(out, Rescaling(row_off, col_off), tuple(range(A.num_rows)), col_perm)


def normalize_by_kernel_vector(A: TwMatrix, x: Sequence) -> TwMatrix:
    """Scale columns by a kernel vector, then shift each row's min to 0.

    The result is non-negative with the zero vector in its kernel.
    """
    member, _ = tw_kernel_membership(A, x)
    if not member:
        raise DomainError("normalize_by_kernel_vector", "vector is not in the kernel")
    vec = tuple(Fraction(v) for v in x)
    rows = []
    for row in A.entries:
        shifted = [aij + xj for aij, xj in zip(row, vec)]
        mn = min(shifted)
        rows.append(tuple(v - mn for v in shifted))
    return TwMatrix(tuple(rows), A.weights)


def kernel_witness_square(A: TwMatrix) -> tuple[Fraction, ...]:
    """A kernel vector of a singular square-weight matrix.

    Rescales so two optimal partitions have all selected entries zero, then
    grows the zero pattern block by block until it spans every column; the
    accumulated column shifts, pulled back through the rescaling, give the
    kernel vector.
    """
    if A.total_weight != A.num_cols:
        raise DomainError("kernel_witness_square", "square case requires K = N")
    res = tw_permanent(A)
    if not res.singular:
        raise DomainError("kernel_witness_square", "matrix is non-singular")
    resc = rescale_nonneg_zero_perm(A)
    inv = {old: new for new, old in enumerate(resc.col_perm)}
    p1 = tuple(tuple(sorted(inv[j] for j in block)) for block in res.optimal)
    assert res.witness is not None
    p2 = tuple(tuple(sorted(inv[j] for j in block)) for block in res.witness)
    x1 = _grow_zero_pattern(resc.matrix, p1, p2)
    x = [Fraction(0)] * A.num_cols
    for j in range(A.num_cols):
        x[resc.col_perm[j]] = x1[j] + resc.rescaling.col_offsets[j]
    member, _ = tw_kernel_membership(A, tuple(x))
    assert member, "witness construction must land in the kernel"
    return tuple(x)


def _grow_zero_pattern(B: TwMatrix, p1: Partition, p2: Partition) -> list[Fraction]:
    """Column offsets making the zero vector a kernel member of B.

    Starting from the rows where the two partitions differ, repeatedly finds
    the cheapest entry in the remaining rows over the covered columns, shifts
    it to zero, and absorbs that row's block.
    """
    m, n = B.num_rows, B.num_cols
    work = [list(row) for row in B.entries]
    grown = {k for k in range(m) if p1[k] != p2[k]}
    covered = {j for k in grown for j in p1[k]}
    assert covered == {j for k in grown for j in p2[k]}
    assert sum(B.weights[k] for k in grown) == len(covered)
    add_row = [Fraction(0)] * m
    sub_col = [Fraction(0)] * n
    while len(covered) < n:
        outside = [i for i in range(m) if i not in grown]
        assert outside, "all rows grown before all columns covered"
        eps = None
        pick = None
        for i in outside:
            for j in sorted(covered):
                if eps is None or work[i][j] < eps:
                    eps, pick = work[i][j], (i, j)
        assert eps is not None and pick is not None
        for i in grown:
            for j in range(n):
                work[i][j] += eps
            add_row[i] += eps
        for j in covered:
            for i in range(m):
                work[i][j] -= eps
            sub_col[j] += eps
        i_star, j_star = pick
        assert work[i_star][j_star] == 0
        grown.add(i_star)
        covered.update(p1[i_star])
    return [-s for s in sub_col]


def alternate_kernel_vector(A: TwMatrix, j: int) -> tuple[Fraction, ...]:
    """Second kernel vector of a K = N-1 matrix through a singular minor.

    Takes a kernel vector of the singular minor (shifted so its minimum is
    0) and inserts an entry at column j large enough that the column never
    participates in any row minimum; the result is verified to lie in the
    kernel and to differ from the minor vector by more than a constant.
    """
    if A.total_weight != A.num_cols - 1:
        raise DomainError(
            "alternate_kernel_vector", "row weights must sum to one less than the columns"
        )
    sub = minor_matrix(A, j)
    if not tw_permanent(sub).singular:
        raise DomainError("alternate_kernel_vector", f"minor {j} is non-singular")
    w = kernel_witness_square(sub)
    lo = min(w)
    w = tuple(v - lo for v in w)
    flat = [v for row in A.entries for v in row]
    big = 1 + (max(flat) - min(flat)) + max(w)
    y = list(w[:j]) + [big] + list(w[j:])
    member, _ = tw_kernel_membership(A, y)
    assert member, "extended vector must lie in the kernel"
    minors = maximal_minors(A)
    diffs = {yc - mc for yc, mc in zip(y, minors)}
    assert len(diffs) > 1, "alternate vector must not be a tropical multiple of the minors"
    return tuple(y)
