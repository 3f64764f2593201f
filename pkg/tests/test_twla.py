import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

import tropcram as tc
from tropcram import oracle
from tropcram.errors import DomainError
from tropcram.twla import _grow_zero_pattern, _perm_matching, partition_cost

from conftest import random_matrix, random_weights


def M(rows, weights):
    return tc.TwMatrix.from_rows(rows, weights)


class TestKernelMembership:
    def test_single_row_example(self):
        ok, counts = tc.tw_kernel_membership(M([[1, 2, 3, 4]], [3]), [9, 8, 7, 6])
        assert ok and counts == (4,)

    def test_two_row_example(self):
        A = M([[0, 0, 0, 0], [2, 1, 1, 3]], [2, 1])
        ok, counts = tc.tw_kernel_membership(A, [1, 1, 1, 99])
        assert ok and counts == (3, 2)

    def test_strictly_increasing_row_fails(self):
        ok, counts = tc.tw_kernel_membership(M([[1, 2, 3, 4]], [3]), [0, 0, 0, 0])
        assert not ok and counts == (1,)

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            tc.tw_kernel_membership(M([[1, 2]], [1]), [0])


class TestPermanent:
    def test_example_nonsingular(self):
        res = tc.tw_permanent(M([[0, 0, 5], [2, 1, 1]], [2, 1]))
        assert res.value == 1
        assert res.optimal == ((0, 1), (2,))
        assert not res.singular and res.witness is None

    def test_one_by_one(self):
        res = tc.tw_permanent(M([[Fraction(7, 3)]], [1]))
        assert res.value == Fraction(7, 3) and not res.singular

    def test_example_singular(self):
        res = tc.tw_permanent(M([[0, 0, 0], [2, 1, 1]], [2, 1]))
        assert res.value == 1 and res.singular
        assert res.optimal == ((0, 1), (2,))
        assert res.witness is not None and res.witness != res.optimal
        assert partition_cost(M([[0, 0, 0], [2, 1, 1]], [2, 1]), res.witness) == 1

    def test_full_weight_row_never_singular(self):
        rng = random.Random(3)
        for _ in range(30):
            A = M([[rng.randint(-4, 4) for _ in range(3)]], [3])
            assert not tc.tw_permanent(A).singular

    def test_requires_square_weight(self):
        with pytest.raises(DomainError):
            tc.tw_permanent(M([[1, 2, 3]], [2]))

    def test_value_matches_row_repeated_expansion(self):
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randint(2, 5)
            A = random_matrix(rng, n, n)
            expanded_rows = []
            for row, w in zip(A.entries, A.weights):
                expanded_rows.extend([list(row)] * w)
            expected = min(
                sum(expanded_rows[i][p[i]] for i in range(n))
                for p in permutations(range(n))
            )
            assert tc.tw_permanent(A).value == expected

    def test_matching_path_agrees_with_enumeration(self):
        rng = random.Random(6)
        for _ in range(120):
            n = rng.randint(2, 6)
            A = random_matrix(rng, n, n)
            value, optima = oracle.brute_perm(A)
            res = _perm_matching(A)
            assert res.value == value
            assert res.optimal == optima[0]
            assert res.singular == (len(optima) > 1)
            if res.singular:
                assert res.witness in optima and res.witness != res.optimal

    def test_large_matrix_uses_matching(self):
        rng = random.Random(9)
        n = 10
        A = random_matrix(rng, n, n, lo=-9, hi=9)
        res = tc.tw_permanent(A)
        assert partition_cost(A, res.optimal) == res.value

    def test_rescaling_invariance_of_optima_and_singularity(self):
        rng = random.Random(8)
        for _ in range(50):
            n = rng.randint(2, 5)
            A = random_matrix(rng, n, n)
            row_shift = [Fraction(rng.randint(-3, 3)) for _ in A.weights]
            col_shift = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
            B = tc.TwMatrix(
                tuple(
                    tuple(v - row_shift[i] + col_shift[j] for j, v in enumerate(row))
                    for i, row in enumerate(A.entries)
                ),
                A.weights,
            )
            ra, rb = tc.tw_permanent(A), tc.tw_permanent(B)
            assert ra.optimal == rb.optimal and ra.singular == rb.singular
            net = sum(w * s for w, s in zip(A.weights, row_shift)) - sum(col_shift)
            assert rb.value == ra.value - net

    def test_column_permutation_permutes_minors(self):
        rng = random.Random(12)
        for _ in range(30):
            n = rng.randint(2, 5)
            A = random_matrix(rng, n, n - 1)
            perm = list(range(n))
            rng.shuffle(perm)
            B = tc.TwMatrix(
                tuple(tuple(row[perm[j]] for j in range(n)) for row in A.entries),
                A.weights,
            )
            ma, mb = tc.maximal_minors(A), tc.maximal_minors(B)
            assert mb == tuple(ma[perm[j]] for j in range(n))


class TestMinorsAndCramer:
    def test_minor_vector_single_row(self):
        assert tc.maximal_minors(M([[1, 2, 3, 4]], [3])) == (9, 8, 7, 6)

    def test_minor_vector_two_rows(self):
        assert tc.maximal_minors(M([[0, 0, 0, 0], [2, 1, 1, 3]], [2, 1])) == (1, 1, 1, 1)

    def test_minor_vector_one_by_two(self):
        assert tc.maximal_minors(M([[Fraction(1, 2), 5]], [1])) == (5, Fraction(1, 2))

    def test_cramer_unique(self):
        vec, unique = tc.cramer_solve(M([[1, 2, 3, 4]], [3]))
        assert vec == (9, 8, 7, 6) and unique

    def test_cramer_non_unique(self):
        A = M([[0, 0, 0, 0], [2, 1, 1, 3]], [2, 1])
        vec, unique = tc.cramer_solve(A)
        assert vec == (1, 1, 1, 1) and not unique
        assert tc.tw_permanent(A.drop_column(3)).singular

    def test_cramer_trivial(self):
        vec, unique = tc.cramer_solve(M([[0, 0]], [1]))
        assert vec == (0, 0) and unique

    def test_shape_errors(self):
        with pytest.raises(DomainError):
            tc.maximal_minors(M([[1, 2]], [2]))
        with pytest.raises(DomainError):
            tc.cramer_solve(M([[1, 2]], [2]))


class TestRescale:
    def test_fixed_point_identity(self):
        A = M([[0, 1], [1, 0]], [1, 1])
        res = tc.rescale_nonneg_zero_perm(A)
        assert res.matrix == A
        assert res.rescaling == tc.Rescaling((Fraction(0),) * 2, (Fraction(0),) * 2)
        assert res.col_perm == (0, 1)

    def test_one_by_one(self):
        res = tc.rescale_nonneg_zero_perm(M([[1]], [1]))
        assert res.matrix.entries == ((0,),)
        assert res.rescaling.row_offsets[0] - res.rescaling.col_offsets[0] == 1

    def test_negative_entry_example(self):
        A = M([[0, -2], [0, 0]], [1, 1])
        res = tc.rescale_nonneg_zero_perm(A)
        assert res.matrix.is_nonnegative()
        assert tc.tw_permanent(res.matrix).value == 0
        # the recorded transform reproduces the output matrix
        for i in range(2):
            for j in range(2):
                assert res.matrix.entries[i][j] == (
                    A.entries[i][res.col_perm[j]]
                    - res.rescaling.row_offsets[i]
                    + res.rescaling.col_offsets[j]
                )

    def test_postconditions_random(self):
        rng = random.Random(21)
        for _ in range(80):
            n = rng.randint(2, 5)
            A = random_matrix(rng, n, n)
            res = tc.rescale_nonneg_zero_perm(A)
            B = res.matrix
            assert B.is_nonnegative()
            assert tc.tw_permanent(B).value == 0
            start = 0
            for i, w in enumerate(B.weights):
                assert all(B.entries[i][j] == 0 for j in range(start, start + w))
                start += w
            assert tc.tw_permanent(B).singular == tc.tw_permanent(A).singular
            for i in range(B.num_rows):
                for j in range(B.num_cols):
                    assert B.entries[i][j] == (
                        A.entries[i][res.col_perm[j]]
                        - res.rescaling.row_offsets[i]
                        + res.rescaling.col_offsets[j]
                    )


class TestNormalize:
    def test_fixed_point(self):
        A = M([[0, 0, 3], [1, 0, 0]], [1, 1])
        assert tc.normalize_by_kernel_vector(A, [0, 0, 0]) == A

    def test_single_row(self):
        A = M([[1, 2, 3, 4]], [3])
        out = tc.normalize_by_kernel_vector(A, [9, 8, 7, 6])
        assert out.entries == ((0, 0, 0, 0),)

    def test_two_rows(self):
        A = M([[0, 0, 0, 0], [2, 1, 1, 3]], [2, 1])
        out = tc.normalize_by_kernel_vector(A, [1, 1, 1, 99])
        assert out.entries == ((0, 0, 0, 98), (1, 0, 0, 100))
        ok, _ = tc.tw_kernel_membership(out, [0, 0, 0, 0])
        assert ok

    def test_rejects_non_kernel_vector(self):
        with pytest.raises(DomainError):
            tc.normalize_by_kernel_vector(M([[1, 2, 3, 4]], [3]), [0, 0, 0, 0])


class TestKernelWitness:
    def test_example_singular(self):
        A = M([[0, 0, 0], [2, 1, 1]], [2, 1])
        x = tc.kernel_witness_square(A)
        ok, counts = tc.tw_kernel_membership(A, x)
        assert ok and counts[0] >= 3 and counts[1] >= 2

    def test_all_zero(self):
        A = M([[0, 0], [0, 0]], [1, 1])
        x = tc.kernel_witness_square(A)
        ok, _ = tc.tw_kernel_membership(A, x)
        assert ok
        assert len(set(x)) == 1  # a constant vector, tropically the zero vector

    def test_nonsingular_rejected(self):
        with pytest.raises(DomainError):
            tc.kernel_witness_square(M([[0, 1], [1, 0]], [1, 1]))

    def test_no_kernel_candidate_for_nonsingular(self):
        """Candidates grown from any pair of partitions never verify when
        the matrix is non-singular (the kernel is empty)."""
        rng = random.Random(31)
        checked = 0
        for _ in range(80):
            n = rng.randint(2, 4)
            A = random_matrix(rng, n, n, lo=-3, hi=3)
            value, optima = oracle.brute_perm(A)
            if len(optima) > 1:
                continue
            checked += 1
            parts = list(_all_partitions(n, A.weights))
            for p1, p2 in combinations(parts, 2):
                x = _candidate_from_pair(A, p1, p2)
                if x is None:
                    continue
                ok, _ = tc.tw_kernel_membership(A, x)
                assert not ok, (A.entries, A.weights, p1, p2, x)
        assert checked >= 20


class TestAlternateKernelVector:
    def test_example(self):
        A = M([[0, 0, 0, 0], [2, 1, 1, 3]], [2, 1])
        y = tc.alternate_kernel_vector(A, 3)
        ok, _ = tc.tw_kernel_membership(A, y)
        assert ok
        minors = tc.maximal_minors(A)
        assert len({a - b for a, b in zip(y, minors)}) > 1

    def test_all_minors_nonsingular_rejected(self):
        A = M([[1, 2, 3, 4]], [3])
        for j in range(4):
            with pytest.raises(DomainError):
                tc.alternate_kernel_vector(A, j)

    def test_two_by_three(self):
        A = M([[0, 0, 1], [0, 0, 1]], [1, 1])
        assert tc.maximal_minors(A) == (1, 1, 0)
        y = tc.alternate_kernel_vector(A, 2)
        ok, _ = tc.tw_kernel_membership(A, y)
        assert ok
        assert len({a - b for a, b in zip(y, (1, 1, 0))}) > 1


def _all_partitions(n, weights):
    from tropcram.twla import _partitions

    return _partitions(tuple(range(n)), weights)


def _candidate_from_pair(A, p1, p2):
    """Witness-style candidate built from an arbitrary partition pair."""
    owner = {}
    for i, block in enumerate(p1):
        for j in block:
            owner[j] = i
    shift = [A.entries[owner[j]][j] for j in range(A.num_cols)]
    B = tc.TwMatrix(
        tuple(
            tuple(v - shift[j] for j, v in enumerate(row)) for row in A.entries
        ),
        A.weights,
    )
    if p1 == p2:
        return None
    covered = {j for k in range(len(p1)) if p1[k] != p2[k] for j in p1[k]}
    alt = {j for k in range(len(p2)) if p1[k] != p2[k] for j in p2[k]}
    if covered != alt:
        return None
    x1 = _grow_zero_pattern(B, p1, p2)
    return tuple(x1[j] - shift[j] for j in range(A.num_cols))
