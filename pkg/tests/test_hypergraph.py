import random
from fractions import Fraction

import pytest

import tropcram as tc
from tropcram.errors import DomainError
from tropcram.hypergraph import is_good_orientation, is_simple_cycle, is_complementary


def H(n, edges):
    return tc.Hypergraph.from_lists(n, edges)


def brute_has_cycle(g: tc.Hypergraph) -> bool:
    """Independent exhaustive search over alternating walks."""

    def extend(current, start, used_edges, used_vertices):
        for e, edge in enumerate(g.edges):
            if e in used_edges or current not in edge:
                continue
            for w in edge:
                if w == current:
                    continue
                if w == start and len(used_edges) + 1 >= 2:
                    return True
                if w not in used_vertices:
                    if extend(w, start, used_edges | {e}, used_vertices | {w}):
                        return True
        return False

    return any(extend(s, s, frozenset(), frozenset({s})) for s in range(g.num_vertices))


class TestStats:
    def test_single_hyperedge(self):
        s = tc.hypergraph_stats(H(3, [[0, 1, 2]]))
        assert (s.num_vertices, s.edge_total, s.num_components) == (3, 2, 1)

    def test_fixture_with_isolated_vertex(self):
        s = tc.hypergraph_stats(H(5, [[0, 1], [0, 2], [1, 2], [2, 3]]))
        assert (s.num_vertices, s.edge_total, s.num_components) == (5, 4, 2)

    def test_empty_edges(self):
        s = tc.hypergraph_stats(H(4, []))
        assert (s.num_vertices, s.edge_total, s.num_components) == (4, 0, 4)


class TestSimpleCycle:
    def test_triangle(self):
        g = H(3, [[0, 1], [1, 2], [0, 2]])
        c = tc.find_simple_cycle(g)
        assert c is not None and is_simple_cycle(g, c)

    def test_single_hyperedge_has_none(self):
        assert tc.find_simple_cycle(H(3, [[0, 1, 2]])) is None

    def test_double_edge_two_cycle(self):
        g = H(2, [[0, 1], [0, 1]])
        c = tc.find_simple_cycle(g)
        assert c is not None and len(c.edges) == 2 and is_simple_cycle(g, c)

    def test_counting_formula_on_random_hypergraphs(self):
        rng = random.Random(17)
        for _ in range(400):
            n = rng.randint(2, 8)
            edges = []
            for _ in range(rng.randint(0, 6)):
                size = rng.randint(2, min(4, n))
                edges.append(rng.sample(range(n), size))
            g = H(n, edges)
            s = tc.hypergraph_stats(g)
            predicted = s.edge_total + s.num_components >= s.num_vertices + 1
            found = tc.find_simple_cycle(g)
            assert (found is not None) == predicted
            assert (found is not None) == brute_has_cycle(g)
            if found is not None:
                assert is_simple_cycle(g, found)


class TestGraphify:
    def test_star_of_triple(self):
        g = H(3, [[0, 1, 2]])
        star, psi = tc.graphify(g)
        assert sorted(tuple(sorted(e)) for e in star.edges) == [(0, 1), (0, 2)]
        assert psi == (0, 0)

    def test_graph_input_unchanged(self):
        g = H(3, [[0, 1], [1, 2]])
        star, psi = tc.graphify(g)
        assert star.edges == g.edges and psi == (0, 1)

    def test_preserves_edge_total_and_connectivity(self):
        g = H(5, [[0, 1, 2], [2, 3, 4]])
        star, _ = tc.graphify(g)
        assert star.edge_total == g.edge_total == 4
        assert tc.hypergraph_stats(star).num_components == 1


class TestGoodOrientations:
    def test_double_edge(self):
        g = H(2, [[0, 1], [0, 1]])
        outs = tc.good_orientations(g)
        assert len(outs) == 2
        assert all(is_good_orientation(g, o.out) for o in outs)

    def test_single_edge_none(self):
        assert tc.good_orientations(H(2, [[0, 1]])) == []

    def test_triangle_two(self):
        g = H(3, [[0, 1], [1, 2], [0, 2]])
        assert len(tc.good_orientations(g)) == 2

    def test_connected_unit_ratio_has_at_least_two(self):
        rng = random.Random(23)
        for _ in range(60):
            g = _random_connected_unit(rng)
            outs = tc.good_orientations(g)
            assert len(outs) >= 2
            assert all(is_good_orientation(g, o.out) for o in outs)


def _random_connected_unit(rng: random.Random) -> tc.Hypergraph:
    """Random connected hypergraph with edge total equal to vertex count."""
    n = rng.randint(3, 8)
    unvisited = list(range(1, n))
    rng.shuffle(unvisited)
    visited = [0]
    edges = []
    while unvisited:
        take = rng.randint(1, min(2, len(unvisited)))
        newcomers = [unvisited.pop() for _ in range(take)]
        anchor = rng.choice(visited)
        edges.append([anchor] + newcomers)
        visited.extend(newcomers)
    extra = rng.sample(range(n), 2)
    edges.append(extra)
    g = tc.Hypergraph.from_lists(n, edges)
    assert g.edge_total == n
    assert tc.hypergraph_stats(g).num_components == 1
    return g


class TestComplementaryLinkage:
    def test_reads_zero_pattern(self):
        A = tc.TwMatrix.from_rows([[0, 0, 5], [2, 0, 0]], [1, 1])
        exists, g = tc.complementary_linkage(A)
        assert exists and g is not None
        assert [sorted(e) for e in g.edges] == [[0, 1], [1, 2]]
        assert is_complementary(A, g)

    def test_not_enough_zeros(self):
        A = tc.TwMatrix.from_rows([[0, 1], [1, 0]], [1, 1])
        assert tc.complementary_linkage(A) == (False, None)

    def test_all_zero_canonical_choice(self):
        A = tc.TwMatrix.from_rows([[0, 0, 0], [0, 0, 0]], [1, 1])
        exists, g = tc.complementary_linkage(A)
        assert exists and [sorted(e) for e in g.edges] == [[0, 1], [0, 1]]

    def test_rejects_negative_matrix(self):
        with pytest.raises(DomainError):
            tc.complementary_linkage(tc.TwMatrix.from_rows([[-1, 0]], [1]))

    def test_zero_vector_kernel_equivalence_for_row_min_zero(self):
        rng = random.Random(29)
        for _ in range(120):
            m = rng.randint(1, 3)
            n = rng.randint(2, 5)
            weights = [rng.randint(1, max(1, n - 1)) for _ in range(m)]
            rows = []
            for w in weights:
                row = [Fraction(rng.choice([0, 0, 1, 2])) for _ in range(n)]
                row[rng.randrange(n)] = Fraction(0)
                rows.append(row)
            if any(w + 1 > n for w in weights):
                continue
            A = tc.TwMatrix.from_rows(rows, weights)
            exists, _ = tc.complementary_linkage(A)
            member, _ = tc.tw_kernel_membership(A, [0] * n)
            assert exists == member


class TestGameRescale:
    def fixture(self):
        A = tc.TwMatrix.from_rows(
            [[0, 0, 3, 3, 3], [0, 4, 0, 4, 5], [5, 0, 0, 3, 4], [6, 7, 0, 0, 1]],
            [1, 1, 1, 1],
        )
        g = tc.LinkageHypergraph(
            5,
            (frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2}), frozenset({2, 3})),
            (1, 1, 1, 1),
        )
        return A, g

    def test_postconditions_on_fixture(self):
        A, g = self.fixture()
        res = tc.game_rescale(A, g)
        assert res.matrix.is_nonnegative()
        for cand in (res.first, res.second):
            assert is_complementary(res.matrix, cand)
            assert tc.hypergraph_stats(cand).num_components == 1
        assert res.first != res.second
        for i in range(4):
            for j in range(5):
                assert res.matrix.entries[i][j] == (
                    A.entries[i][j] - res.row_offsets[i] + res.col_offsets[j]
                )

    def test_connected_input_rejected(self):
        A = tc.TwMatrix.from_rows([[0, 0]], [1])
        g = tc.LinkageHypergraph(2, (frozenset({0, 1}),), (1,))
        with pytest.raises(DomainError):
            tc.game_rescale(A, g)

    def test_non_complementary_rejected(self):
        A, _ = self.fixture()
        bad = tc.LinkageHypergraph(
            5,
            (frozenset({3, 4}), frozenset({0, 2}), frozenset({1, 2}), frozenset({2, 3})),
            (1, 1, 1, 1),
        )
        with pytest.raises(DomainError):
            tc.game_rescale(A, bad)

    def test_random_disconnected_patterns_terminate(self):
        rng = random.Random(41)
        done = 0
        while done < 40:
            n = rng.randint(3, 6)
            k = rng.randint(max(1, n - 1), n)
            weights = []
            left = k
            while left > 0:
                w = rng.randint(1, min(left, n - 1))
                weights.append(w)
                left -= w
            rows = []
            for w in weights:
                zeros = rng.sample(range(n), w + 1)
                rows.append([Fraction(0) if j in zeros else Fraction(rng.randint(1, 5)) for j in range(n)])
            A = tc.TwMatrix.from_rows(rows, weights)
            exists, g = tc.complementary_linkage(A)
            assert exists
            if tc.hypergraph_stats(g).num_components == 1:
                continue
            res = tc.game_rescale(A, g)
            assert res.matrix.is_nonnegative()
            for cand in (res.first, res.second):
                assert is_complementary(res.matrix, cand)
                assert tc.hypergraph_stats(cand).num_components == 1
            done += 1
