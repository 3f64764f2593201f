"""Independent brute-force references.

Everything here recomputes results by direct enumeration, separately from
the production paths, so the two can be cross-checked. Caps are hard
errors: a truncated oracle would be worse than none.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Optional, Sequence

from .errors import DomainError
from .geometry import LatticeSubdivision, Weighting, _deformable_raw, is_lattice_simplicial
from .hypergraph import Hypergraph, LinkageHypergraph, graphify, hypergraph_stats
from .linalg import affine_rank
from .twla import Partition, TwMatrix

BRUTE_PERM_CAP = 8
TRANSPORT_CAP = 100_000
RIGIDITY_CAP = 16


def _multiset_orderings(counts: list[int]) -> Iterator[tuple[int, ...]]:
    """Distinct sequences using value i exactly counts[i] times."""
    total = sum(counts)
    seq: list[int] = []

    def rec():
        if len(seq) == total:
            yield tuple(seq)
            return
        for v in range(len(counts)):
            if counts[v] > 0:
                counts[v] -= 1
                seq.append(v)
                yield from rec()
                seq.pop()
                counts[v] += 1

    yield from rec()


def _ordering_to_partition(ordering: Sequence[int], num_rows: int) -> Partition:
    blocks: list[list[int]] = [[] for _ in range(num_rows)]
    for col, row in enumerate(ordering):
        blocks[row].append(col)
    return tuple(tuple(b) for b in blocks)


def brute_perm(A: TwMatrix, cap: int = BRUTE_PERM_CAP) -> tuple[Fraction, tuple[Partition, ...]]:
    """Exhaustive permanent: minimum value and every partition attaining it."""
    if A.total_weight != A.num_cols:
        raise DomainError("brute_perm", "sum of row weights must equal the column count")
    if A.num_cols > cap:
        raise DomainError("brute_perm", f"column count {A.num_cols} exceeds the cap {cap}")
    best: Optional[Fraction] = None
    optima: list[Partition] = []
    for ordering in _multiset_orderings(list(A.weights)):
        v = sum(A.entries[row][col] for col, row in enumerate(ordering))
        if best is None or v < best:
            best = v
            optima = [_ordering_to_partition(ordering, A.num_rows)]
        elif v == best:
            optima.append(_ordering_to_partition(ordering, A.num_rows))
    assert best is not None
    return best, tuple(sorted(optima))


def D_vertices(weights: Sequence[int]) -> list[tuple[tuple[Fraction, ...], ...]]:
    """Vertices of the weighted doubly stochastic polytope, one per partition.

    The vertex for a partition puts 1/m_i on row i's block columns and 0
    elsewhere; row sums are 1 and weighted column sums are 1.
    """
    ws = [int(w) for w in weights]
    if any(w < 1 for w in ws):
        raise DomainError("d_vertices", "weights must be positive")
    size = sum(ws)
    out = []
    for ordering in _multiset_orderings(list(ws)):
        rows = [
            tuple(
                Fraction(1, ws[i]) if ordering[j] == i else Fraction(0) for j in range(size)
            )
            for i in range(len(ws))
        ]
        out.append(tuple(rows))
    return sorted(out)


@dataclass(frozen=True)
class TransportVertex:
    matrix: tuple[tuple[Fraction, ...], ...]
    support: LinkageHypergraph


def T_vertices(
    weights: Sequence[int], num_cols: int, cap: int = TRANSPORT_CAP
) -> list[TransportVertex]:
    """Vertices of the weighted transportation polytope.

    One per connected linkage hypergraph: edge i picks row i's support, and
    the entries are the sums of per-column tree flows. Row sums come out to
    N and weighted column sums to N - 1.
    """
    ws = tuple(int(w) for w in weights)
    if sum(ws) != num_cols - 1:
        raise DomainError("t_vertices", "weights must sum to one less than the column count")
    candidates = 1
    for w in ws:
        candidates *= comb(num_cols, w + 1)
    if candidates > cap:
        raise DomainError(
            "t_vertices", f"{candidates} candidate hypergraphs exceed the cap {cap}"
        )
    out = []
    for edges in _edge_choices(ws, num_cols):
        g = LinkageHypergraph(num_cols, edges, ws)
        stats = hypergraph_stats(g)
        if stats.num_components != 1:
            continue
        assert stats.edge_total == num_cols - 1, "connected linkage supports are trees"
        y = _vertex_from_support(g)
        out.append(TransportVertex(y, g))
    return out


def _edge_choices(ws: tuple[int, ...], num_cols: int) -> Iterator[tuple[frozenset[int], ...]]:
    if not ws:
        yield ()
        return
    for head in combinations(range(num_cols), ws[0] + 1):
        for tail in _edge_choices(ws[1:], num_cols):
            yield (frozenset(head),) + tail


def _vertex_from_support(g: LinkageHypergraph) -> tuple[tuple[Fraction, ...], ...]:
    star, origin = graphify(g)
    n = g.num_vertices
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for idx, e in enumerate(star.edges):
        a, b = sorted(e)
        adj[a].append((idx, b))
        adj[b].append((idx, a))
    y = [[Fraction(0)] * n for _ in range(len(g.edges))]
    for j in range(n):
        # BFS tree rooted at j: each other vertex flows along its parent edge
        parent_edge: dict[int, int] = {}
        frontier = [j]
        seen = {j}
        while frontier:
            nxt = []
            for u in frontier:
                for idx, w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        parent_edge[w] = idx
                        nxt.append(w)
            frontier = nxt
        assert len(seen) == n
        for ell in range(n):
            if ell == j:
                continue
            row = origin[parent_edge[ell]]
            y[row][ell] += Fraction(1, g.weights[row])
    out = tuple(tuple(r) for r in y)
    for i, row in enumerate(out):
        assert sum(row) == n
        support = frozenset(j for j, v in enumerate(row) if v > 0)
        assert support == g.edges[i], "vertex support must reproduce the hypergraph"
    for j in range(n):
        assert sum(g.weights[i] * out[i][j] for i in range(len(g.edges))) == n - 1
    return out


def weighted_inner(A: TwMatrix, Y: Sequence[Sequence[Fraction]]) -> Fraction:
    return sum(
        A.weights[i] * A.entries[i][j] * Y[i][j]
        for i in range(A.num_rows)
        for j in range(A.num_cols)
    )


def min_over_transport(
    A: TwMatrix, cap: int = TRANSPORT_CAP
) -> tuple[Fraction, tuple[TransportVertex, ...]]:
    """Minimum of the weighted inner product over transportation vertices."""
    if A.total_weight != A.num_cols - 1:
        raise DomainError(
            "min_over_transport", "row weights must sum to one less than the columns"
        )
    verts = T_vertices(A.weights, A.num_cols, cap=cap)
    values = [(weighted_inner(A, v.matrix), v) for v in verts]
    best = min(v for v, _ in values)
    argmin = tuple(v for val, v in values if val == best)
    return best, argmin


def brute_rigid(
    weighting: Weighting, cap: int = RIGIDITY_CAP
) -> tuple[bool, tuple[frozenset[int], ...]]:
    """Exhaustive rigidity: all inclusion-minimal deformable admissible sets."""
    sub = weighting.subdivision
    size = sub.polytope.size
    if size > cap:
        raise DomainError("brute_rigid", f"{size} lattice points exceed the cap {cap}")
    vertex_cells = sub.vertex_cells
    minimal: list[frozenset[int]] = []
    for k in range(1, size + 1):
        for combo in combinations(range(size), k):
            ls = frozenset(combo)
            if vertex_cells <= ls:
                continue
            if any(m <= ls for m in minimal):
                continue
            if _deformable_raw(ls, weighting.mu):
                minimal.append(ls)
    return (not minimal), tuple(sorted(minimal, key=lambda s: (len(s), sorted(s))))


def span_inequality_check(subdivision: LatticeSubdivision) -> tuple[bool, int, int]:
    """Maximal-cell dimensions versus vertices minus components.

    Valid simplicial complexes always satisfy the inequality; a failure
    would indicate a broken complex upstream. Returns (ok, lhs, rhs).
    """
    if not is_lattice_simplicial(subdivision):
        raise DomainError("span_inequality_check", "input complex is not lattice simplicial")
    cells = subdivision.cells
    maximal = [c for c in cells if not any(c < other for other in cells)]
    lhs = sum(affine_rank(subdivision.cell_points(c)) for c in maximal)
    points = sorted({i for c in cells for i in c})
    parent = {i: i for i in points}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for c in cells:
        it = iter(sorted(c))
        first = find(next(it))
        for v in it:
            parent[find(v)] = first
    comps = len({find(i) for i in points})
    rhs = len(points) - comps
    return lhs >= rhs, lhs, rhs
