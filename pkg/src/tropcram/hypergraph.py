"""Hypergraphs: cycles, good orientations, and zero-pattern rescaling.

Edges are vertex subsets of size at least 2; parallel copies of an edge are
allowed and a pair of parallel edges counts as a cycle. The edge total
e(G) = sum(|e| - 1) plays the role the edge count plays for graphs.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import DomainError
from .twla import TwMatrix

EXHAUSTIVE_ORIENTATION_LIMIT = 12


@dataclass(frozen=True)
class Hypergraph:
    num_vertices: int
    edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.num_vertices < 0:
            raise DomainError("hypergraph", "negative vertex count")
        for e in self.edges:
            if len(e) < 2:
                raise DomainError("hypergraph", "edges must touch at least two vertices")
            if any(not 0 <= v < self.num_vertices for v in e):
                raise DomainError("hypergraph", f"edge {sorted(e)} has a vertex out of range")

    @classmethod
    def from_lists(cls, num_vertices: int, edges: Sequence[Sequence[int]]) -> "Hypergraph":
        return cls(num_vertices, tuple(frozenset(int(v) for v in e) for e in edges))

    @property
    def edge_total(self) -> int:
        return sum(len(e) - 1 for e in self.edges)


@dataclass(frozen=True)
class LinkageHypergraph(Hypergraph):
    """Edge i touches exactly weights[i] + 1 vertices (rows of a matrix)."""

    weights: tuple[int, ...]

    def __post_init__(self):
        super().__post_init__()
        if len(self.weights) != len(self.edges):
            raise DomainError("linkage_hypergraph", "one weight per edge required")
        for i, (e, m) in enumerate(zip(self.edges, self.weights)):
            if len(e) != m + 1:
                raise DomainError(
                    "linkage_hypergraph", f"edge {i} touches {len(e)} vertices, expected {m + 1}"
                )


@dataclass(frozen=True)
class HypergraphStats:
    num_vertices: int
    edge_total: int
    num_components: int
    component_labels: tuple[int, ...]


def _component_labels(g: Hypergraph) -> list[int]:
    parent = list(range(g.num_vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        it = iter(sorted(e))
        first = find(next(it))
        for v in it:
            parent[find(v)] = first
    roots: dict[int, int] = {}
    labels = []
    for v in range(g.num_vertices):
        r = find(v)
        labels.append(roots.setdefault(r, len(roots)))
    return labels


def hypergraph_stats(g: Hypergraph) -> HypergraphStats:
    labels = _component_labels(g)
    n_comp = (max(labels) + 1) if labels else 0
    return HypergraphStats(g.num_vertices, g.edge_total, n_comp, tuple(labels))


@dataclass(frozen=True)
class Cycle:
    """Alternating closed walk v0, e0, v1, ..., vk = v0 without repeats."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def is_simple_cycle(g: Hypergraph, cycle: Cycle) -> bool:
    vs, es = cycle.vertices, cycle.edges
    if len(vs) != len(es) + 1 or len(es) < 2 or vs[0] != vs[-1]:
        return False
    if len(set(vs[:-1])) != len(vs) - 1 or len(set(es)) != len(es):
        return False
    for t, e in enumerate(es):
        if not 0 <= e < len(g.edges):
            return False
        if vs[t] not in g.edges[e] or vs[t + 1] not in g.edges[e]:
            return False
    return True


def graphify(g: Hypergraph) -> tuple[Hypergraph, tuple[int, ...]]:
    """Replace each edge by a star on its vertices, centered at its least one.

    Returns the resulting graph and the map from its edge indices back to the
    original edge indices. Edge totals and connectivity are preserved.
    """
    new_edges = []
    origin = []
    for idx, e in enumerate(g.edges):
        vs = sorted(e)
        center = vs[0]
        for v in vs[1:]:
            new_edges.append(frozenset({center, v}))
            origin.append(idx)
    return Hypergraph(g.num_vertices, tuple(new_edges)), tuple(origin)


def _graph_cycle(g: Hypergraph) -> Optional[tuple[list[int], list[int]]]:
    """A simple cycle in a graph (all edges of size 2), or None.

    Parallel edges are distinct instances, so a doubled edge yields the
    2-cycle through both copies. The first non-tree edge found closes the
    cycle through the two tree paths to the meeting vertex.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.num_vertices)]
    for idx, e in enumerate(g.edges):
        a, b = sorted(e)
        adj[a].append((idx, b))
        adj[b].append((idx, a))
    seen = [False] * g.num_vertices
    parent: dict[int, tuple[int, int]] = {}
    for root in range(g.num_vertices):
        if seen[root]:
            continue
        stack = [(root, -1)]
        seen[root] = True
        while stack:
            v, via = stack.pop()
            for idx, w in adj[v]:
                if idx == via:
                    continue
                if not seen[w]:
                    seen[w] = True
                    parent[w] = (v, idx)
                    stack.append((w, idx))
                    continue
                # non-tree edge (v, w): join the two tree paths
                chain_v = [v]
                chain_e = []
                cur = v
                while cur != root:
                    pv, pe = parent[cur]
                    chain_v.append(pv)
                    chain_e.append(pe)
                    cur = pv
                index_in_chain = {node: k for k, node in enumerate(chain_v)}
                path_w = [w]
                path_we = []
                cur = w
                while cur not in index_in_chain:
                    pv, pe = parent[cur]
                    path_w.append(pv)
                    path_we.append(pe)
                    cur = pv
                k = index_in_chain[cur]
                verts = chain_v[: k + 1] + list(reversed(path_w[:-1])) + [v]
                edges = chain_e[:k] + list(reversed(path_we)) + [idx]
                return verts, edges
        parent.clear()
    return None


def find_simple_cycle(g: Hypergraph) -> Optional[Cycle]:
    """A simple cycle of the hypergraph, if one exists.

    Found through the star graph and compressed back: repeated original
    edges in the projected walk are spliced out until all are distinct.
    """
    star, origin = graphify(g)
    raw = _graph_cycle(star)
    if raw is None:
        return None
    verts, edges = raw
    f = [origin[e] for e in edges]
    assert len(set(f)) >= 2, "a star cycle cannot sit inside one tree"
    # rotate so the first and last original edges differ
    k = next(t for t in range(len(f)) if f[t] != f[t - 1])
    verts = verts[k:-1] + verts[: k + 1]
    f = f[k:] + f[:k]
    while len(set(f)) < len(f):
        seen_at: dict[int, int] = {}
        s = t = -1
        for pos, fe in enumerate(f):
            if fe in seen_at:
                s, t = seen_at[fe], pos
                break
            seen_at[fe] = pos
        verts = verts[: s + 1] + verts[t + 1 :]
        f = f[: s + 1] + f[t + 1 :]
        if f[0] == f[-1] and len(set(f)) > 1:
            k = next(t for t in range(len(f)) if f[t] != f[t - 1])
            verts = verts[k:-1] + verts[: k + 1]
            f = f[k:] + f[:k]
    cycle = Cycle(tuple(verts), tuple(f))
    assert is_simple_cycle(g, cycle), "compression must yield a valid simple cycle"
    return cycle


@dataclass(frozen=True)
class GoodOrientation:
    """Vertex -> edge-index map with out(v) touching v and fibers |e| - 1."""

    out: tuple[int, ...]


def is_good_orientation(g: Hypergraph, out: Sequence[int]) -> bool:
    if len(out) != g.num_vertices:
        return False
    counts = [0] * len(g.edges)
    for v, e in enumerate(out):
        if not 0 <= e < len(g.edges) or v not in g.edges[e]:
            return False
        counts[e] += 1
    return all(c == len(e) - 1 for c, e in zip(counts, g.edges))


def good_orientations(g: Hypergraph) -> list[GoodOrientation]:
    """Good orientations: all of them for small edge totals, two otherwise.

    A good orientation forces e(G) = v(G), so anything else returns [].
    Beyond the exhaustive limit only the two orientations induced by the
    unique cycle of a connected graphification are built.
    """
    if g.edge_total != g.num_vertices:
        return []
    if g.edge_total <= EXHAUSTIVE_ORIENTATION_LIMIT:
        return _orientations_exhaustive(g)
    stats = hypergraph_stats(g)
    if stats.num_components != 1:
        raise DomainError(
            "good_orientations",
            "edge total exceeds the exhaustive limit and the hypergraph is disconnected",
        )
    return _orientations_from_cycle(g)


def _orientations_exhaustive(g: Hypergraph) -> list[GoodOrientation]:
    incident = [
        [e for e, edge in enumerate(g.edges) if v in edge] for v in range(g.num_vertices)
    ]
    found = []
    counts = [0] * len(g.edges)
    out = [0] * g.num_vertices

    def rec(v):
        if v == g.num_vertices:
            if all(c == len(e) - 1 for c, e in zip(counts, g.edges)):
                found.append(GoodOrientation(tuple(out)))
            return
        for e in incident[v]:
            if counts[e] < len(g.edges[e]) - 1:
                counts[e] += 1
                out[v] = e
                rec(v + 1)
                counts[e] -= 1
        return

    rec(0)
    return found


def _orientations_from_cycle(g: Hypergraph) -> list[GoodOrientation]:
    star, origin = graphify(g)
    raw = _graph_cycle(star)
    assert raw is not None, "connected with e(G) = v(G) implies a cycle"
    verts, edges = raw
    cyc_vs = verts[:-1]
    k = len(cyc_vs)
    results = []
    for reverse in (False, True):
        out_star: dict[int, int] = {}
        for t in range(k):
            # cycle edge t joins cyc_vs[t] and cyc_vs[t+1]; give it to one end
            v = cyc_vs[(t + 1) % k] if reverse else cyc_vs[t]
            out_star[v] = edges[t]
        # flow the remaining vertices toward the cycle
        adj: list[list[tuple[int, int]]] = [[] for _ in range(g.num_vertices)]
        for idx, e in enumerate(star.edges):
            a, b = sorted(e)
            adj[a].append((idx, b))
            adj[b].append((idx, a))
        frontier = list(out_star)
        reached = set(out_star)
        while frontier:
            nxt = []
            for u in frontier:
                for idx, w in adj[u]:
                    if w not in reached:
                        reached.add(w)
                        out_star[w] = idx
                        nxt.append(w)
            frontier = nxt
        assert len(reached) == g.num_vertices
        out = tuple(origin[out_star[v]] for v in range(g.num_vertices))
        assert is_good_orientation(g, out)
        results.append(GoodOrientation(out))
    assert results[0] != results[1], "the two cycle orientations must differ"
    return results


def is_complementary(A: TwMatrix, g: LinkageHypergraph) -> bool:
    """Does g pair rows with zero entries of a non-negative matrix?"""
    if g.num_vertices != A.num_cols or len(g.edges) != A.num_rows:
        return False
    if g.weights != A.weights:
        return False
    return all(
        A.entries[i][j] == 0 for i, e in enumerate(g.edges) for j in e
    )


def complementary_linkage(A: TwMatrix) -> tuple[bool, Optional[LinkageHypergraph]]:
    """A linkage hypergraph supported on zero entries, if the rows allow one.

    Row i needs at least weights[i] + 1 zeros; the canonical choice takes the
    least such columns. Any valid choice is complementary, and existence is
    equivalent to the zero vector lying in the kernel of a matrix whose row
    minima are all zero.
    """
    if not A.is_nonnegative():
        raise DomainError("complementary_linkage", "matrix must be non-negative")
    edges = []
    for i, row in enumerate(A.entries):
        zeros = [j for j, v in enumerate(row) if v == 0]
        if len(zeros) < A.weights[i] + 1:
            return False, None
        edges.append(frozenset(zeros[: A.weights[i] + 1]))
    return True, LinkageHypergraph(A.num_cols, tuple(edges), A.weights)


@dataclass(frozen=True)
class GameRescaleResult:
    matrix: TwMatrix
    row_offsets: tuple[Fraction, ...]
    col_offsets: tuple[Fraction, ...]
    first: LinkageHypergraph
    second: LinkageHypergraph


def game_rescale(A: TwMatrix, g: LinkageHypergraph) -> GameRescaleResult:
    """Connect a disconnected complementary hypergraph by repeated shifts.

    Each step picks the smallest cyclic component, shifts its rows down and
    its columns up by the largest amount keeping the matrix non-negative,
    and rewires the edge realizing the new zero. The pair (number of
    components, size of the smallest cyclic component) strictly decreases
    lexicographically, and the final rewiring admits two different choices,
    giving two connected complementary hypergraphs of the final matrix.
    """
    if not A.is_nonnegative():
        raise DomainError("game_rescale", "matrix must be non-negative")
    if A.total_weight < A.num_cols - 1:
        raise DomainError("game_rescale", "requires total weight at least N - 1")
    if not is_complementary(A, g):
        raise DomainError("game_rescale", "hypergraph is not complementary to the matrix")
    edges = list(g.edges)
    n = A.num_cols
    m = A.num_rows
    work = [list(row) for row in A.entries]
    row_off = [Fraction(0)] * m
    col_off = [Fraction(0)] * n
    labels = _component_labels(Hypergraph(n, tuple(edges)))
    if max(labels) + 1 == 1:
        raise DomainError("game_rescale", "hypergraph is already connected")

    def measure(lbls) -> tuple[int, int]:
        comps = max(lbls) + 1
        sizes = {}
        for v, l in enumerate(lbls):
            sizes[l] = sizes.get(l, 0) + 1
        cyc_sizes = []
        for l in set(lbls):
            vs = {v for v in range(n) if lbls[v] == l}
            es = [e for e in edges if e <= vs]
            et = sum(len(e) - 1 for e in es)
            if et >= len(vs):
                cyc_sizes.append(len(vs))
        return comps, min(cyc_sizes) if cyc_sizes else 0

    final_pair: Optional[tuple[frozenset[int], frozenset[int]]] = None
    star_edge = -1
    prev = measure(labels)
    while True:
        comps = max(labels) + 1
        if comps == 1:
            break
        # smallest component with a cycle, ties to the one with least vertex
        best = None
        for l in range(comps):
            vs = frozenset(v for v in range(n) if labels[v] == l)
            eidx = [i for i, e in enumerate(edges) if e <= vs]
            et = sum(len(edges[i]) - 1 for i in eidx)
            if et >= len(vs):
                key = (len(vs), min(vs))
                if best is None or key < best[0]:
                    best = (key, vs, eidx)
        assert best is not None, "a disconnected complementary pattern keeps a cyclic component"
        _, comp_vs, comp_edges = best
        outside = [j for j in range(n) if j not in comp_vs]
        delta = None
        pick = None
        for i in comp_edges:
            for j in outside:
                if delta is None or work[i][j] < delta:
                    delta, pick = work[i][j], (i, j)
        assert delta is not None and pick is not None
        i_star, j_star = pick
        for i in comp_edges:
            for j in range(n):
                work[i][j] -= delta
            row_off[i] += delta
        for j in comp_vs:
            for i in range(m):
                work[i][j] += delta
            col_off[j] += delta
        assert work[i_star][j_star] == 0
        assert all(v >= 0 for row in work for v in row)
        # components of the chosen component after deleting edge i_star
        sub_labels = _sub_components(comp_vs, [edges[i] for i in comp_edges if i != i_star])
        groups: dict[int, set[int]] = {}
        for v in comp_vs:
            groups.setdefault(sub_labels[v], set()).add(v)
        k = len(groups)
        if k <= A.weights[i_star]:
            eligible = sorted(
                v for v in edges[i_star] if len(groups[sub_labels[v]] & edges[i_star]) >= 2
            )
            assert eligible, "pigeonhole guarantees a doubly-met part"
            replaced = eligible[0]
        else:
            cyc = []
            for l, vs in groups.items():
                es = [edges[i] for i in comp_edges if i != i_star and edges[i] <= vs]
                et = sum(len(e) - 1 for e in es)
                if et >= len(vs):
                    cyc.append(vs)
            assert cyc, "counting forces a cyclic part when the edge splits maximally"
            part = min(cyc, key=min)
            inside = sorted(part & edges[i_star])
            assert len(inside) == 1
            replaced = inside[0]
            eligible = [replaced]
        old_edge = edges[i_star]
        edges[i_star] = frozenset(old_edge - {replaced}) | {j_star}
        labels = _component_labels(Hypergraph(n, tuple(edges)))
        cur = measure(labels)
        assert cur < prev, "progress measure must strictly decrease"
        prev = cur
        if max(labels) + 1 == 1:
            assert k <= A.weights[i_star], "the connecting step replaces within a doubly-met part"
            assert len(eligible) >= 2, "two rewiring choices exist at the connecting step"
            final_pair = (
                edges[i_star],
                frozenset(old_edge - {eligible[1]}) | {j_star},
            )
            star_edge = i_star
            break

    assert final_pair is not None and star_edge >= 0
    out = TwMatrix(tuple(tuple(row) for row in work), A.weights)
    g1_edges = list(edges)
    g2_edges = list(edges)
    g1_edges[star_edge] = final_pair[0]
    g2_edges[star_edge] = final_pair[1]
    g1 = LinkageHypergraph(n, tuple(g1_edges), A.weights)
    g2 = LinkageHypergraph(n, tuple(g2_edges), A.weights)
    for cand in (g1, g2):
        assert is_complementary(out, cand)
        assert hypergraph_stats(cand).num_components == 1
    assert g1 != g2
    return GameRescaleResult(
        out, tuple(row_off), tuple(col_off), g1, g2
    )


def _sub_components(vertex_set: frozenset[int], edge_list: list[frozenset[int]]) -> dict[int, int]:
    verts = sorted(vertex_set)
    pos = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in edge_list:
        it = iter(sorted(e))
        first = find(pos[next(it)])
        for v in it:
            parent[find(pos[v])] = first
    return {v: find(pos[v]) for v in verts}
