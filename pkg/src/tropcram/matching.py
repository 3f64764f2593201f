"""Exact min-cost bipartite b-matching by successive shortest paths.

Rows carry integer capacities, columns take exactly one unit. Costs are
Fractions and all comparisons are exact. Used for permanent-style minimum
selections too large to enumerate.
"""

from fractions import Fraction
from typing import Optional, Sequence


def solve_b_matching(
    costs: Sequence[Sequence[Fraction]], supplies: Sequence[int]
) -> tuple[Fraction, list[int]]:
    """Assign every column to a row, row i taking exactly supplies[i] columns.

    Returns (total cost, column -> row assignment). Requires
    sum(supplies) == number of columns. Augments along exact shortest paths,
    so intermediate flows stay optimal and negative costs are fine.
    """
    m = len(costs)
    n = len(costs[0]) if m else 0
    if sum(supplies) != n:
        raise ValueError("supplies must sum to the number of columns")
    owner: list[Optional[int]] = [None] * n
    load = [0] * m
    total = Fraction(0)
    for _ in range(n):
        dist, pred = _shortest_alternating(costs, supplies, owner, load)
        target = None
        for j in range(n):
            if owner[j] is None and dist[m + j] is not None:
                if target is None or dist[m + j] < dist[m + target]:
                    target = j
        if target is None:
            raise ValueError("no feasible assignment")
        total += dist[m + target]
        node = m + target
        while pred[node] is not None:
            prev = pred[node]
            if node >= m:  # row -> column arc: prev takes this column
                owner[node - m] = prev
            node = prev
        # recount loads from scratch; n is small and this avoids sign errors
        load = [0] * m
        for j in range(n):
            if owner[j] is not None:
                load[owner[j]] += 1
    assert all(o is not None for o in owner)
    return total, list(owner)


def _shortest_alternating(costs, supplies, owner, load):
    """Bellman-Ford over the residual graph.

    Nodes: rows 0..m-1, columns m..m+n-1. Sources: rows with spare capacity.
    Arcs: row i -> col j (cost c[i][j]) when j is not matched to i;
    col j -> row i (cost -c[i][j]) when j is matched to i.
    """
    m = len(costs)
    n = len(costs[0])
    size = m + n
    dist: list[Optional[Fraction]] = [None] * size
    pred: list[Optional[int]] = [None] * size
    for i in range(m):
        if load[i] < supplies[i]:
            dist[i] = Fraction(0)
    for _ in range(size):
        changed = False
        for i in range(m):
            if dist[i] is None:
                continue
            for j in range(n):
                if owner[j] == i:
                    continue
                nd = dist[i] + costs[i][j]
                if dist[m + j] is None or nd < dist[m + j]:
                    dist[m + j] = nd
                    pred[m + j] = i
                    changed = True
        for j in range(n):
            if dist[m + j] is None or owner[j] is None:
                continue
            i = owner[j]
            nd = dist[m + j] - costs[i][j]
            if dist[i] is None or nd < dist[i]:
                dist[i] = nd
                pred[i] = m + j
                changed = True
        if not changed:
            break
    return dist, pred


def potentials(costs, supplies, owner) -> list[Fraction]:
    """Feasible node potentials for the finished matching.

    Computed as shortest distances from a virtual source connected to every
    node at cost 0; reduced costs of all residual arcs are then >= 0.
    """
    m = len(costs)
    n = len(costs[0])
    size = m + n
    dist = [Fraction(0)] * size
    for _ in range(size):
        changed = False
        for i in range(m):
            for j in range(n):
                if owner[j] == i:
                    nd = dist[m + j] - costs[i][j]
                    if nd < dist[i]:
                        dist[i] = nd
                        changed = True
                else:
                    nd = dist[i] + costs[i][j]
                    if nd < dist[m + j]:
                        dist[m + j] = nd
                        changed = True
        if not changed:
            break
    else:
        raise AssertionError("negative residual cycle: matching was not optimal")
    return dist


def zero_residual_cycle(costs, owner, pot) -> Optional[list[int]]:
    """A directed cycle of zero-reduced-cost residual arcs, if one exists.

    All residual arcs have non-negative reduced cost under feasible
    potentials, so a zero-total-cost residual cycle (equivalently, a second
    optimal matching) exists iff the zero-reduced-cost arcs contain a
    directed cycle. Returns the node cycle (rows 0..m-1, columns m..m+n-1).
    """
    m = len(costs)
    n = len(costs[0])
    succ: list[list[int]] = [[] for _ in range(m + n)]
    for i in range(m):
        for j in range(n):
            if owner[j] == i:
                if -costs[i][j] + pot[m + j] - pot[i] == 0:
                    succ[m + j].append(i)
            else:
                if costs[i][j] + pot[i] - pot[m + j] == 0:
                    succ[i].append(m + j)
    color = [0] * (m + n)
    stack: list[int] = []

    def dfs(v) -> Optional[list[int]]:
        color[v] = 1
        stack.append(v)
        for w in succ[v]:
            if color[w] == 1:
                return stack[stack.index(w):]
            if color[w] == 0:
                found = dfs(w)
                if found is not None:
                    return found
        stack.pop()
        color[v] = 2
        return None

    for v in range(m + n):
        if color[v] == 0:
            found = dfs(v)
            if found is not None:
                return found
    return None


def apply_cycle(owner: list[int], cycle: list[int], m: int) -> list[int]:
    """Matching after pushing one unit around a residual node cycle."""
    new_owner = list(owner)
    k = len(cycle)
    for t in range(k):
        v, w = cycle[t], cycle[(t + 1) % k]
        if v < m <= w:
            new_owner[w - m] = v
    return new_owner
