"""Serial reference implementations.

``serial_merge_tree`` is the Kruskal-style sweep: vertices in ascending key
order, a disjoint-set forest tracking the deepest vertex of each sublevel
component.  ``sublevel_components`` is a plain breadth-first search and is
the ground truth both are checked against.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from .core import ContractError, ScalarField, TotalOrderKey, TripletStore
from .graph import GraphView, adjacency


class DisjointSets:
    """Union-find with path halving and a deepest-vertex label per root."""

    def __init__(self, n: int, keys=None):
        self.parent = list(range(n))
        self.deepest = list(range(n))
        # rank of each vertex in key order; deepest = smallest rank
        self._rank = list(range(n)) if keys is None else list(keys)

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        # the root of the set holding the deeper vertex survives
        if self._rank[self.deepest[rb]] < self._rank[self.deepest[ra]]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return ra

    def deepest_of(self, x: int) -> int:
        return self.deepest[self.find(x)]


def _check_sizes(field: ScalarField, g: GraphView) -> None:
    if field.n != g.n:
        raise ContractError(f"field has {field.n} values but graph has {g.n} vertices")


def key_ranks(field: ScalarField) -> np.ndarray:
    order = field.order()
    ranks = np.empty(field.n, dtype=np.int64)
    ranks[order] = np.arange(field.n)
    return ranks


def serial_merge_tree(field: ScalarField, g: GraphView) -> TripletStore:
    """Normalized, minimal triplet store by a sorted union-find sweep.

    For each vertex ``u`` in key order, the components of its lower
    neighbours decide its cell: none makes ``u`` a new minimum ``(u, u, u)``,
    otherwise ``u`` joins the deepest of them as ``(u, u, d1)`` and each other
    component's deepest vertex ``di`` is rewritten to ``(di, u, d1)``.  At the
    moment of emission ``d1`` is the deepest vertex of the merged component,
    so the result is minimal without a second pass.
    """
    _check_sizes(field, g)
    n = field.n
    ranks = key_ranks(field)
    indptr, indices = adjacency(g)
    rank = ranks.tolist()
    indptr_l = indptr.tolist()
    indices_l = indices.tolist()
    ds = DisjointSets(n, rank)
    s_out = list(range(n))
    v_out = list(range(n))

    for u in field.order().tolist():
        ru = rank[u]
        roots = {}
        for w in indices_l[indptr_l[u]:indptr_l[u + 1]]:
            if rank[w] < ru:
                r = ds.find(w)
                roots[r] = ds.deepest[r]
        if not roots:
            continue
        deep = sorted(roots.values(), key=rank.__getitem__)
        d1 = deep[0]
        v_out[u] = d1
        for d in deep[1:]:
            s_out[d] = u
            v_out[d] = d1
        for r in roots:
            ds.union(u, r)

    return TripletStore.from_triplets(zip(range(n), s_out, v_out))


def sublevel_components(field: ScalarField, g: GraphView, a: TotalOrderKey) -> list[list[int]]:
    """Connected components of the subgraph induced on ``{u : key(u) <= a}``.

    Components come out sorted by their smallest vertex id, members sorted.
    """
    _check_sizes(field, g)
    a = TotalOrderKey(*a)
    f = field.values
    below = [(f[u], u) <= a for u in range(field.n)]
    indptr, indices = adjacency(g)
    seen = [False] * field.n
    comps = []
    for start in range(field.n):
        if not below[start] or seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in indices[indptr[x]:indptr[x + 1]].tolist():
                if below[y] and not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def component_minimum(field: ScalarField, comp) -> int:
    f = field.values
    return min(comp, key=lambda x: (f[x], x))


def minimality_violations_bfs(store: TripletStore, field: ScalarField, g: GraphView) -> list[int]:
    """Vertices whose ``v`` is not the key-minimum of their component at
    ``key(s)``, by one BFS per distinct saddle level.  Quadratic; small inputs."""
    _check_sizes(field, g)
    by_level: dict[int, list[int]] = {}
    for u, s, _ in store:
        by_level.setdefault(s, []).append(u)
    bad = []
    for s, members in by_level.items():
        comps = sublevel_components(field, g, field.key(s))
        where = {}
        for comp in comps:
            m = component_minimum(field, comp)
            for x in comp:
                where[x] = m
        for u in members:
            if where.get(u) != store[u][1]:
                bad.append(u)
    return sorted(bad)


def minimality_violations_sweep(store: TripletStore, field: ScalarField, g: GraphView) -> list[int]:
    """Same check as ``minimality_violations_bfs`` in near-linear time.

    Queries are answered offline: vertices are added in key order and right
    after adding ``s`` every cell with saddle ``s`` is compared against the
    deepest vertex of its union-find set.
    """
    _check_sizes(field, g)
    n = field.n
    ranks = key_ranks(field)
    rank = ranks.tolist()
    indptr, indices = adjacency(g)
    indptr_l = indptr.tolist()
    indices_l = indices.tolist()
    rows = store.as_array()
    queries: dict[int, list[int]] = {}
    for u, s, _ in rows.tolist():
        queries.setdefault(s, []).append(u)
    v_of = rows[:, 2].tolist()
    ds = DisjointSets(n, rank)
    added = [False] * n
    bad = []
    for x in field.order().tolist():
        added[x] = True
        for y in indices_l[indptr_l[x]:indptr_l[x + 1]]:
            if added[y]:
                ds.union(x, y)
        for u in queries.get(x, ()):
            # u below key(s) and connected, else not in the sublevel set at all
            if rank[u] > rank[x] or ds.deepest_of(u) != v_of[u]:
                bad.append(u)
    return sorted(bad)
