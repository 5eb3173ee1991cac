import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmtree.core import ContractError
from tmtree.graph import (
    ExplicitGraph,
    GridGraph3,
    adjacency,
    edge_chunks,
    for_each_edge,
    grid_index,
    iter_edges,
    vertex_count,
)


def brute_force_grid_edges(nx, ny, nz):
    """All pairs of grid points at Manhattan distance one."""
    pts = list(itertools.product(range(nx), range(ny), range(nz)))
    out = set()
    for a, b in itertools.combinations(pts, 2):
        if sum(abs(i - j) for i, j in zip(a, b)) == 1:
            ia = a[0] + nx * (a[1] + ny * a[2])
            ib = b[0] + nx * (b[1] + ny * b[2])
            out.add((min(ia, ib), max(ia, ib)))
    return out


def collect(g, chunks=1):
    seen = []
    for_each_edge(g, lambda a, b: seen.append((min(a, b), max(a, b))), chunks=chunks)
    return seen


@pytest.mark.parametrize("g, n", [(GridGraph3(2, 2, 2), 8), (ExplicitGraph(5, []), 5), (GridGraph3(128, 128, 128), 2097152)])
def test_vertex_count(g, n):
    assert vertex_count(g) == n


def test_grid_edge_counts_match_brute_force():
    assert brute_force_grid_edges(2, 2, 2).__len__() == 12
    assert len(brute_force_grid_edges(3, 3, 3)) == 54
    assert len(collect(GridGraph3(2, 2, 2))) == 12
    assert len(collect(GridGraph3(3, 3, 3))) == 54
    g = GridGraph3(3, 3, 3)
    assert g.edge_count == 3 * 27 - 9 - 9 - 9


@given(st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_grid_edges_exact(nx, ny, nz):
    g = GridGraph3(nx, ny, nz)
    seen = collect(g)
    assert len(seen) == len(set(seen)) == g.edge_count
    assert all(a != b for a, b in seen)
    assert set(seen) == brute_force_grid_edges(nx, ny, nz)
    assert g.edge_count == 3 * nx * ny * nz - nx * ny - ny * nz - nx * nz


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.sampled_from([1, 2, 7]))
def test_chunked_enumeration_is_identical(nx, ny, nz, k):
    g = GridGraph3(nx, ny, nz)
    assert sorted(collect(g, k)) == sorted(collect(g, 1))
    bounds = edge_chunks(g, k)
    assert bounds[0][0] == 0 and bounds[-1][1] == g.n
    assert all(a[1] == b[0] for a, b in zip(bounds, bounds[1:]))


def test_explicit_chunks(rng):
    edges = rng.integers(0, 30, size=(100, 2))
    g = ExplicitGraph(30, edges)
    for k in (1, 2, 7):
        assert sorted(collect(g, k)) == sorted(collect(g, 1))


def test_explicit_single_edge():
    assert list(iter_edges(ExplicitGraph(2, [(0, 1)]))) == [(0, 1)]


def test_explicit_drops_self_loops_keeps_duplicates():
    g = ExplicitGraph(3, [(0, 0), (0, 1), (0, 1), (2, 2)])
    assert g.edges.tolist() == [[0, 1], [0, 1]]


def test_explicit_rejects_out_of_range():
    with pytest.raises(ContractError):
        ExplicitGraph(2, [(0, 2)])


def test_grid_index():
    assert grid_index(GridGraph3(4, 4, 4), 0, 0, 0) == 0
    assert grid_index(GridGraph3(4, 4, 4), 1, 2, 3) == 57
    g = GridGraph3(3, 5, 2)
    assert grid_index(g, 2, 4, 1) == g.n - 1
    with pytest.raises(IndexError):
        grid_index(g, 3, 0, 0)


def test_grid_size_limit():
    with pytest.raises(ContractError):
        GridGraph3(2**11, 2**11, 2**11)


def test_adjacency_symmetric():
    g = GridGraph3(3, 2, 2)
    indptr, indices = adjacency(g)
    nbrs = {u: set(indices[indptr[u]:indptr[u + 1]].tolist()) for u in range(g.n)}
    for u in range(g.n):
        for w in nbrs[u]:
            assert u in nbrs[w]
    assert sum(len(s) for s in nbrs.values()) == 2 * g.edge_count
    assert np.all(np.diff(indptr) <= 6)
