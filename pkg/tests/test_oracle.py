import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tmtree import ExplicitGraph, GridGraph3, ScalarField, TotalOrderKey
from tmtree.core import ContractError
from tmtree.oracle import (
    DisjointSets,
    minimality_violations_bfs,
    minimality_violations_sweep,
    serial_merge_tree,
    sublevel_components,
)
from tmtree.synthetic import erdos_renyi, random_values


def test_disjoint_sets_tracks_deepest():
    ds = DisjointSets(5, keys=[4, 3, 2, 1, 0])
    ds.union(0, 1)
    assert ds.deepest_of(0) == 1
    ds.union(2, 4)
    ds.union(1, 4)
    assert ds.deepest_of(0) == 4
    assert ds.find(0) == ds.find(2)
    assert ds.find(3) == 3
    root = ds.find(0)
    assert ds.find(0) == root  # idempotent after compression


def test_p3(p3):
    f, g = p3
    assert list(serial_merge_tree(f, g)) == [(0, 0, 0), (1, 1, 0), (2, 1, 0)]


def test_edgeless():
    assert list(serial_merge_tree(ScalarField([3.0, 1.0, 2.0]), ExplicitGraph(3))) == [(0, 0, 0), (1, 1, 1), (2, 2, 2)]


def test_two_components():
    f = ScalarField([0.0, 1.0, 5.0])
    g = ExplicitGraph(3, [(0, 1)])
    assert list(serial_merge_tree(f, g)) == [(0, 0, 0), (1, 1, 0), (2, 2, 2)]
    comps = sublevel_components(f, g, f.key(2))
    assert comps == [[0, 1], [2]]


def test_size_mismatch():
    with pytest.raises(ContractError):
        serial_merge_tree(ScalarField([1.0]), ExplicitGraph(2))


def test_sublevel_components_levels(p3):
    f, g = p3
    assert sublevel_components(f, g, TotalOrderKey(0.5, 0)) == []
    assert sublevel_components(f, g, f.key(2)) == [[0], [2]]
    assert sublevel_components(f, g, f.key(1)) == [[0, 1, 2]]


def _instance(seed):
    rng = np.random.default_rng(seed)
    if seed % 2:
        n = int(rng.integers(1, 60))
        g = erdos_renyi(n, [0.01, 0.1, 0.5][seed % 3], rng)
    else:
        g = GridGraph3(*rng.integers(1, 6, size=3))
    return ScalarField(random_values(g.n, rng, ties=seed % 4 < 2)), g


@pytest.mark.parametrize("seed", range(40))
def test_oracle_self_check(seed):
    f, g = _instance(seed)
    store = serial_merge_tree(f, g)
    assert minimality_violations_bfs(store, f, g) == []
    assert minimality_violations_sweep(store, f, g) == []


@pytest.mark.parametrize("seed", range(20))
def test_sweep_agrees_with_bfs_on_corrupted_stores(seed):
    f, g = _instance(seed)
    store = serial_merge_tree(f, g).copy()
    rng = np.random.default_rng(seed + 1000)
    for u in rng.integers(0, f.n, size=3):
        s, v = store[int(u)]
        store.cells[u] = (s << 32) | int(rng.integers(0, f.n))
    assert minimality_violations_sweep(store, f, g) == minimality_violations_bfs(store, f, g)


@given(st.integers(0, 10**6))
def test_oracle_edge_permutation_invariant(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 25))
    g = erdos_renyi(n, 0.3, rng)
    f = ScalarField(random_values(n, rng, ties=True))
    shuffled = ExplicitGraph(n, rng.permutation(g.edges)[:, ::-1])
    assert serial_merge_tree(f, g) == serial_merge_tree(f, shuffled)
