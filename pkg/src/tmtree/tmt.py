"""Parallel triplet merge tree construction.

Three phases separated by barriers: every cell starts as ``(u, u)``, every
edge is merged with lock-free compare-and-swap, and every cell is repaired to
point at the deepest vertex of its component at its saddle level.

The kernels come from the compiled ``_tmt_ext`` module when it is importable,
else from the pure-Python ``_tmt_py`` module.  ``TMTREE_BACKEND=python``
forces the fallback.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

import numpy as np

from . import _tmt_py
from .core import ContractError, ScalarField, TotalOrderKey, TripletStore, make_key
from .graph import ExplicitGraph, GraphView, GridGraph3

try:
    from . import _tmt_ext
except ImportError:  # pragma: no cover - depends on the build
    _tmt_ext = None

BACKENDS = {"python": _tmt_py}
if _tmt_ext is not None:
    BACKENDS["compiled"] = _tmt_ext


def _default_backend() -> str:
    forced = os.environ.get("TMTREE_BACKEND", "").strip().lower()
    if forced:
        if forced not in BACKENDS:
            raise ImportError(f"TMTREE_BACKEND={forced!r} is not available; have {sorted(BACKENDS)}")
        return forced
    return "compiled" if "compiled" in BACKENDS else "python"


DEFAULT_BACKEND = _default_backend()


def get_backend(name: str | None = None):
    name = DEFAULT_BACKEND if name is None else name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; have {sorted(BACKENDS)}") from None


@dataclass
class MergeStats:
    """Phase wall times in seconds and CAS counters from one run."""

    workers: int
    backend: str
    elapsed_init: float = 0.0
    elapsed_merge: float = 0.0
    elapsed_repair: float = 0.0
    cas_attempts: int = 0
    cas_failures: int = 0

    @property
    def elapsed_total(self) -> float:
        return self.elapsed_init + self.elapsed_merge + self.elapsed_repair


class MergeContext:
    """Shared store plus the immutable field it is ordered by.

    Exposes the single-step operations; ``compute_merge_tree`` runs the
    bulk kernels instead.
    """

    def __init__(self, field: ScalarField, store: TripletStore | None = None, backend: str | None = None):
        self.field = field
        self.store = TripletStore.empty(field.n) if store is None else store
        if self.store.n != field.n:
            raise ContractError(f"store has {self.store.n} cells, field has {field.n} values")
        self._kernels = get_backend(backend)

    @property
    def _values(self):
        return self.field.values

    def key(self, u: int) -> TotalOrderKey:
        return make_key(self.field, u)

    def _check(self, *vertices):
        for x in vertices:
            if not 0 <= x < self.field.n:
                raise IndexError(f"vertex {x} out of range for n={self.field.n}")

    def init_store(self, workers: int = 1) -> None:
        self._kernels.init_cells(self.store.cells, workers)

    def merge_edge(self, u: int, v: int) -> tuple[int, int]:
        """Merge one edge; returns ``(cas_attempts, cas_failures)``."""
        self._check(u, v)
        if u == v:
            return 0, 0
        return self._kernels.merge_edge_once(self._values, self.store.cells, u, v)

    def merge_triplet(self, u: int, s: int, v: int) -> tuple[int, int]:
        self._check(u, s, v)
        return self._kernels.merge_triplet_once(self._values, self.store.cells, u, s, v)

    def representative(self, u: int, a: TotalOrderKey) -> int:
        self._check(u)
        a = TotalOrderKey(*a)
        return self._kernels.representative_once(self._values, self.store.cells, u, a.value, a.tiebreak)

    def repair(self, u: int) -> None:
        self._check(u)
        self._kernels.repair_once(self._values, self.store.cells, u)

    def repair_all(self, workers: int = 1) -> None:
        self._kernels.repair_all(self._values, self.store.cells, workers)


def _merge_all(kernels, values, cells, g: GraphView, workers: int):
    if isinstance(g, GridGraph3):
        return kernels.merge_grid(values, cells, g.nx, g.ny, g.nz, workers)
    if isinstance(g, ExplicitGraph):
        return kernels.merge_edge_list(values, cells, g.edges, workers)
    raise TypeError(f"unsupported graph type {type(g).__name__}")


def run_phases(field: ScalarField, g: GraphView, workers: int = 1, backend: str | None = None,
               repair: bool = True) -> tuple[TripletStore, MergeStats]:
    """Init, merge and (optionally) repair, timing each phase."""
    if workers < 1:
        raise ContractError(f"workers must be >= 1, got {workers}")
    if field.n != g.n:
        raise ContractError(f"field has {field.n} values but graph has {g.n} vertices")
    kernels = get_backend(backend)
    stats = MergeStats(workers=workers, backend=kernels.BACKEND)
    store = TripletStore.empty(field.n)
    values = field.values

    t0 = time.perf_counter()
    kernels.init_cells(store.cells, workers)
    t1 = time.perf_counter()
    stats.cas_attempts, stats.cas_failures = (int(x) for x in _merge_all(kernels, values, store.cells, g, workers))
    t2 = time.perf_counter()
    if repair:
        kernels.repair_all(values, store.cells, workers)
    t3 = time.perf_counter()

    stats.elapsed_init = t1 - t0
    stats.elapsed_merge = t2 - t1
    stats.elapsed_repair = t3 - t2
    return store, stats


def compute_merge_tree(field: ScalarField, g: GraphView, workers: int = 1, backend: str | None = None) -> TripletStore:
    return run_phases(field, g, workers, backend)[0]


def compute_split_tree(field: ScalarField, g: GraphView, workers: int = 1, backend: str | None = None) -> TripletStore:
    """Merge tree of ``-f``; the vertex-id tiebreak keeps its direction."""
    return compute_merge_tree(field.negated(), g, workers, backend)


def merge_serially(field: ScalarField, edges, backend: str | None = None, repair: bool = True) -> TripletStore:
    """Merge ``edges`` one at a time in the given order (for permutation tests)."""
    ctx = MergeContext(field, backend=backend)
    ctx.init_store()
    for a, b in np.asarray(edges, dtype=np.int64).reshape(-1, 2).tolist():
        ctx.merge_edge(a, b)
    if repair:
        ctx.repair_all()
    return ctx.store
