"""Pure-Python kernels, used when the compiled extension is unavailable.

Same entry points as ``_tmt_ext``.  Workers are threads; the hardware CAS is
emulated by a single mutex around the compare and the store, which is the
only place a lock appears.  Under the GIL this gives interleaving rather than
speedup, but it exercises the same retry paths.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor

import numpy as np

BACKEND = "python"

_MASK = 0xFFFFFFFF


class AtomicCells:
    """List of packed words with load and compare-and-swap."""

    __slots__ = ("data", "_lock")

    def __init__(self, data):
        self.data = data
        self._lock = threading.Lock()

    def load(self, i):
        return self.data[i]

    def store(self, i, word):
        self.data[i] = word

    def cas(self, i, expected, desired):
        with self._lock:
            if self.data[i] != expected:
                return False
            self.data[i] = desired
            return True


def _less(f, a, b):
    fa = f[a]
    fb = f[b]
    return fa < fb or (fa == fb and a < b)


def merge_triplet(f, cells, u, s, v, stats=None):
    """Lock-free merge of ``u`` and ``v`` at saddle ``s``.

    The recursive formulation is unrolled: every call is a tail call.
    """
    while True:
        cu = cells.load(u)
        s_u = cu >> 32
        u_next = cu & _MASK
        # root cells (u, u) have nowhere to climb
        if u_next != u and _less(f, s_u, s):
            u = u_next
            continue
        cv = cells.load(v)
        s_v = cv >> 32
        v_next = cv & _MASK
        if v_next != v and _less(f, s_v, s):
            v = v_next
            continue
        if u == v:
            return
        if _less(f, v, u):
            u, v = v, u
            cu, cv = cv, cu
            s_u, s_v = s_v, s_u
            u_next, v_next = v_next, u_next
        if stats is not None:
            stats[0] += 1
        if cells.cas(v, cv, (s << 32) | u):
            if v_next == v:
                # displaced a root: nothing left to reattach
                return
            s, v = s_v, v_next
        elif stats is not None:
            stats[1] += 1


def merge_edge(f, cells, a, b, stats=None):
    if a == b:
        return
    if _less(f, b, a):
        merge_triplet(f, cells, a, a, b, stats)
    else:
        merge_triplet(f, cells, b, b, a, stats)


def representative(f, cells, u, a_value, a_tie):
    """Deepest vertex of ``u``'s component at level ``(a_value, a_tie)``."""
    word = cells.load(u)
    s = word >> 32
    v = word & _MASK
    while s != v and (f[s] < a_value or (f[s] == a_value and s <= a_tie)):
        u = v
        word = cells.load(u)
        s = word >> 32
        v = word & _MASK
    # the walk stops at u: its own cell merges above the level
    return u


def repair_vertex(f, cells, u):
    word = cells.load(u)
    s = word >> 32
    rep = representative(f, cells, u, f[s], s)
    if rep != u:
        cells.store(u, (s << 32) | rep)


def _run_chunks(fn, bounds, workers):
    if workers == 1:
        return [fn(a, b) for a, b in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: fn(*ab), bounds))


def _bounds(total, workers):
    # more chunks than workers so the threads actually interleave
    k = max(1, min(total, workers * 4)) if workers > 1 else 1
    edges = np.linspace(0, total, k + 1).astype(np.int64).tolist()
    return list(zip(edges[:-1], edges[1:]))


def _sync_back(out, cells):
    out[:] = np.fromiter(cells.data, dtype=np.uint64, count=len(cells.data))


def init_cells(out, workers=1):
    n = out.shape[0]
    ids = np.arange(n, dtype=np.uint64)
    out[:] = (ids << np.uint64(32)) | ids


def _merge_ranges(values, out, edge_range, total, workers):
    f = values.tolist()
    cells = AtomicCells(out.tolist())

    def work(start, stop):
        stats = [0, 0]
        for a, b in edge_range(start, stop).tolist():
            merge_edge(f, cells, a, b, stats)
        return stats

    results = _run_chunks(work, _bounds(total, workers), workers)
    _sync_back(out, cells)
    return sum(r[0] for r in results), sum(r[1] for r in results)


def merge_grid(values, out, nx, ny, nz, workers=1):
    from .graph import GridGraph3

    g = GridGraph3(nx, ny, nz)
    return _merge_ranges(values, out, g.edge_range, g.n, workers)


def merge_edge_list(values, out, edges, workers=1):
    return _merge_ranges(values, out, lambda a, b: edges[a:b], edges.shape[0], workers)


def repair_all(values, out, workers=1):
    f = values.tolist()
    cells = AtomicCells(out.tolist())

    def work(start, stop):
        for u in range(start, stop):
            repair_vertex(f, cells, u)

    _run_chunks(work, _bounds(out.shape[0], workers), workers)
    _sync_back(out, cells)


# single-operation entry points on a numpy cell array


class _ArrayCells(AtomicCells):
    def load(self, i):
        return int(self.data[i])


def merge_triplet_once(values, out, u, s, v):
    stats = [0, 0]
    merge_triplet(values, _ArrayCells(out), int(u), int(s), int(v), stats)
    return stats[0], stats[1]


def merge_edge_once(values, out, a, b):
    stats = [0, 0]
    merge_edge(values, _ArrayCells(out), int(a), int(b), stats)
    return stats[0], stats[1]


def representative_once(values, out, u, a_value, a_tie):
    return int(representative(values, _ArrayCells(out), int(u), float(a_value), int(a_tie)))


def repair_once(values, out, u):
    repair_vertex(values, _ArrayCells(out), int(u))
