"""Edge-enumerable graphs: explicit edge lists and implicit 3D grids.

Grid vertices are laid out x-fastest, ``id = x + nx * (y + ny * z)``, and
connected to their face neighbours (6-connectivity).  Grid edges are owned
by their lower endpoint, so splitting the vertex range splits the edge set.
"""

from __future__ import annotations

from typing import Callable, Iterator

import numpy as np

from .core import MAX_VERTICES, ContractError


class ExplicitGraph:
    """Undirected graph given by an ``(m, 2)`` edge array.

    Self-loops are dropped; duplicate edges are kept.
    """

    def __init__(self, n: int, edges=()):
        n = int(n)
        if n < 0 or n > MAX_VERTICES:
            raise ContractError(f"vertex count {n} out of range")
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ContractError(f"edge endpoint out of range for n={n}")
        arr = arr[arr[:, 0] != arr[:, 1]]
        self.n = n
        self.edges = np.ascontiguousarray(arr, dtype=np.uint32)

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    def edge_range(self, start: int, stop: int) -> np.ndarray:
        return self.edges[start:stop]

    def edge_array(self) -> np.ndarray:
        return self.edges

    def __repr__(self) -> str:
        return f"ExplicitGraph(n={self.n}, m={self.edge_count})"


class GridGraph3:
    """Implicit ``nx * ny * nz`` grid; no adjacency is materialized."""

    def __init__(self, nx: int, ny: int, nz: int):
        nx, ny, nz = int(nx), int(ny), int(nz)
        if min(nx, ny, nz) < 0:
            raise ContractError("grid extents must be non-negative")
        if nx * ny * nz > MAX_VERTICES:
            raise ContractError(f"grid {nx}x{ny}x{nz} exceeds the 32-bit id range")
        self.nx, self.ny, self.nz = nx, ny, nz

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.nx, self.ny, self.nz

    @property
    def n(self) -> int:
        return self.nx * self.ny * self.nz

    @property
    def edge_count(self) -> int:
        nx, ny, nz = self.shape
        return max(nx - 1, 0) * ny * nz + nx * max(ny - 1, 0) * nz + nx * ny * max(nz - 1, 0)

    def index(self, x: int, y: int, z: int) -> int:
        return grid_index(self, x, y, z)

    def edge_range(self, start: int, stop: int) -> np.ndarray:
        """Edges owned by vertices ``start <= u < stop`` (the +x, +y, +z neighbour)."""
        nx, ny, nz = self.shape
        u = np.arange(start, min(stop, self.n), dtype=np.int64)
        x = u % nx
        y = (u // nx) % ny
        z = u // (nx * ny)
        parts = [
            np.column_stack([u[x < nx - 1], u[x < nx - 1] + 1]),
            np.column_stack([u[y < ny - 1], u[y < ny - 1] + nx]),
            np.column_stack([u[z < nz - 1], u[z < nz - 1] + nx * ny]),
        ]
        return np.concatenate(parts).astype(np.uint32, copy=False)

    def edge_array(self) -> np.ndarray:
        return self.edge_range(0, self.n)

    def __repr__(self) -> str:
        return f"GridGraph3({self.nx}, {self.ny}, {self.nz})"


GraphView = ExplicitGraph | GridGraph3


def vertex_count(g: GraphView) -> int:
    return g.n


def grid_index(g: GridGraph3, x: int, y: int, z: int) -> int:
    if not (0 <= x < g.nx and 0 <= y < g.ny and 0 <= z < g.nz):
        raise IndexError(f"({x}, {y}, {z}) outside grid {g.shape}")
    return x + g.nx * (y + g.ny * z)


def partition_extent(g: GraphView) -> int:
    """Length of the index range that ``edge_range`` splits: vertices for
    grids, edges for explicit graphs."""
    return g.n if isinstance(g, GridGraph3) else g.edge_count


def edge_chunks(g: GraphView, k: int) -> list[tuple[int, int]]:
    """Split the enumeration range into ``k`` disjoint, contiguous ranges."""
    if k < 1:
        raise ContractError("need at least one chunk")
    total = partition_extent(g)
    bounds = np.linspace(0, total, k + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]


def iter_edges(g: GraphView, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, int]]:
    stop = partition_extent(g) if stop is None else stop
    for a, b in g.edge_range(start, stop).tolist():
        yield a, b


def for_each_edge(g: GraphView, visit: Callable[[int, int], object], chunks: int = 1) -> None:
    """Call ``visit(u, v)`` once per undirected edge, chunk by chunk."""
    for start, stop in edge_chunks(g, chunks):
        for a, b in iter_edges(g, start, stop):
            visit(a, b)


def adjacency(g: GraphView) -> tuple[np.ndarray, np.ndarray]:
    """CSR ``(indptr, indices)`` of the symmetric adjacency."""
    e = g.edge_array().astype(np.int64)
    src = np.concatenate([e[:, 0], e[:, 1]])
    dst = np.concatenate([e[:, 1], e[:, 0]])
    order = np.argsort(src, kind="stable")
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=g.n), out=indptr[1:])
    return indptr, dst[order]
