"""Shared domain types: scalar fields, the vertex total order, packed pairs
and the flat triplet store.

A triplet ``(u, s, v)`` is stored in cell ``u`` of a ``uint64`` array as the
packed word ``(s << 32) | v``.  Vertex ids are therefore limited to 32 bits.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

MAX_VERTICES = 1 << 32
LOW_MASK = 0xFFFFFFFF


class ContractError(ValueError):
    """Raised when a caller violates a documented precondition."""


class TotalOrderKey(NamedTuple):
    """Function value with the vertex id as tiebreak.

    Tuple comparison is lexicographic, which is exactly the order we want.
    """

    value: float
    tiebreak: int


class ScalarField:
    """Immutable per-vertex function values, stored as float64."""

    __slots__ = ("values",)

    def __init__(self, values):
        arr = np.array(values, dtype=np.float64, copy=True).reshape(-1)
        if arr.size > MAX_VERTICES:
            raise ContractError(f"{arr.size} vertices exceed the 32-bit id range")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise ContractError(f"non-finite value at vertex {int(bad[0])}")
        arr.flags.writeable = False
        self.values = arr

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def __len__(self) -> int:
        return self.n

    def key(self, u: int) -> TotalOrderKey:
        return make_key(self, u)

    def negated(self) -> ScalarField:
        # +0.0 folds -0.0 back to 0.0 so text output never shows "-0"
        return ScalarField(-self.values + 0.0)

    def order(self) -> np.ndarray:
        """Vertex ids sorted ascending by key."""
        # lexsort sorts by the last key first
        return np.lexsort((np.arange(self.n), self.values))

    def __repr__(self) -> str:
        return f"ScalarField(n={self.n})"


def make_key(field: ScalarField, u: int) -> TotalOrderKey:
    if not 0 <= u < field.n:
        raise IndexError(f"vertex {u} out of range for n={field.n}")
    return TotalOrderKey(float(field.values[u]), int(u))


def pack(s: int, v: int) -> int:
    return (int(s) << 32) | int(v)


def unpack(word: int) -> tuple[int, int]:
    word = int(word)
    return (word >> 32) & LOW_MASK, word & LOW_MASK


def pack_array(s: np.ndarray, v: np.ndarray) -> np.ndarray:
    return (np.asarray(s, dtype=np.uint64) << np.uint64(32)) | np.asarray(v, dtype=np.uint64)


def unpack_array(cells: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    cells = np.asarray(cells, dtype=np.uint64)
    return cells >> np.uint64(32), cells & np.uint64(LOW_MASK)


class TripletStore:
    """Flat array of packed ``(s, v)`` cells, one per vertex ``u``."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        self.cells = np.ascontiguousarray(cells, dtype=np.uint64)

    @classmethod
    def empty(cls, n: int) -> TripletStore:
        return cls(np.zeros(n, dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> TripletStore:
        ids = np.arange(n, dtype=np.uint64)
        return cls(pack_array(ids, ids))

    @classmethod
    def from_triplets(cls, triplets) -> TripletStore:
        """Build from an iterable of ``(u, s, v)``; every ``u`` must appear once."""
        rows = np.asarray(list(triplets), dtype=np.int64).reshape(-1, 3)
        n = rows.shape[0]
        order = np.argsort(rows[:, 0], kind="stable")
        rows = rows[order]
        if not np.array_equal(rows[:, 0], np.arange(n)):
            raise ContractError("triplets are not normalized: each u in 0..n-1 exactly once")
        return cls(pack_array(rows[:, 1], rows[:, 2]))

    @property
    def n(self) -> int:
        return int(self.cells.shape[0])

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, u: int) -> tuple[int, int]:
        return unpack(self.cells[u])

    def triplet(self, u: int) -> tuple[int, int, int]:
        s, v = unpack(self.cells[u])
        return int(u), s, v

    def __iter__(self) -> Iterator[tuple[int, int, int]]:
        for u in range(self.n):
            yield self.triplet(u)

    def as_array(self) -> np.ndarray:
        """``(n, 3)`` int64 array of ``u, s, v`` rows."""
        s, v = unpack_array(self.cells)
        return np.column_stack([np.arange(self.n, dtype=np.int64), s.astype(np.int64), v.astype(np.int64)])

    def copy(self) -> TripletStore:
        return TripletStore(self.cells.copy())

    def first_difference(self, other: TripletStore) -> int | None:
        """Smallest vertex whose cell differs, or None if the stores agree."""
        if self.n != other.n:
            return min(self.n, other.n)
        diff = np.flatnonzero(self.cells != other.cells)
        return int(diff[0]) if diff.size else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TripletStore):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.cells, other.cells))

    __hash__ = None

    def to_text(self) -> str:
        if self.n == 0:
            return ""
        rows = self.as_array()
        return "\n".join(f"{u} {s} {v}" for u, s, v in rows.tolist()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> TripletStore:
        rows = [line.split() for line in text.splitlines() if line.strip()]
        for i, row in enumerate(rows):
            if len(row) != 3 or int(row[0]) != i:
                raise ContractError(f"malformed store line {i + 1}: {' '.join(row)!r}")
        return cls.from_triplets((int(u), int(s), int(v)) for u, s, v in rows)

    def __repr__(self) -> str:
        return f"TripletStore(n={self.n})"


def check_order_invariant(store: TripletStore, field: ScalarField) -> list[int]:
    """Vertices violating ``key(v) <= key(u) <= key(s)`` or the self-cell rules."""
    bad = []
    f = field.values
    for u, s, v in store:
        ku, ks, kv = (f[u], u), (f[s], s), (f[v], v)
        if v == u:
            if s != u:
                bad.append(u)
        elif not (kv < ku <= ks):
            bad.append(u)
    return bad
