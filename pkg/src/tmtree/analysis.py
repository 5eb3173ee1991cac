"""0-dimensional persistence diagrams and branch statistics from a
finalized triplet store."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .core import ContractError, ScalarField, TripletStore

INF = math.inf


@dataclass(frozen=True)
class PersistenceDiagram:
    """Finite ``(birth, death)`` pairs plus births of essential classes.

    Both lists are kept sorted ascending.
    """

    pairs: tuple[tuple[float, float], ...] = ()
    essential: tuple[float, ...] = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted((float(b), float(d)) for b, d in self.pairs)))
        object.__setattr__(self, "essential", tuple(sorted(float(b) for b in self.essential)))

    def __len__(self) -> int:
        return len(self.pairs) + len(self.essential)

    def points(self) -> list[tuple[float, float]]:
        return list(self.pairs) + [(b, INF) for b in self.essential]

    def persistence(self) -> list[float]:
        return [d - b for b, d in self.pairs]


def _key_less(f, a, b):
    return (f[a] < f[b]) | ((f[a] == f[b]) & (a < b))


def diagram_from_store(store: TripletStore, field: ScalarField, check: bool = True) -> PersistenceDiagram:
    """One point per branch: ``(f(u), f(s))`` for every ``(u, s, v)`` with
    ``s != u``, an essential class for every ``(u, u, u)``.  Regular cells
    ``(u, u, v)`` lie inside a branch and contribute nothing.
    """
    if store.n != field.n:
        raise ContractError(f"store has {store.n} cells, field has {field.n} values")
    f = field.values
    rows = store.as_array()
    u, s, v = rows[:, 0], rows[:, 1], rows[:, 2]
    finite = s != u
    essential = ~finite & (v == u)
    if check:
        _check_finalized(f, u, s, v, finite, essential)
    pairs = np.column_stack([f[u[finite]], f[s[finite]]])
    return PersistenceDiagram(tuple(map(tuple, pairs.tolist())), tuple(f[u[essential]].tolist()))


def _check_finalized(f, u, s, v, finite, essential):
    if u.size and (s.max() >= u.size or v.max() >= u.size):
        raise ContractError("cell refers to a vertex outside the store")
    ok = essential | (_key_less(f, v, u) & (~finite | _key_less(f, u, s)))
    if not ok.all():
        bad = int(u[~ok][0])
        raise ContractError(f"cell {bad} = ({int(s[bad])}, {int(v[bad])}) is not a valid triplet")
    # minimal: following v's cell at level s must go nowhere
    s2, w = s[v], v[v]
    moves = (s2 != w) & ~_key_less(f, s, s2)
    if moves.any():
        bad = int(u[moves][0])
        raise ContractError(f"store is not minimal at vertex {bad}; run repair first")


def branch_count(store: TripletStore) -> int:
    """Finite branches (``s != u``) plus essential ones (``u == s == v``)."""
    rows = store.as_array()
    u, s, v = rows[:, 0], rows[:, 1], rows[:, 2]
    return int(np.count_nonzero((s != u) | (v == u)))


def filter_by_persistence(d: PersistenceDiagram, eps: float) -> PersistenceDiagram:
    """Keep pairs with ``death - birth > eps``; essential classes always stay."""
    if eps < 0 or math.isnan(eps):
        raise ContractError(f"eps must be >= 0, got {eps}")
    return PersistenceDiagram(tuple(p for p in d.pairs if p[1] - p[0] > eps), d.essential)


def format_value(x: float) -> str:
    """Shortest round-trip decimal, without a trailing ``.0`` on integers."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    text = repr(float(x) + 0.0)
    return text[:-2] if text.endswith(".0") else text


def diagram_to_text(d: PersistenceDiagram) -> str:
    lines = [f"{format_value(b)} {format_value(dd)}" for b, dd in d.pairs]
    lines += [f"{format_value(b)} inf" for b in d.essential]
    return "".join(line + "\n" for line in lines)


def diagram_from_text(text: str) -> PersistenceDiagram:
    pairs, essential = [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        b, d = line.split()
        if d == "inf":
            essential.append(float(b))
        else:
            pairs.append((float(b), float(d)))
    return PersistenceDiagram(tuple(pairs), tuple(essential))
