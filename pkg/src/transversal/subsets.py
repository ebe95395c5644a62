"""Vectorised k-subsets of ``range(n)`` and their orbits under a permutation group.

Subsets are rows of sorted point indices. Every k-subset has a colex rank
``sum(C(x_i, i + 1))`` which doubles as its index in :func:`all_subsets`.
Orbits are found as connected components of the graph joining each subset to
its images under the generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

DEFAULT_MAX_SUBSETS = 20_000_000


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size or work budget."""

    def __init__(self, message: str, progress: dict | None = None):
        super().__init__(message)
        self.progress = progress or {}


def binom_table(n: int, k: int) -> np.ndarray:
    """``table[x, j] == C(x, j)`` for ``0 <= x <= n``, ``0 <= j <= k``."""
    t = np.zeros((n + 1, k + 1), dtype=np.int64)
    for x in range(n + 1):
        for j in range(min(x, k) + 1):
            t[x, j] = comb(x, j)
    return t


def _point_dtype(n: int):
    return np.int16 if n < 2**15 else np.int32


def all_subsets(n: int, k: int) -> np.ndarray:
    """All k-subsets of ``range(n)`` as a ``(C(n,k), k)`` array in colex order."""
    dt = _point_dtype(n)
    if k == 0:
        return np.zeros((1, 0), dtype=dt)
    rows = np.arange(n, dtype=dt)[:, None]
    for j in range(2, k + 1):
        counts = np.array([comb(x, j - 1) for x in range(n)], dtype=np.int64)
        total = int(counts.sum())
        offsets = np.cumsum(counts) - counts
        idx = np.arange(total, dtype=np.int64) - np.repeat(offsets, counts)
        last = np.repeat(np.arange(n, dtype=dt), counts)
        rows = np.concatenate([rows[idx], last[:, None]], axis=1)
    return rows


def rank_subsets(rows: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Colex ranks of sorted rows."""
    rows = np.asarray(rows)
    r = np.zeros(rows.shape[0], dtype=np.int64)
    for i in range(rows.shape[1]):
        r += table[rows[:, i], i + 1]
    return r


def rank_subset(points: Iterable[int]) -> int:
    return sum(comb(x, i + 1) for i, x in enumerate(sorted(points)))


def lex_order(rows: np.ndarray) -> np.ndarray:
    """Indices sorting the rows lexicographically."""
    if rows.shape[1] == 0:
        return np.arange(rows.shape[0])
    return np.lexsort(rows.T[::-1])


@dataclass(eq=False)
class KSubsetOrbit:
    """One orbit of a group on k-subsets, i.e. a G-invariant k-uniform hypergraph."""

    id: int
    k: int
    members: np.ndarray  # (size, k), rows sorted, lex order
    ranks: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return int(self.members.shape[0])

    @property
    def rep(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.members[0])

    def __len__(self) -> int:
        return self.size

    def __contains__(self, subset) -> bool:
        s = sorted(subset)
        if len(s) != self.k:
            return False
        r = rank_subset(s)
        i = np.searchsorted(self._sorted_ranks, r)
        return bool(i < len(self._sorted_ranks) and self._sorted_ranks[i] == r)

    @property
    def _sorted_ranks(self) -> np.ndarray:
        sr = self.__dict__.get("_sr")
        if sr is None:
            sr = self.__dict__["_sr"] = np.sort(self.ranks)
        return sr

    def __iter__(self):
        for row in self.members:
            yield tuple(int(x) for x in row)


class KSubsetOrbits(Sequence):
    """The orbit partition of all k-subsets, with a rank-indexed membership table."""

    def __init__(self, n: int, k: int, labels: np.ndarray, subsets: np.ndarray,
                 table: np.ndarray):
        self.n = n
        self.k = k
        self.labels = labels  # orbit id of the subset with colex rank i
        self.subsets = subsets
        self.table = table
        order = lex_order(subsets)
        sorted_labels = labels[order]
        self._orbits = []
        nb = int(labels.max()) + 1 if len(labels) else 0
        # group members by orbit while keeping lex order inside each orbit
        by_orbit = np.argsort(sorted_labels, kind="stable")
        bounds = np.searchsorted(sorted_labels[by_orbit], np.arange(nb + 1))
        for oid in range(nb):
            idx = order[by_orbit[bounds[oid]:bounds[oid + 1]]]
            self._orbits.append(KSubsetOrbit(oid, k, subsets[idx], idx.astype(np.int64)))

    def __len__(self) -> int:
        return len(self._orbits)

    def __getitem__(self, i):
        return self._orbits[i]

    def orbit_id(self, subset: Iterable[int]) -> int:
        s = sorted(subset)
        if len(s) != self.k:
            raise ValueError(f"expected a {self.k}-subset, got {s}")
        return int(self.labels[rank_subset(s)])

    def orbit_of(self, subset: Iterable[int]) -> KSubsetOrbit:
        return self._orbits[self.orbit_id(subset)]

    def ids_of(self, rows: np.ndarray) -> np.ndarray:
        """Orbit ids for an array of sorted rows."""
        return self.labels[rank_subsets(rows, self.table)]

    def sizes(self) -> list[int]:
        return [o.size for o in self._orbits]

    def representatives(self) -> list[tuple[int, ...]]:
        return [o.rep for o in self._orbits]


def image_rows(rows: np.ndarray, images: np.ndarray) -> np.ndarray:
    """Apply a permutation (as an image array) to each row and re-sort."""
    out = images[rows]
    out.sort(axis=1)
    return out


def subset_orbits(generators: Sequence[Sequence[int]], n: int, k: int,
                  max_subsets: int = DEFAULT_MAX_SUBSETS) -> KSubsetOrbits:
    """Orbits on k-subsets of the group generated by ``generators`` (image tuples)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    total = comb(n, k)
    if total > max_subsets:
        raise BudgetExceeded(f"C({n},{k}) = {total} subsets exceeds budget {max_subsets}",
                             {"subsets": total, "budget": max_subsets})
    table = binom_table(n, k)
    rows = all_subsets(n, k)
    src = np.arange(total, dtype=np.int64)
    heads, tails = [], []
    for g in generators:
        img = np.asarray(g, dtype=rows.dtype)
        dst = rank_subsets(image_rows(rows, img), table)
        moved = dst != src
        heads.append(src[moved])
        tails.append(dst[moved])
    if heads:
        h = np.concatenate(heads)
        t = np.concatenate(tails)
    else:
        h = t = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(len(h), dtype=np.int8), (h, t)), shape=(total, total))
    _, comp = connected_components(graph, directed=True, connection="weak")
    # relabel so orbit ids follow the lex order of their minimal members
    order = lex_order(rows)
    comps, first = np.unique(comp[order], return_index=True)
    remap = np.empty(len(comps), dtype=np.int32)
    remap[comps[np.argsort(first)]] = np.arange(len(comps), dtype=np.int32)
    labels = remap[comp]
    return KSubsetOrbits(n, k, labels, rows, table)
