"""Set partitions of a point set into exactly k blocks.

Partitions are enumerated as restricted growth strings (RGS) in lexicographic
order: position ``i`` holds the block label of the ``i``-th smallest point,
and labels appear in order of first occurrence. This ordering makes blocks
come out sorted by their minimum element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np


@dataclass(frozen=True)
class PartialPartition:
    """An ordered k-partition of an l-subset of the points (the support)."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if seen.intersection(b):
                raise ValueError("blocks overlap")
            seen.update(b)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "PartialPartition":
        bl = [tuple(sorted(set(b))) for b in blocks]
        bl.sort(key=lambda b: b[0] if b else -1)
        return cls(tuple(bl))

    @classmethod
    def from_labels(cls, support: Sequence[int], labels: Sequence[int]) -> "PartialPartition":
        k = max(labels) + 1
        blocks: list[list[int]] = [[] for _ in range(k)]
        for x, lab in zip(support, labels):
            blocks[int(lab)].append(int(x))
        return cls.from_blocks(blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(x for b in self.blocks for x in b))

    def block_of(self, x: int) -> int | None:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        return None

    def is_transversal(self, subset: Iterable[int]) -> bool:
        """True iff ``subset`` meets every block in exactly one point and lies in the support."""
        hits = [0] * len(self.blocks)
        for x in subset:
            i = self.block_of(x)
            if i is None:
                return False
            hits[i] += 1
        return all(h == 1 for h in hits)

    def image(self, images: Sequence[int]) -> "PartialPartition":
        return PartialPartition.from_blocks([[images[x] for x in b] for b in self.blocks])

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def stirling2(m: int, k: int) -> int:
    """Number of partitions of an m-set into k non-empty blocks."""
    if m == k:
        return 1
    if k <= 0 or k > m:
        return 0
    row = [1] + [0] * k
    for i in range(1, m + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


@lru_cache(maxsize=32)
def rgs_array(m: int, k: int) -> np.ndarray:
    """All RGS of length ``m`` using exactly ``k`` labels, lexicographically sorted.

    Returns a read-only ``(S(m, k), m)`` int8 array.
    """
    if not 1 <= k <= m:
        raise ValueError(f"need 1 <= k <= m, got k={k}, m={m}")
    if k > 127:
        raise ValueError("at most 127 blocks supported")
    rows = np.zeros((1, 1), dtype=np.int8)
    used = np.ones(1, dtype=np.int8)  # number of labels used so far
    for pos in range(1, m):
        remaining = m - pos - 1
        parents, values = [], []
        for v in range(k):
            # v may reuse a label or open the next one; the rest must still reach k
            new_used = np.maximum(used, v + 1)
            ok = (v <= used) & (new_used + remaining >= k)
            idx = np.flatnonzero(ok)
            parents.append(idx)
            values.append(np.full(len(idx), v, dtype=np.int8))
        parent = np.concatenate(parents)
        value = np.concatenate(values)
        order = np.argsort(parent.astype(np.int64) * k + value, kind="stable")
        parent, value = parent[order], value[order]
        rows = np.concatenate([rows[parent], value[:, None]], axis=1)
        used = np.maximum(used[parent], value + 1).astype(np.int8)
    rows = rows[used == k]
    rows.setflags(write=False)
    return rows


def partitions_into_k(B: Iterable[int], k: int) -> Iterator[PartialPartition]:
    """Every partition of ``B`` into exactly ``k`` non-empty blocks, once each."""
    support = sorted(set(B))
    if not 1 <= k <= len(support):
        raise ValueError(f"need 1 <= k <= |B|, got k={k}, |B|={len(support)}")
    for row in rgs_array(len(support), k):
        yield PartialPartition.from_labels(support, row.tolist())


def canonical_rgs(rows: np.ndarray, k: int) -> np.ndarray:
    """Relabel each row so labels appear in order of first occurrence."""
    m = rows.shape[1]
    first = np.full((rows.shape[0], k), m, dtype=np.int64)
    for j in range(k):
        hit = rows == j
        first[:, j] = np.where(hit.any(axis=1), hit.argmax(axis=1), m)
    relabel = np.argsort(np.argsort(first, axis=1, kind="stable"), axis=1).astype(rows.dtype)
    return np.take_along_axis(relabel, rows.astype(np.int64), axis=1)
