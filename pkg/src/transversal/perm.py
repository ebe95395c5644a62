"""Permutations of {0, ..., n-1} stored as image tuples.

A permutation acts on the right: ``x * (p * q) == (x * p) * q``, so ``p * q``
applies ``p`` first. Cycle notation is 0-based, e.g. ``(0 1 2)(3 4)``.
"""

from __future__ import annotations

import re
from operator import itemgetter
from typing import Iterable, Sequence


def _compose(p: tuple, q: tuple) -> tuple:
    # x -> q[p[x]]
    if len(p) == 1:
        return (q[p[0]],)
    return itemgetter(*p)(q)


def _invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


class Permutation:
    """A bijection of ``range(n)``; ``images[i]`` is the image of ``i``."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                if not 0 <= x < n:
                    raise ValueError(f"point {x} out of range for degree {n}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls._raw(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int) -> "Permutation":
        """Parse 0-based cycle notation such as ``(0 1 2)(3 4)`` or ``()``."""
        return cls.from_cycles(parse_cycles(text), n)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, e: int) -> "Permutation":
        if e < 0:
            return self.inverse() ** (-e)
        result = Permutation.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Permutation":
        return Permutation._raw(_invert(self.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles()), 1)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        out = []
        seen = [False] * len(self.images)
        for i in range(len(self.images)):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self.images) if i != x]

    def image_of_set(self, points: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.images[x] for x in points))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self.images)!r}, n={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self.images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation mapping ``x`` to ``(x p) q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    return Permutation._raw(_compose(p.images, q.images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"could not parse permutation {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            cyc = [int(x) for x in body]
        except ValueError:
            raise ValueError(f"could not parse permutation {text!r}") from None
        if cyc:
            cycles.append(cyc)
    if text[pos:].strip():
        raise ValueError(f"could not parse permutation {text!r}")
    return cycles


def format_cycles(images: Sequence[int]) -> str:
    p = Permutation._raw(tuple(images))
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
