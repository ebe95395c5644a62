"""Permutation groups given by generators, backed by a stabilizer chain.

The chain is built by deterministic Schreier-Sims: base points are chosen
greedily as the first point moved by a generator that fixes the current base,
and Schreier generators are sifted in a fixed order, so repeated runs give the
same base, strong generators and transversals.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .perm import Permutation, _compose, _invert
from .subsets import DEFAULT_MAX_SUBSETS, BudgetExceeded, KSubsetOrbit, subset_orbits

# Groups up to this order have their setwise stabilizers found by a full scan.
SETWISE_SCAN_LIMIT = 100_000


class _Level:
    __slots__ = ("point", "gens", "trans", "_inv")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple] = {}
        self._inv: dict[int, tuple] = {}

    def rebuild(self, ident: tuple) -> None:
        b = self.point
        trans = {b: ident}
        queue = [b]
        gens = self.gens
        for p in queue:
            up = trans[p]
            for s in gens:
                q = s[p]
                if q not in trans:
                    trans[q] = _compose(up, s)
                    queue.append(q)
        self.trans = trans
        self._inv = {}

    def inv(self, p: int) -> tuple:
        u = self._inv.get(p)
        if u is None:
            u = self._inv[p] = _invert(self.trans[p])
        return u


class StabilizerChain:
    """Base, strong generators and transversals of a permutation group."""

    def __init__(self, generators: Sequence[tuple], degree: int,
                 base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.levels: list[_Level] = []
        gens = [g for g in dict.fromkeys(generators) if g != self.ident]
        for b in base_prefix:
            self.levels.append(_Level(b))
        for g in gens:
            self._ensure_moved(g)
        for i, lev in enumerate(self.levels):
            fixed = [lv.point for lv in self.levels[:i]]
            lev.gens = [g for g in gens if all(g[b] == b for b in fixed)]
        for lev in self.levels:
            lev.rebuild(self.ident)
        self._complete()

    def _ensure_moved(self, g: tuple) -> None:
        if any(g[lv.point] != lv.point for lv in self.levels):
            return
        for x, y in enumerate(g):
            if x != y:
                self.levels.append(_Level(x))
                return

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def sift(self, h: tuple, start: int = 0) -> tuple[tuple, int]:
        levels = self.levels
        for j in range(start, len(levels)):
            lev = levels[j]
            p = h[lev.point]
            if p not in lev.trans:
                return h, j
            if p != lev.point:
                h = _compose(h, lev.inv(p))
        return h, len(levels)

    def _add(self, h: tuple, i: int, j: int) -> None:
        if j == len(self.levels):
            for x, y in enumerate(h):
                if x != y:
                    self.levels.append(_Level(x))
                    break
        for lv in self.levels[i:j + 1]:
            lv.gens.append(h)
            lv.rebuild(self.ident)

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lev = self.levels[i]
            restart = False
            for p, up in list(lev.trans.items()):
                for s in lev.gens:
                    q = s[p]
                    h = _compose(_compose(up, s), lev.inv(q))
                    if h == self.ident:
                        continue
                    r, j = self.sift(h, i + 1)
                    if r != self.ident:
                        self._add(r, i + 1, j)
                        i = j if j < len(self.levels) else len(self.levels) - 1
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def order(self) -> int:
        return prod(len(lv.trans) for lv in self.levels)

    def contains(self, g: tuple) -> bool:
        r, _ = self.sift(g)
        return r == self.ident

    def strong_generators(self) -> list[tuple]:
        return list(dict.fromkeys(g for lv in self.levels for g in lv.gens))

    def elements(self) -> Iterator[tuple]:
        """Every group element once, as ``u_{m-1} ... u_1 u_0`` over transversals."""
        levels = self.levels
        m = len(levels)

        def rec(i: int, prefix: tuple):
            if i < 0:
                yield prefix
                return
            for u in levels[i].trans.values():
                yield from rec(i - 1, _compose(prefix, u))

        yield from rec(m - 1, self.ident)


class PermutationGroup:
    """A permutation group on ``range(degree)`` given by generators."""

    def __init__(self, generators: Iterable[Permutation | Sequence[int]],
                 degree: int | None = None, name: str | None = None,
                 base_prefix: Sequence[int] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            gens.append(g)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        if degree < 1:
            raise ValueError("degree must be at least 1")
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
        if not gens:
            gens = [Permutation.identity(degree)]
        self.degree = degree
        self.generators = gens
        self.name = name
        self._base_prefix = tuple(base_prefix)
        self._chain: StabilizerChain | None = None
        self._orbit_cache: dict[int, object] = {}

    def __repr__(self) -> str:
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermutationGroup({label}, degree={self.degree})"

    # -- chain -----------------------------------------------------------
    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain([g.images for g in self.generators],
                                          self.degree, self._base_prefix)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def base(self) -> list[int]:
        return self.chain.base

    def strong_generators(self) -> list[Permutation]:
        return [Permutation._raw(g) for g in self.chain.strong_generators()]

    def __contains__(self, g: Permutation) -> bool:
        return self.contains(g)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        return self.chain.contains(g.images)

    def elements(self) -> Iterator[Permutation]:
        for g in self.chain.elements():
            yield Permutation._raw(g)

    def random_element(self, rng) -> Permutation:
        g = self.chain.ident
        for lev in self.chain.levels:
            u = list(lev.trans.values())[rng.randrange(len(lev.trans))]
            g = _compose(g, u)
        return Permutation._raw(g)

    def with_base(self, base_prefix: Sequence[int]) -> "PermutationGroup":
        """Same group, chain rebuilt so the base starts with ``base_prefix``."""
        gens = self.strong_generators() if self._chain is not None else self.generators
        return PermutationGroup(gens, self.degree, self.name, base_prefix)

    # -- orbits ----------------------------------------------------------
    def orbit(self, a: int) -> list[int]:
        seen = {a}
        queue = [a]
        imgs = [g.images for g in self.generators]
        for x in queue:
            for g in imgs:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def orbits(self) -> list[tuple[int, ...]]:
        """Point orbits, each sorted, listed by smallest element."""
        seen = [False] * self.degree
        out = []
        for a in range(self.degree):
            if not seen[a]:
                orb = self.orbit(a)
                for x in orb:
                    seen[x] = True
                out.append(tuple(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def set_orbit(self, points: Iterable[int], limit: int | None = None) -> dict:
        """Orbit of a set under the group: ``{image (sorted tuple): element mapping to it}``."""
        start = tuple(sorted(points))
        ident = tuple(range(self.degree))
        found = {start: ident}
        queue = [start]
        imgs = [g.images for g in self.generators]
        for s in queue:
            w = found[s]
            for g in imgs:
                t = tuple(sorted(g[x] for x in s))
                if t not in found:
                    found[t] = _compose(w, g)
                    queue.append(t)
                    if limit is not None and len(found) > limit:
                        raise BudgetExceeded(f"set orbit larger than {limit}")
        return found

    def k_subset_orbits(self, k: int, max_subsets: int = DEFAULT_MAX_SUBSETS):
        """Orbits on k-subsets (cached per k)."""
        orbs = self._orbit_cache.get(k)
        if orbs is None:
            orbs = subset_orbits([g.images for g in self.generators], self.degree, k,
                                 max_subsets)
            self._orbit_cache[k] = orbs
        return orbs

    # -- subgroups -------------------------------------------------------
    def stabilizer(self, a: int) -> "PermutationGroup":
        """Point stabilizer of ``a``, still acting on all ``degree`` points."""
        if not 0 <= a < self.degree:
            raise ValueError(f"point {a} out of range")
        ch = StabilizerChain(self.chain.strong_generators(), self.degree, (a,))
        gens = ch.levels[1].gens if len(ch.levels) > 1 else []
        name = f"Stab({self.name}, {a})" if self.name else None
        H = PermutationGroup([Permutation._raw(g) for g in gens], self.degree, name)
        sub = StabilizerChain(gens, self.degree) if gens else None
        if sub is not None:
            H._chain = sub
        return H

    def setwise_stabilizer(self, points: Iterable[int],
                           scan_limit: int | None = None) -> "PermutationGroup":
        """Subgroup mapping the set ``points`` onto itself."""
        S = sorted(set(points))
        if not S:
            raise ValueError("setwise stabilizer of the empty set")
        if scan_limit is None:
            scan_limit = SETWISE_SCAN_LIMIT
        Sset = set(S)
        if self.order() <= scan_limit:
            found = [g for g in self.chain.elements()
                     if all(g[x] in Sset for x in S)]
            return _group_from_candidates(found, self.degree, len(found))
        return _setwise_backtrack(self, S)

    def action_on(self, points: Sequence[int]) -> "PermutationGroup":
        """The induced action on an invariant set, relabelled ``0..len(points)-1`` in sorted order."""
        pts = sorted(points)
        index = {x: i for i, x in enumerate(pts)}
        gens = []
        for g in self.generators:
            try:
                gens.append(Permutation(index[g.images[x]] for x in pts))
            except KeyError:
                raise ValueError("point set is not invariant under the group") from None
        return PermutationGroup(gens, len(pts))

    # -- orbital graphs and primitivity -----------------------------------
    def orbital_graphs(self) -> list["OrbitalGraph"]:
        n = self.degree
        if n < 2:
            return []
        orbs = self.k_subset_orbits(2)
        transitive = self.is_transitive()
        return [OrbitalGraph(o, n, (2 * o.size) // n if transitive else None)
                for o in orbs]

    def is_primitive(self) -> bool:
        # degree <= 2 counts as primitive, trivial group on two points included
        if self.degree <= 2:
            return True
        if not self.is_transitive():
            return False
        return all(g.is_connected() for g in self.orbital_graphs())

    def transitivity_degree(self) -> int:
        """Largest t such that the group is t-transitive (0 if intransitive)."""
        H = self
        for t in range(self.degree):
            rest = range(t, self.degree)
            if set(H.orbit(t)) != set(rest):
                return t
            H = H.stabilizer(t)
        return self.degree


@dataclass(eq=False)
class OrbitalGraph:
    """A graph whose edge set is one orbit of the group on 2-subsets."""

    orbit: KSubsetOrbit
    degree: int
    valency: int | None

    @property
    def edges(self) -> np.ndarray:
        return self.orbit.members

    def is_connected(self) -> bool:
        return connectivity_at_least(self.edges, range(self.degree), 1)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.degree, self.degree), dtype=bool)
        e = self.edges
        a[e[:, 0], e[:, 1]] = True
        a[e[:, 1], e[:, 0]] = True
        return a


def _induced_connected(edges: np.ndarray, V: list[int]) -> bool:
    if len(V) <= 1:
        return True
    idx = {v: i for i, v in enumerate(V)}
    e = [(idx[a], idx[b]) for a, b in np.asarray(edges).tolist() if a in idx and b in idx]
    if not e:
        return False
    r, c = zip(*e)
    g = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(len(V), len(V)))
    nc, _ = connected_components(g, directed=False)
    return nc == 1


def connectivity_at_least(edges, V: Iterable[int], target: int) -> bool:
    """True iff the subgraph induced on ``V`` stays connected after deleting any
    ``target - 1`` of its vertices (``target = 1``: plain connectivity)."""
    V = sorted(set(V))
    if not V:
        raise ValueError("empty vertex set")
    edges = np.asarray(edges).reshape(-1, 2)
    if target <= 1:
        return _induced_connected(edges, V)
    if len(V) <= target:
        # complete graph on target vertices has connectivity target - 1
        return False
    for dead in combinations(V, target - 1):
        d = set(dead)
        if not _induced_connected(edges, [v for v in V if v not in d]):
            return False
    return True


def _group_from_candidates(candidates: Iterable[tuple], degree: int, target_order: int,
                           start: Sequence[tuple] = ()) -> PermutationGroup:
    """Pick generators greedily from ``candidates`` until the order is reached."""
    ident = tuple(range(degree))
    gens = [g for g in start if g != ident]
    chain = StabilizerChain(gens, degree)
    for h in candidates:
        if chain.order() >= target_order:
            break
        if chain.contains(h):
            continue
        gens.append(h)
        chain = StabilizerChain(gens, degree)
    if chain.order() != target_order:
        raise RuntimeError(f"candidate elements generate order {chain.order()}, "
                           f"expected {target_order}")
    G = PermutationGroup([Permutation._raw(g) for g in gens], degree)
    G._chain = chain
    return G


def _setwise_backtrack(G: PermutationGroup, S: list[int]) -> PermutationGroup:
    n = G.degree
    if 2 * len(S) > n:
        S = sorted(set(range(n)) - set(S))
    if not S:
        return G
    ch = StabilizerChain(G.chain.strong_generators(), n, S)
    Sset = set(S)
    m = len(S)
    levels = ch.levels
    found: list[tuple] = []

    def rec(i: int, suffix: tuple) -> None:
        if i == m:
            found.append(suffix)
            return
        lev = levels[i]
        for p, u in lev.trans.items():
            if suffix[p] in Sset:
                rec(i + 1, _compose(u, suffix))

    rec(0, ch.ident)
    pointwise = levels[m].gens if len(levels) > m else []
    pointwise_order = prod(len(lv.trans) for lv in levels[m:])
    return _group_from_candidates(found, n, len(found) * pointwise_order, pointwise)
