"""Deciding the (k,l)-universal transversal property and computing thresholds.

A group G of degree n has (k,l)-ut when, for every k-subset A, every l-subset
B and every partition P of B into k blocks, some image of A under G meets each
block of P exactly once. The exact decision enumerates, for each orbit of G on
k-subsets and each B up to the action of G, all k-partitions of B as
restricted growth strings and tests them in bulk against the orbit members
that lie inside B.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Iterable

import numpy as np

from .groups import PermutationGroup
from .partitions import PartialPartition, canonical_rgs, rgs_array, stirling2
from .subsets import DEFAULT_MAX_SUBSETS, BudgetExceeded, KSubsetOrbit, all_subsets

DEFAULT_MAX_WORK = 10**9
CHUNK_ROWS = 1 << 17
# Setwise-stabilizer reduction of partitions is used when the stabilizer of B
# has order in this range.
PRUNE_MIN_ORDER = 4
PRUNE_MAX_ORDER = 2000


class NotPrimitiveError(ValueError):
    """The group is not primitive, so it fails the 2-ut property."""


@dataclass
class Witness:
    """A k-subset orbit and a partition with no transversal in that orbit."""

    orbit: int
    orbit_rep: tuple[int, ...]
    partition: PartialPartition

    def to_json(self) -> dict:
        return {"orbit": self.orbit, "orbit_rep": list(self.orbit_rep),
                "blocks": self.partition.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Witness":
        return cls(int(data["orbit"]), tuple(data["orbit_rep"]),
                   PartialPartition.from_blocks(data["blocks"]))


@dataclass
class UtResult:
    """Outcome of a (k,l)-ut decision. ``holds`` is None when the budget ran out."""

    k: int
    l: int
    holds: bool | None
    witness: Witness | None = None
    stats: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        if self.holds is None:
            raise ValueError("undecided (k,l)-ut result has no truth value")
        return self.holds


@dataclass
class ThresholdResult:
    """t(G,k), or None when G lacks k-ut (status 'none') or the search stopped early."""

    k: int
    value: int | None
    method: str
    status: str = "exact"  # exact | none | undecided
    interval: tuple[int, int] | None = None
    probes: dict[int, bool] = field(default_factory=dict)
    witnesses: dict[int, Witness] = field(default_factory=dict)


class _WorkCounter:
    def __init__(self, limit: int):
        self.limit = limit
        self.done = 0

    def add(self, amount: int) -> None:
        self.done += amount
        if self.done > self.limit:
            raise BudgetExceeded(f"work budget {self.limit} exceeded",
                                 {"work": self.done})


# -- k-subset orbits -----------------------------------------------------------

def k_subset_orbits(G: PermutationGroup, k: int,
                    max_subsets: int = DEFAULT_MAX_SUBSETS):
    """Orbits of G on k-subsets, ordered by lex-minimal member."""
    if not 1 <= k <= G.degree:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={G.degree}")
    return G.k_subset_orbits(k, max_subsets)


def is_k_homogeneous(G: PermutationGroup, k: int,
                     max_subsets: int = DEFAULT_MAX_SUBSETS) -> bool:
    return len(k_subset_orbits(G, k, max_subsets)) == 1


# -- single transversal tests --------------------------------------------------

def _members_within(orbit: KSubsetOrbit, support: Iterable[int]) -> np.ndarray:
    inside = np.zeros(int(orbit.members.max(initial=0)) + 1
                      if orbit.size else 1, dtype=bool)
    sup = [x for x in support if x < len(inside)]
    inside[sup] = True
    return orbit.members[inside[orbit.members].all(axis=1)]


def has_transversal(orbit: KSubsetOrbit, P: PartialPartition,
                    strategy: str = "auto") -> tuple[int, ...] | None:
    """A member of ``orbit`` meeting every block of ``P`` exactly once, or None.

    ``strategy`` is ``"scan"`` (orbit members inside the support),
    ``"enumerate"`` (all block-product transversals, membership by rank) or
    ``"auto"``, which picks the cheaper of the two.
    """
    if orbit.k != P.k:
        raise ValueError(f"orbit of {orbit.k}-subsets vs {P.k}-partition")
    if strategy == "auto":
        inside = _members_within(orbit, P.support)
        strategy = "scan" if len(inside) <= prod(len(b) for b in P.blocks) else "enumerate"
    if strategy == "scan":
        inside = _members_within(orbit, P.support)
        label = {x: i for i, b in enumerate(P.blocks) for x in b}
        for row in inside.tolist():
            if len({label[x] for x in row}) == P.k:
                return tuple(row)
        return None
    if strategy == "enumerate":
        for choice in product(*P.blocks):
            if tuple(sorted(choice)) in orbit:
                return tuple(sorted(choice))
        return None
    raise ValueError(f"unknown strategy {strategy!r}")


# -- bulk decision -------------------------------------------------------------

def _first_uncovered(bits: np.ndarray, members: np.ndarray, full: int,
                     work: _WorkCounter) -> int:
    """Index of the first row (partition) not covered by any member, or -1."""
    if len(members) == 0:
        return 0 if len(bits) else -1
    active = np.arange(len(bits))
    cur = bits
    step = 4
    i = 0
    while i < len(members):
        covered = np.zeros(len(active), dtype=bool)
        for row in members[i:i + step]:
            acc = cur[:, row[0]].copy()
            for c in row[1:]:
                acc |= cur[:, c]
            covered |= acc == full
        work.add(len(active) * len(members[i:i + step]))
        i += step
        step = min(step * 2, 64)
        keep = ~covered
        if not keep.any():
            return -1
        active = active[keep]
        cur = cur[keep]
    return int(active[0])


def _prune_rows(rows: np.ndarray, k: int, stab_local: list[np.ndarray]) -> np.ndarray:
    """Keep one partition per orbit of the setwise stabilizer (the lex-least code)."""
    m = rows.shape[1]
    weights = np.array([k ** (m - 1 - i) for i in range(m)], dtype=np.int64)
    codes = rows.astype(np.int64) @ weights
    best = codes.copy()
    for h in stab_local:
        # label of point h(x) in the image equals label of x
        moved = np.empty_like(rows)
        moved[:, h] = rows
        c = canonical_rgs(moved, k).astype(np.int64) @ weights
        np.minimum(best, c, out=best)
    return np.flatnonzero(best == codes)


def _check_support(G: PermutationGroup, orbits, B: np.ndarray, k: int,
                   work: _WorkCounter, prune: bool):
    """First (orbit id, partition row) failing on support B, or None."""
    l = len(B)
    local = all_subsets(l, k)
    ids = orbits.ids_of(B[local]) if len(local) else np.zeros(0, dtype=np.int32)
    rows = rgs_array(l, k)
    candidates = None
    if prune and len(rows) > 64:
        H = G.setwise_stabilizer(B.tolist())
        if PRUNE_MIN_ORDER <= H.order() <= PRUNE_MAX_ORDER and l * np.log2(max(k, 2)) < 62:
            pos = {int(x): i for i, x in enumerate(B)}
            stab_local = [np.array([pos[h.images[int(x)]] for x in B])
                          for h in H.elements() if not h.is_identity()]
            candidates = _prune_rows(rows, k, stab_local)
    full = (1 << k) - 1
    dt = np.int8 if k <= 7 else np.int16 if k <= 15 else np.int32 if k <= 31 else np.int64
    for oid in range(len(orbits)):
        members = local[ids == oid]
        sel = candidates if candidates is not None else None
        nrows = len(rows) if sel is None else len(sel)
        for start in range(0, nrows, CHUNK_ROWS):
            idx = (np.arange(start, min(start + CHUNK_ROWS, nrows)) if sel is None
                   else sel[start:start + CHUNK_ROWS])
            bits = (np.ones(1, dtype=dt) << rows[idx].astype(dt))
            j = _first_uncovered(bits, members, full, work)
            if j >= 0:
                return oid, rows[idx[j]]
    return None


def support_representatives(G: PermutationGroup, l: int, symmetry: bool = True,
                            max_subsets: int = DEFAULT_MAX_SUBSETS) -> list[tuple[int, ...]]:
    """l-subsets to examine: complements of lex-least orbit representatives of
    (n-l)-subsets, or every l-subset when ``symmetry`` is off."""
    n = G.degree
    if not symmetry:
        return [tuple(int(x) for x in r) for r in all_subsets(n, l)]
    reps = G.k_subset_orbits(n - l, max_subsets).representatives()
    out = [tuple(x for x in range(n) if x not in set(r)) for r in reps]
    return sorted(out)


def has_kl_ut(G: PermutationGroup, k: int, l: int, *, max_work: int = DEFAULT_MAX_WORK,
              max_subsets: int = DEFAULT_MAX_SUBSETS, symmetry: bool = True,
              prune: bool = False, jobs: int = 1) -> UtResult:
    """Decide whether G has the (k,l)-universal transversal property.

    Returns an :class:`UtResult`; on failure the witness names an orbit on
    k-subsets and a k-partition of an l-subset with no transversal in it.
    ``holds`` is None if ``max_work`` membership tests did not suffice.
    ``prune`` additionally reduces partitions of each support modulo its
    setwise stabilizer; the bulk test is usually cheaper than the reduction,
    so it is off by default.
    """
    n = G.degree
    if not 1 <= k <= l <= n:
        raise ValueError(f"need 1 <= k <= l <= n, got k={k}, l={l}, n={n}")
    if k == n:
        return UtResult(k, l, True, stats={"supports": 0})
    orbits = G.k_subset_orbits(k, max_subsets)
    supports = support_representatives(G, l, symmetry, max_subsets)
    stats = {"orbits": len(orbits), "supports": len(supports),
             "partitions_per_support": stirling2(l, k)}
    work = _WorkCounter(max_work)

    def run(B):
        return _check_support(G, orbits, np.array(B, dtype=np.int64), k, work,
                              prune and symmetry)

    try:
        if jobs > 1 and len(supports) > 1:
            with ThreadPoolExecutor(jobs) as ex:
                results = list(ex.map(run, supports))
        else:
            results = []
            for B in supports:
                r = run(B)
                results.append(r)
                if r is not None:
                    break
    except BudgetExceeded as exc:
        stats["work"] = work.done
        stats["progress"] = exc.progress
        return UtResult(k, l, None, stats=stats)
    stats["work"] = work.done
    for B, r in zip(supports, results):
        if r is not None:
            oid, row = r
            P = PartialPartition.from_labels(B, row.tolist())
            return UtResult(k, l, False, Witness(oid, orbits[oid].rep, P), stats)
    return UtResult(k, l, True, stats=stats)


def verify_witness(G: PermutationGroup, witness: Witness) -> bool:
    """Exhaustively confirm that no member of the witness orbit is a transversal."""
    P = witness.partition
    orbits = G.k_subset_orbits(P.k)
    orbit = orbits[witness.orbit]
    if orbit.rep != tuple(witness.orbit_rep):
        return False
    return all(not P.is_transversal(m) for m in orbit)


# -- thresholds ----------------------------------------------------------------

def t1(G: PermutationGroup) -> ThresholdResult:
    """t(G,1) = n - d + 1 with d the smallest orbit length."""
    d = min(len(o) for o in G.orbits())
    return ThresholdResult(1, G.degree - d + 1, "closed-form-k1")


def t2(G: PermutationGroup) -> ThresholdResult:
    """t(G,2) = n - d + 1 with d the smallest orbital-graph valency (G primitive)."""
    n = G.degree
    if not G.is_primitive():
        raise NotPrimitiveError(f"{G!r} is not primitive, so it lacks the 2-ut property")
    if n <= 2:
        return ThresholdResult(2, 2, "closed-form-k2")
    d = min(g.valency for g in G.orbital_graphs())
    return ThresholdResult(2, n - d + 1, "closed-form-k2")


def threshold(G: PermutationGroup, k: int, *, method: str = "auto",
              max_work: int = DEFAULT_MAX_WORK, max_subsets: int = DEFAULT_MAX_SUBSETS,
              jobs: int = 1) -> ThresholdResult:
    """The least l with (k,l)-ut, found by binary search over exact decisions.

    ``method="auto"`` uses the closed forms for k = 1 and k = 2; ``"search"``
    always searches.
    """
    n = G.degree
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if method == "auto" and k == 1:
        return t1(G)
    if method == "auto" and k == 2:
        try:
            return t2(G)
        except NotPrimitiveError:
            return ThresholdResult(2, None, "closed-form-k2", "none")
    res = ThresholdResult(k, None, "search")

    def probe(l: int) -> bool | None:
        if l not in res.probes:
            r = has_kl_ut(G, k, l, max_work=max_work, max_subsets=max_subsets, jobs=jobs)
            if r.holds is None:
                return None
            res.probes[l] = r.holds
            if r.witness is not None:
                res.witnesses[l] = r.witness
        return res.probes[l]

    try:
        top = probe(n)
        if top is None:
            res.status, res.interval = "undecided", (k, n)
            return res
        if not top:
            res.status = "none"
            return res
        if is_k_homogeneous(G, k, max_subsets):
            res.probes[k] = True
            res.value, res.method, res.interval = k, "homogeneous-fast-path", (k, k)
            return res
        res.probes[k] = False
        lo, hi = k, n  # (k,lo) fails, (k,hi) holds
        while hi - lo > 1:
            mid = (lo + hi) // 2
            r = probe(mid)
            if r is None:
                res.status, res.interval = "undecided", (lo + 1, hi)
                return res
            if r:
                hi = mid
            else:
                lo = mid
        if probe(hi) is not True or probe(hi - 1) is not False:
            raise RuntimeError("threshold boundary failed its double check")
    except BudgetExceeded:
        res.status, res.interval = "undecided", (k, n)
        return res
    res.value, res.interval = hi, (hi, hi)
    return res
