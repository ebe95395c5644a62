"""Lower and upper bounds on t(G,k) that avoid a full search.

* invariant hypergraphs: if every (k-1)-subset lies in d edges of a
  G-invariant k-uniform hypergraph, then (k,l)-ut forces l >= n - d + 1;
* regular two-graphs: groups with two orbits on triples, both two-graphs with
  pair counts lambda <= lambda', satisfy lambda' + 3 <= t(G,3), and (3,l)-ut
  holds once l exceeds lambda' + 2 and min(3*lambda/2, (6*lambda' + 9)/5);
* point-stabilizer induction: t(G,k) >= t(G_a, k-1) + 1 when every k-subset's
  setwise stabilizer is transitive on it.

All arithmetic is on integers or Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .groups import PermutationGroup
from .subsets import KSubsetOrbit, all_subsets, binom_table, rank_subsets
from .ut import DEFAULT_MAX_WORK, is_k_homogeneous, threshold

MAX_UNION_ORBITS = 20
QUADRUPLE_LIMIT = 20_000_000


class BoundError(ValueError):
    """A bound's hypotheses do not hold for the given group."""


@dataclass(frozen=True)
class HypergraphSpec:
    """The union of some orbits of G on k-subsets."""

    k: int
    orbit_ids: tuple[int, ...]

    def __post_init__(self):
        if not self.orbit_ids:
            raise ValueError("a hypergraph needs at least one orbit")


@dataclass
class RegularityReport:
    is_regular: bool
    valency: int | None = None


@dataclass
class TwoGraphParams:
    lam: int
    lam_prime: int
    orbit_sizes: tuple[int, int]


@dataclass
class BoundReport:
    """Interval for t(G,k); ``sources`` records where each end came from."""

    k: int
    lower: int
    upper: int | None = None
    sources: dict = field(default_factory=dict)
    conditional: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"k": self.k, "lower": self.lower, "upper": self.upper,
                "sources": dict(self.sources), "conditional": self.conditional,
                "notes": list(self.notes)}


# -- invariant hypergraphs -----------------------------------------------------

def _face_ranks(rows: np.ndarray, n: int) -> np.ndarray:
    """Colex ranks of the (k-1)-faces of each row, shape (len(rows), k)."""
    k = rows.shape[1]
    table = binom_table(n, max(k - 1, 1))
    out = np.empty((len(rows), k), dtype=np.int64)
    for drop in range(k):
        face = np.delete(rows, drop, axis=1)
        out[:, drop] = rank_subsets(face, table) if k > 1 else 0
    return out


def _edge_counts(rows: np.ndarray, n: int) -> np.ndarray:
    """Number of edges through each (k-1)-subset, indexed by colex rank."""
    k = rows.shape[1]
    return np.bincount(_face_ranks(rows, n).ravel(), minlength=comb(n, k - 1))


def hypergraph_regularity(G: PermutationGroup, spec: HypergraphSpec) -> RegularityReport:
    """Whether every (k-1)-subset lies in the same number of edges."""
    orbits = G.k_subset_orbits(spec.k)
    rows = np.concatenate([orbits[i].members for i in spec.orbit_ids])
    counts = _edge_counts(rows, G.degree)
    if counts.min() == counts.max():
        return RegularityReport(True, int(counts[0]))
    return RegularityReport(False)


def _orbit_profiles(G: PermutationGroup, k: int) -> np.ndarray:
    """profile[o, j]: edges of orbit o through the representative of (k-1)-orbit j.

    Counts are constant along (k-1)-orbits, so a union of k-orbits is regular
    exactly when its summed profile is constant.
    """
    n = G.degree
    orbits = G.k_subset_orbits(k)
    lower = G.k_subset_orbits(k - 1)
    table = binom_table(n, max(k - 1, 1))
    rep_ranks = rank_subsets(np.array(lower.representatives(), dtype=np.int64).reshape(
        len(lower), k - 1), table) if k > 1 else np.zeros(1, dtype=np.int64)
    prof = np.empty((len(orbits), len(lower)), dtype=np.int64)
    for o in orbits:
        prof[o.id] = _edge_counts(o.members, n)[rep_ranks]
    return prof


@dataclass
class ValencyResult:
    valency: int
    orbit_ids: tuple[int, ...]
    exhaustive: bool  # False when only single orbits were examined


def min_regular_valency(G: PermutationGroup, k: int,
                        max_orbits: int = MAX_UNION_ORBITS) -> ValencyResult:
    """Smallest valency of a regular G-invariant k-uniform hypergraph.

    Every union of orbits is tried when there are at most ``max_orbits``
    orbits; otherwise only single orbits are, and the result is only an upper
    bound on the true minimum (so the derived lower bound on t is weaker).
    """
    if not 2 <= k <= G.degree:
        raise ValueError(f"need 2 <= k <= n, got k={k}")
    prof = _orbit_profiles(G, k)
    m = len(prof)
    best = None
    # singles first
    for o in range(m):
        row = prof[o]
        if row.min() == row.max():
            v = int(row[0])
            if best is None or v < best[0]:
                best = (v, (o,))
    if m > max_orbits:
        if best is None:
            raise BoundError("no single orbit is regular and union enumeration is capped")
        return ValencyResult(best[0], best[1], False)
    # all non-empty unions, in chunks of masks
    bits = np.arange(m, dtype=np.int64)
    total = 1 << m
    chunk = 1 << 16
    for start in range(1, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        sel = ((masks[:, None] >> bits) & 1).astype(np.int64)
        sums = sel @ prof
        regular = sums.min(axis=1) == sums.max(axis=1)
        if regular.any():
            vals = sums[regular, 0]
            i = int(np.argmin(vals))
            if best is None or vals[i] < best[0]:
                mask = int(masks[regular][i])
                best = (int(vals[i]), tuple(o for o in range(m) if mask >> o & 1))
    return ValencyResult(best[0], best[1], True)


def _k_in_range(n: int, k: int) -> bool:
    return k <= max((n + 1) // 2, n - 6)


def lower_bound_hypergraph(G: PermutationGroup, k: int,
                           max_orbits: int = MAX_UNION_ORBITS) -> int:
    """n - d_k + 1, a lower bound on t(G,k) for groups with k-ut.

    Requires k <= max(floor((n+1)/2), n-6).
    """
    n = G.degree
    if not _k_in_range(n, k):
        raise BoundError(f"k={k} is outside the range covered by the bound for n={n}")
    if k == 1:
        return n - min(len(o) for o in G.orbits()) + 1
    return n - min_regular_valency(G, k, max_orbits).valency + 1


def lower_bound_inhomogeneous(n: int, k: int) -> int:
    """ceil((n+k+1)/2): the bound for groups with k-ut that are not k-homogeneous."""
    return -(-(n + k + 1) // 2)


# -- two-graphs ----------------------------------------------------------------

def _triple_mask(rows: np.ndarray, n: int) -> np.ndarray:
    mask = np.zeros(comb(n, 3), dtype=bool)
    mask[rank_subsets(np.sort(rows, axis=1), binom_table(n, 3))] = True
    return mask


def _parity_quadruples(mask: np.ndarray, n: int) -> bool:
    table = binom_table(n, 3)
    quads = all_subsets(n, 4)
    for start in range(0, len(quads), 1 << 20):
        q = quads[start:start + (1 << 20)]
        hits = np.zeros(len(q), dtype=np.int8)
        for drop in range(4):
            hits += mask[rank_subsets(np.delete(q, drop, axis=1), table)]
        if (hits & 1).any():
            return False
    return True


def _parity_switching(mask: np.ndarray, n: int) -> bool:
    # T is a two-graph iff it is the set of triples carrying an odd number of
    # edges of the graph {yz : 0yz in T}; equivalently every quadruple through
    # point 0 is even, and those quadruples determine all others.
    table = binom_table(n, 3)
    adj = np.zeros((n, n), dtype=np.int8)
    pairs = all_subsets(n - 1, 2).astype(np.int64) + 1
    trip = np.column_stack([np.zeros(len(pairs), dtype=np.int64), pairs])
    e = mask[rank_subsets(trip, table)].astype(np.int8)
    adj[pairs[:, 0], pairs[:, 1]] = e
    adj[pairs[:, 1], pairs[:, 0]] = e
    rest = all_subsets(n - 1, 3).astype(np.int64) + 1
    for start in range(0, len(rest), 1 << 20):
        t = rest[start:start + (1 << 20)]
        a, b, c = t[:, 0], t[:, 1], t[:, 2]
        parity = (adj[a, b] + adj[b, c] + adj[a, c]) & 1
        if (parity != mask[rank_subsets(t, table)]).any():
            return False
    return True


def two_graph_test(triples, n: int, method: str = "auto") -> tuple[bool, int | None]:
    """Check the two-graph axioms for a set of triples on ``range(n)``.

    Returns ``(is_two_graph, lam)``. ``method`` is ``"quadruples"`` (every
    4-subset), ``"switching"`` (every triple against the graph at point 0,
    an equivalent exhaustive test that scales as C(n,3)) or ``"auto"``.
    """
    rows = triples.members if isinstance(triples, KSubsetOrbit) else np.asarray(
        triples, dtype=np.int64).reshape(-1, 3)
    if n < 3:
        return True, 0
    mask = _triple_mask(rows, n) if len(rows) else np.zeros(comb(n, 3), dtype=bool)
    pair_counts = _edge_counts(rows, n) if len(rows) else np.zeros(comb(n, 2), dtype=np.int64)
    if pair_counts.min() != pair_counts.max():
        return False, None
    lam = int(pair_counts[0])
    if method == "auto":
        method = "quadruples" if comb(n, 4) <= QUADRUPLE_LIMIT else "switching"
    if method == "quadruples":
        ok = _parity_quadruples(mask, n) if n >= 4 else True
    elif method == "switching":
        ok = _parity_switching(mask, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ok, (lam if ok else None)


def two_graph_params(G: PermutationGroup, method: str = "auto") -> TwoGraphParams:
    """(lambda, lambda') for a group whose two orbits on triples are two-graphs."""
    orbits = G.k_subset_orbits(3)
    if len(orbits) != 2:
        raise BoundError(f"expected two orbits on 3-subsets, found {len(orbits)}")
    lams = []
    for o in orbits:
        ok, lam = two_graph_test(o, G.degree, method)
        if not ok:
            raise BoundError(f"orbit {o.id} on 3-subsets is not a regular two-graph")
        lams.append((lam, o.size))
    lams.sort()
    return TwoGraphParams(lams[0][0], lams[1][0], (lams[0][1], lams[1][1]))


def two_graph_interval(lam: int, lam_prime: int) -> tuple[int, int]:
    """[lambda'+3, smallest l with l > lambda'+2 and l > min(3 lam/2, (6 lam'+9)/5)]."""
    lower = lam_prime + 3
    cut = min(Fraction(3 * lam, 2), Fraction(6 * lam_prime + 9, 5))
    return lower, max(lower, int(cut) + 1)


def three_ut_bounds(G: PermutationGroup, certified: bool = False,
                    params: TwoGraphParams | None = None) -> BoundReport:
    """Two-graph interval for t(G,3).

    The lower end only uses the larger orbit; the upper end is proved for the
    families PSL(2,q) (q = 1 mod 4), Sp(2d,2), 2^(2d):Sp(2d,2) and Co3, so it
    is flagged ``conditional`` unless ``certified`` says G is one of them.
    """
    p = params or two_graph_params(G)
    lo, hi = two_graph_interval(p.lam, p.lam_prime)
    rep = BoundReport(3, lo, hi, {"lower": "two-graph", "upper": "two-graph"},
                      conditional=not certified)
    rep.notes.append(f"lambda={p.lam}, lambda'={p.lam_prime}")
    return rep


# -- stabilizer induction ------------------------------------------------------

def setwise_transitive_on_orbits(G: PermutationGroup, k: int) -> bool:
    """Whether each orbit representative's setwise stabilizer is transitive on it."""
    for rep in G.k_subset_orbits(k).representatives():
        H = G.setwise_stabilizer(rep)
        if set(H.orbit(rep[0])) != set(rep):
            return False
    return True


def point_stabilizer_action(G: PermutationGroup, a: int = 0) -> PermutationGroup:
    rest = [x for x in range(G.degree) if x != a]
    return G.stabilizer(a).action_on(rest)


def induction_bound(G: PermutationGroup, k: int, a: int = 0,
                    max_work: int = DEFAULT_MAX_WORK) -> int | None:
    """t(G_a, k-1) + 1, or None when the hypothesis fails or G_a's threshold is unknown."""
    if k < 2 or G.degree < 2 or not setwise_transitive_on_orbits(G, k):
        return None
    r = threshold(point_stabilizer_action(G, a), k - 1, max_work=max_work)
    if r.value is None:
        return None
    return r.value + 1


# -- combined report -----------------------------------------------------------

def bound_report(G: PermutationGroup, k: int, *, certified: bool = False,
                 exact: bool = True, max_work: int = DEFAULT_MAX_WORK,
                 induction: bool = True) -> BoundReport:
    """Best interval for t(G,k) from every applicable bound.

    Assumes G has the k-ut property (the bounds are meaningless otherwise);
    with ``exact`` the search is attempted within ``max_work`` and, if it
    finishes, pins both ends.
    """
    n = G.degree
    rep = BoundReport(k, k, None, {"lower": "trivial"})

    def raise_lower(value: int | None, source: str):
        if value is not None and value > rep.lower:
            rep.lower = value
            rep.sources["lower"] = source

    homogeneous = is_k_homogeneous(G, k)
    if homogeneous:
        rep.upper = k
        rep.sources["upper"] = "homogeneous"
        return rep
    if _k_in_range(n, k):
        if 2 <= k:
            try:
                vr = min_regular_valency(G, k)
                raise_lower(n - vr.valency + 1, "hypergraph")
                if not vr.exhaustive:
                    rep.notes.append("hypergraph bound from single orbits only")
            except BoundError as exc:
                rep.notes.append(str(exc))
        else:
            raise_lower(lower_bound_hypergraph(G, k), "hypergraph")
        raise_lower(lower_bound_inhomogeneous(n, k), "inhomogeneous")
    if k == 3:
        try:
            tg = three_ut_bounds(G, certified)
            raise_lower(tg.lower, "two-graph")
            rep.upper = tg.upper
            rep.sources["upper"] = "two-graph"
            rep.conditional = tg.conditional
            rep.notes += tg.notes
        except BoundError:
            pass
    if induction and k >= 2:
        raise_lower(induction_bound(G, k, max_work=max_work), "induction")
    if exact:
        r = threshold(G, k, max_work=max_work)
        if r.status == "exact":
            rep.lower = rep.upper = r.value
            rep.sources = {"lower": "exact-search", "upper": "exact-search"}
            rep.conditional = False
        elif r.status == "none":
            rep.notes.append(f"G lacks the {k}-ut property")
        elif r.status == "undecided" and r.interval:
            raise_lower(r.interval[0], "exact-search")
    if rep.upper is None:
        rep.sources["upper"] = "none"
    return rep
