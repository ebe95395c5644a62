"""Partial transformations and regularity of the semigroups <G, t>.

Maps act on the right, as permutations do: ``pcompose(s, t)`` applies ``s``
first. A rank-preserving product ``u g u`` is exactly a group element sending
im(u) onto a transversal of ker(u), which makes u regular in <G, u>.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .groups import PermutationGroup
from .partitions import PartialPartition, canonical_rgs, rgs_array
from .perm import Permutation
from .subsets import BudgetExceeded
from .ut import has_kl_ut

DEFAULT_SCAN_CAP = 100_000
DEFAULT_CLOSURE_CAP = 200_000


class PartialTransformation:
    """A map from a subset of ``range(n)`` into ``range(n)``; -1 marks undefined points."""

    __slots__ = ("map",)

    def __init__(self, images: Sequence[int]):
        m = tuple(int(x) for x in images)
        n = len(m)
        for x in m:
            if not -1 <= x < n:
                raise ValueError(f"image {x} out of range for degree {n}")
        self.map = m

    @classmethod
    def from_dict(cls, mapping: dict[int, int], n: int) -> "PartialTransformation":
        m = [-1] * n
        for x, y in mapping.items():
            if not 0 <= x < n:
                raise ValueError(f"domain point {x} out of range for degree {n}")
            m[x] = y
        return cls(m)

    @classmethod
    def from_permutation(cls, g: Permutation) -> "PartialTransformation":
        return cls(g.images)

    @classmethod
    def parse(cls, text: str, n: int) -> "PartialTransformation":
        """Read ``dom: 0 1 3 ; img: 2 2 4`` (images in domain order)."""
        m = re.fullmatch(r"\s*dom:\s*([\d\s]*);\s*img:\s*([\d\s]*)", text)
        if not m:
            raise ValueError(f"cannot parse partial transformation {text!r}")
        dom = [int(x) for x in m.group(1).split()]
        img = [int(x) for x in m.group(2).split()]
        if len(dom) != len(img):
            raise ValueError("domain and image lists differ in length")
        if len(set(dom)) != len(dom):
            raise ValueError("repeated domain point")
        return cls.from_dict(dict(zip(dom, img)), n)

    @property
    def degree(self) -> int:
        return len(self.map)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.map) if y >= 0)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted({y for y in self.map if y >= 0}))

    @property
    def rank(self) -> int:
        return len({y for y in self.map if y >= 0})

    @property
    def kernel(self) -> PartialPartition:
        blocks: dict[int, list[int]] = {}
        for x, y in enumerate(self.map):
            if y >= 0:
                blocks.setdefault(y, []).append(x)
        return PartialPartition.from_blocks(blocks.values())

    def is_permutation(self) -> bool:
        return -1 not in self.map and len(set(self.map)) == len(self.map)

    def __mul__(self, other) -> "PartialTransformation":
        return pcompose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialTransformation) and self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def __str__(self) -> str:
        dom = self.domain
        return (f"dom: {' '.join(map(str, dom))} ; "
                f"img: {' '.join(str(self.map[x]) for x in dom)}")

    def __repr__(self) -> str:
        return f"PartialTransformation({str(self)!r}, n={self.degree})"


def _as_map(s) -> tuple[int, ...]:
    if isinstance(s, PartialTransformation):
        return s.map
    if isinstance(s, Permutation):
        return s.images
    return tuple(s)


def _pc(s: tuple, t: tuple) -> tuple:
    return tuple(-1 if y < 0 else t[y] for y in s)


def pcompose(s, t) -> PartialTransformation:
    """x -> (x s) t wherever both steps are defined."""
    a, b = _as_map(s), _as_map(t)
    if len(a) != len(b):
        raise ValueError(f"degree mismatch: {len(a)} vs {len(b)}")
    return PartialTransformation(_pc(a, b))


def _rank(m: tuple) -> int:
    return len({y for y in m if y >= 0})


# -- rank-criterion regularity tests ---------------------------------------

def is_regular_scan(G: PermutationGroup, u: PartialTransformation,
                    cap: int = DEFAULT_SCAN_CAP) -> Permutation | None:
    """First group element g (in chain order) with rank(u g u) = rank(u)."""
    if G.order() > cap:
        raise BudgetExceeded(f"group order {G.order()} exceeds scan cap {cap}")
    um, r = u.map, u.rank
    for g in G.elements():
        if _rank(_pc(_pc(um, g.images), um)) == r:
            return g
    return None


def is_regular_orbit(G: PermutationGroup, u: PartialTransformation,
                     limit: int | None = None,
                     cache: dict | None = None) -> tuple[bool, Permutation | None]:
    """Search the G-orbit of im(u) for a transversal of ker(u).

    Returns ``(True, g)`` with g mapping im(u) onto such a transversal, or
    ``(False, None)``. ``cache`` may hold set orbits across calls.
    """
    label = u.map  # points in the same kernel block share a value
    k = u.rank
    A = u.image
    if cache is None:
        orbit = G.set_orbit(A, limit)
    else:
        orbit = cache.get(A)
        if orbit is None:
            orbit = cache[A] = G.set_orbit(A, limit)
    for img, g in orbit.items():
        vals = {label[x] for x in img}
        if -1 not in vals and len(vals) == k:
            return True, Permutation._raw(g)
    return False, None


def idempotent_power(x: PartialTransformation, bound: int | None = None) -> int:
    """Least w >= 1 with x^w idempotent."""
    n = x.degree
    bound = bound or (n + 1) ** n
    p = x.map
    for w in range(1, bound + 1):
        if _pc(p, p) == p:
            return w
        p = _pc(p, x.map)
    raise RuntimeError("no idempotent power found within bound")


def rank_inverse(u: PartialTransformation, g: Permutation) -> PartialTransformation:
    """b = g (u g)^(w-1) with (u g)^w idempotent; u b u = u when rank(u g u) = rank(u)."""
    x = pcompose(u, g)
    w = idempotent_power(x)
    b = PartialTransformation(g.images)
    for _ in range(w - 1):
        b = pcompose(b, x)
    return b


# -- closure and semigroup regularity ------------------------------------------

@dataclass
class ClosureResult:
    """Elements of <G,t> outside G. ``invertible`` means t was itself a permutation."""

    elements: list[PartialTransformation]
    complete: bool
    cap: int
    invertible: bool = False

    def __len__(self) -> int:
        return len(self.elements)


def closure(G: PermutationGroup, t: PartialTransformation,
            cap: int = DEFAULT_CLOSURE_CAP) -> ClosureResult:
    """Breadth-first closure of {t} under multiplication by G's generators and t."""
    if cap < 1:
        raise ValueError("cap must be positive")
    if t.is_permutation():
        return ClosureResult([], True, cap, invertible=True)
    gens = [g.images for g in G.generators] + [t.map]
    seen = {t.map}
    queue = [t.map]
    for s in queue:
        for g in gens:
            for v in (_pc(s, g), _pc(g, s)):
                if v not in seen:
                    if len(seen) >= cap:
                        return ClosureResult([PartialTransformation(m) for m in queue],
                                             False, cap)
                    seen.add(v)
                    queue.append(v)
    return ClosureResult([PartialTransformation(m) for m in queue], True, cap)


@dataclass
class RegularityVerdict:
    """``regular`` is None when the closure hit its cap."""

    regular: bool | None
    size: int
    irregular: PartialTransformation | None = None
    rank_test_failures: int = 0  # elements needing the direct search for b

    def __bool__(self) -> bool:
        if self.regular is None:
            raise ValueError("undecided regularity verdict has no truth value")
        return self.regular


def semigroup_regular(G: PermutationGroup, t: PartialTransformation,
                      cap: int = DEFAULT_CLOSURE_CAP,
                      orbit_cache: dict | None = None) -> RegularityVerdict:
    """Decide whether <G,t> is a regular semigroup.

    Each element u of the closure is first tested with the rank criterion,
    which shows u is regular in <G,u>. If that fails, u may still be regular
    in the larger semigroup, so every b in <G,t> is tried against u = u b u.
    """
    cl = closure(G, t, cap)
    if not cl.complete:
        return RegularityVerdict(None, len(cl))
    fallback = None
    failures = 0
    cache = {} if orbit_cache is None else orbit_cache
    for u in cl.elements:
        ok, _ = is_regular_orbit(G, u, cache=cache)
        if ok:
            continue
        failures += 1
        if fallback is None:
            fallback = [v.map for v in cl.elements] + [g.images for g in G.elements()]
        um = u.map
        if not any(_pc(_pc(um, b), um) == um for b in fallback):
            return RegularityVerdict(False, len(cl), u, failures)
    return RegularityVerdict(True, len(cl), None, failures)


# -- equivalence harness -------------------------------------------------------

def _k_in_range(n: int, k: int) -> bool:
    return k <= max((n + 1) // 2, n - 6)


def pt_class_representatives(G: PermutationGroup, k: int, l: int) -> list[PartialTransformation]:
    """Members of PT_{k,l} covering every semigroup <G,t> up to equality.

    <G,t> = <G, g t h> for g, h in G, so the domain is taken up to G, the
    kernel up to the domain's setwise stabilizer, and the image up to G
    (with every assignment of blocks to the image's points).
    """
    n = G.degree
    out = []
    image_reps = G.k_subset_orbits(k).representatives()
    for r in G.k_subset_orbits(n - l).representatives():
        B = [x for x in range(n) if x not in r]
        rows = rgs_array(l, k)
        H = G.setwise_stabilizer(B)
        pos = {x: i for i, x in enumerate(B)}
        keep = set(range(len(rows)))
        codes = {tuple(row): i for i, row in enumerate(rows.tolist())}
        for h in H.elements():
            perm = [pos[h.images[x]] for x in B]
            moved = rows.copy()
            moved[:, perm] = rows
            for i, row in enumerate(canonical_rgs(moved, k).tolist()):
                j = codes[tuple(row)]
                if j > i:
                    keep.discard(j)
        for i in sorted(keep):
            labels = rows[i].tolist()
            for A in image_reps:
                for assign in permutations(A):
                    out.append(PartialTransformation.from_dict(
                        {x: assign[lab] for x, lab in zip(B, labels)}, n))
    return out


@dataclass
class HarnessReport:
    k: int
    l: int
    ut: bool
    all_regular: bool
    checked: int
    agree: bool
    irregular_example: PartialTransformation | None = None
    rank_test_failures: int = 0
    notes: list[str] = field(default_factory=list)


def equivalence_harness(G: PermutationGroup, k: int, l: int,
                        cap: int = DEFAULT_CLOSURE_CAP) -> HarnessReport:
    """Compare (k,l)-ut with regularity of <G,t> for every t in PT_{k,l}.

    Exhaustive up to the symmetry described in :func:`pt_class_representatives`;
    only meaningful when k <= max(floor((n+1)/2), n-6).
    """
    n = G.degree
    if not _k_in_range(n, k):
        raise ValueError(f"k={k} outside the range where the equivalence is claimed (n={n})")
    if n > 8:
        raise ValueError("exhaustive harness supports degree <= 8")
    ut = has_kl_ut(G, k, l).holds
    reps = pt_class_representatives(G, k, l)
    example = None
    failures = 0
    all_regular = True
    cache: dict = {}
    for t in reps:
        v = semigroup_regular(G, t, cap, cache)
        if v.regular is None:
            raise BudgetExceeded(f"closure of {t} exceeded cap {cap}")
        failures += v.rank_test_failures
        if not v.regular:
            all_regular = False
            example = t
            break
    return HarnessReport(k, l, bool(ut), all_regular, len(reps), bool(ut) == all_regular,
                         example, failures)


def random_partial_transformation(n: int, rng, domain_size: int | None = None,
                                  rank: int | None = None) -> PartialTransformation:
    """Random map with the given domain size and (at most) rank; ``rng`` is a random.Random."""
    d = rng.randint(0, n) if domain_size is None else domain_size
    dom = rng.sample(range(n), d)
    if rank is None:
        return PartialTransformation.from_dict({x: rng.randrange(n) for x in dom}, n)
    if d < rank:
        raise ValueError("rank exceeds domain size")
    targets = rng.sample(range(n), rank)
    labels = list(range(rank)) + [rng.randrange(rank) for _ in range(d - rank)]
    rng.shuffle(labels)
    return PartialTransformation.from_dict({x: targets[c] for x, c in zip(dom, labels)}, n)


def parse_pt_lines(lines: Iterable[str], n: int) -> list[PartialTransformation]:
    out = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(PartialTransformation.parse(line, n))
    return out
