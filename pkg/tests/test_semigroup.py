import random

import pytest
from hypothesis import given, strategies as st

from transversal import constructors as C
from transversal.perm import Permutation
from transversal.semigroup import (PartialTransformation, closure, equivalence_harness,
                                   idempotent_power, is_regular_orbit, is_regular_scan,
                                   rank_inverse, parse_pt_lines, pcompose,
                                   pt_class_representatives, random_partial_transformation,
                                   semigroup_regular)
from transversal.subsets import BudgetExceeded
from transversal.ut import has_kl_ut

from oracles import multiplicative_closure


def pts(max_n=7):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.integers(-1, n - 1), min_size=n, max_size=n)
        .map(PartialTransformation))


def dict_compose(s, t):
    # oracle: explicit dictionaries
    ds = {x: y for x, y in enumerate(s.map) if y >= 0}
    dt = {x: y for x, y in enumerate(t.map) if y >= 0}
    return {x: dt[y] for x, y in ds.items() if y in dt}


def c5_witness():
    r = has_kl_ut(C.cyclic(5), 3, 4)
    P = r.witness.partition
    A = r.witness.orbit_rep
    return PartialTransformation.from_dict({x: A[i] for i, b in enumerate(P.blocks)
                                            for x in b}, 5)


def test_pcompose_examples():
    s = PartialTransformation.from_dict({0: 2, 1: 3}, 4)
    t = PartialTransformation.from_dict({2: 0}, 4)
    assert pcompose(s, t) == PartialTransformation.from_dict({0: 0}, 4)
    assert pcompose(t, Permutation.identity(4)) == t
    u = PartialTransformation.from_dict({1: 1}, 4)
    assert pcompose(s, u).domain == ()
    with pytest.raises(ValueError):
        pcompose(s, Permutation.identity(5))


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    *[st.lists(st.integers(-1, n - 1), min_size=n, max_size=n).map(PartialTransformation)] * 3)))
def test_compose_properties(triple):
    s, t, u = triple
    assert {x: y for x, y in enumerate(pcompose(s, t).map) if y >= 0} == dict_compose(s, t)
    assert pcompose(pcompose(s, t), u) == pcompose(s, pcompose(t, u))
    assert pcompose(s, t).rank <= min(s.rank, t.rank)


@given(pts(), st.randoms(use_true_random=False))
def test_rank_invariants(u, rnd):
    n = u.degree
    imgs = list(range(n))
    rnd.shuffle(imgs)
    assert pcompose(u, Permutation(imgs)).rank == u.rank
    K = u.kernel
    assert K.k == u.rank and K.support == u.domain
    assert u.rank <= len(u.domain)


@given(pts())
def test_text_round_trip(u):
    assert PartialTransformation.parse(str(u), u.degree) == u


@pytest.mark.parametrize("bad", ["dom: 0 1 ; img: 2", "dom: 0 0 ; img: 1 1", "0 1 2",
                                 "dom: 7 ; img: 0", "dom: 0 ; img: 9"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        PartialTransformation.parse(bad, 5)


def test_parse_pt_lines():
    lines = ["# comment", "dom: 0 1 2 3 ; img: 0 0 1 2", "", "dom: ; img:"]
    out = parse_pt_lines(lines, 5)
    assert len(out) == 2 and out[1].domain == ()


def test_scan_examples():
    G = C.cyclic(5)
    assert is_regular_scan(G, PartialTransformation([1, 2, 3, 4, 0])) is not None
    assert is_regular_scan(G, PartialTransformation([3] * 5)) is not None
    assert is_regular_scan(G, c5_witness()) is None
    with pytest.raises(BudgetExceeded):
        is_regular_scan(C.symmetric(7), PartialTransformation([0] * 7),
                        cap=100)


def test_orbit_examples():
    G = C.cyclic(5)
    assert is_regular_orbit(G, c5_witness()) == (False, None)
    # injective map, 3-homogeneous group: the identity already works
    u = PartialTransformation.from_dict({0: 3, 2: 1, 4: 0}, 5)
    ok, g = is_regular_orbit(C.alternating(5), u)
    assert ok and pcompose(pcompose(u, g), u).rank == 3


def test_scan_and_orbit_agree_random():
    rng = random.Random(2024)
    groups = [C.cyclic(5), C.dihedral(5), C.agl1(5), C.cyclic(6), C.dihedral(6),
              C.agl1(7), C.cyclic(7), C.psl2(5), C.alternating(4), C.cyclic(4)]
    for i in range(1000):
        G = groups[i % len(groups)]
        u = random_partial_transformation(G.degree, rng)
        g = is_regular_scan(G, u)
        ok, h = is_regular_orbit(G, u)
        assert (g is not None) == ok
        for x in (g, h):
            if x is not None:
                assert pcompose(pcompose(u, x), u).rank == u.rank
                b = rank_inverse(u, x)
                assert pcompose(pcompose(u, b), u) == u


@given(pts(6))
def test_idempotent_power(x):
    w = idempotent_power(x)
    p = x
    for _ in range(w - 1):
        p = pcompose(p, x)
    assert pcompose(p, p) == p


def test_closure_examples():
    G = C.cyclic(5)
    assert closure(G, PartialTransformation([1, 2, 3, 4, 0])).invertible
    empty = closure(G, PartialTransformation([-1] * 5))
    assert len(empty) == 1 and empty.complete
    cl = closure(G, c5_witness())
    assert cl.complete and len(cl) <= 6 ** 5
    with pytest.raises(ValueError):
        closure(G, c5_witness(), cap=0)
    capped = closure(G, c5_witness(), cap=10)
    assert not capped.complete and len(capped) <= 10


def _oracle_semigroup(G, t):
    els = [g.images for g in G.elements()] + [t.map]
    mul = lambda a, b: tuple(-1 if y < 0 else b[y] for y in a)  # noqa: E731
    S = multiplicative_closure(mul, els, tuple(range(G.degree)))
    return S, mul


@pytest.mark.parametrize("G, t", [
    (C.cyclic(5), PartialTransformation.from_dict({0: 0, 1: 0, 2: 1, 4: 2}, 5)),
    (C.cyclic(4), PartialTransformation.from_dict({0: 1, 1: 1, 2: 3}, 4)),
    (C.dihedral(5), PartialTransformation.from_dict({0: 0, 1: 1, 2: 1}, 5)),
])
def test_closure_matches_oracle(G, t):
    S, mul = _oracle_semigroup(G, t)
    non_units = {s for s in S if -1 in s or len(set(s)) < len(s)}
    cl = closure(G, t)
    assert {u.map for u in cl.elements} == non_units
    # independent regularity: a = a b a for some b in S
    regular = all(any(mul(mul(a, b), a) == a for b in S) for a in non_units)
    assert semigroup_regular(G, t).regular == regular


def test_semigroup_regular_examples():
    G = C.cyclic(5)
    v = semigroup_regular(G, c5_witness())
    assert v.regular is False and v.irregular is not None
    rng = random.Random(5)
    for _ in range(20):
        t = random_partial_transformation(5, rng, domain_size=5, rank=3)
        assert semigroup_regular(G, t).regular
    S5 = C.symmetric(5)
    for _ in range(10):
        assert semigroup_regular(S5, random_partial_transformation(5, rng)).regular
    assert semigroup_regular(G, c5_witness(), cap=5).regular is None


def test_class_representatives_shape():
    G = C.cyclic(5)
    reps = pt_class_representatives(G, 3, 4)
    assert reps and all(t.rank == 3 and len(t.domain) == 4 for t in reps)
    assert len(set(reps)) == len(reps)


@pytest.mark.parametrize("G, k, l, ut", [
    (C.cyclic(5), 3, 4, False),
    (C.cyclic(5), 3, 5, True),
    (C.dihedral(5), 3, 4, False),
])
def test_harness(G, k, l, ut):
    rep = equivalence_harness(G, k, l)
    assert rep.ut == ut and rep.agree and rep.all_regular == ut
    if not ut:
        assert rep.irregular_example is not None


def test_harness_preconditions():
    with pytest.raises(ValueError):
        equivalence_harness(C.cyclic(5), 4, 5)
    with pytest.raises(ValueError):
        equivalence_harness(C.cyclic(9), 3, 5)


def test_ut_implies_regular_sampled():
    rng = random.Random(11)
    for G, k, l in [(C.agl1(7), 3, 6), (C.psl2(5), 2, 3), (C.dihedral(6), 1, 1)]:
        assert has_kl_ut(G, k, l).holds
        n = G.degree
        for m in range(l, n + 1):
            for _ in range(5):
                t = random_partial_transformation(n, rng, domain_size=m, rank=k)
                assert semigroup_regular(G, t).regular
