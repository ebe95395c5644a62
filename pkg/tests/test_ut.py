import random
from itertools import combinations

import pytest

from transversal import constructors as C
from transversal.bounds import point_stabilizer_action, setwise_transitive_on_orbits
from transversal.catalog import small_catalog
from transversal.groups import PermutationGroup
from transversal.partitions import PartialPartition
from transversal.perm import Permutation
from transversal.ut import (NotPrimitiveError, Witness, has_kl_ut, has_transversal,
                            is_k_homogeneous, support_representatives, t1, t2, threshold,
                            verify_witness)

from oracles import closure, has_kl_ut as oracle_kl_ut, threshold as oracle_threshold

CATALOG_12 = small_catalog(12)
CATALOG_10 = small_catalog(10)
CATALOG_8 = small_catalog(8)


def gid(G):
    return G.name


def test_has_transversal_examples():
    orbs = C.cyclic(5).k_subset_orbits(2)
    near = orbs.orbit_of((0, 1))
    # cross pairs {0,3},{1,3} are both at distance 2
    P = PartialPartition.from_blocks([[0, 1], [3]])
    assert has_transversal(near, P) is None
    assert has_transversal(orbs.orbit_of((0, 2)), P) is not None
    single = PartialPartition.from_blocks([[1], [2]])
    assert has_transversal(near, single) == (1, 2)
    assert has_transversal(orbs.orbit_of((0, 2)), single) is None


def test_has_transversal_rejects_mismatch():
    orbs = C.cyclic(5).k_subset_orbits(2)
    with pytest.raises(ValueError):
        has_transversal(orbs[0], PartialPartition.from_blocks([[0], [1], [2]]))
    with pytest.raises(ValueError):
        has_transversal(orbs[0], PartialPartition.from_blocks([[0], [1]]), strategy="guess")


@pytest.mark.parametrize("G", [C.agl1(7), C.psl2(7), C.bundled("m11_12")], ids=gid)
def test_transversal_strategies_agree(G):
    rng = random.Random(1)
    n = G.degree
    for k in (2, 3, 4):
        orbs = G.k_subset_orbits(k)
        for _ in range(60):
            B = rng.sample(range(n), rng.randint(k, n))
            labels = list(range(k)) + [rng.randrange(k) for _ in range(len(B) - k)]
            rng.shuffle(labels)
            P = PartialPartition.from_labels(B, labels)
            for o in orbs:
                a = has_transversal(o, P, "scan")
                b = has_transversal(o, P, "enumerate")
                c = has_transversal(o, P, "auto")
                assert (a is None) == (b is None) == (c is None)
                for t in (a, b, c):
                    assert t is None or (P.is_transversal(t) and t in o)


def test_kl_examples():
    assert has_kl_ut(C.symmetric(6), 3, 4).holds
    r = has_kl_ut(C.cyclic(5), 3, 4)
    assert r.holds is False and verify_witness(C.cyclic(5), r.witness)
    G = C.agl1(7)
    assert has_kl_ut(G, 3, 6).holds
    assert has_kl_ut(G, 3, 5).holds is False


def test_kl_argument_checks():
    G = C.cyclic(5)
    for k, l in [(0, 3), (3, 2), (2, 6)]:
        with pytest.raises(ValueError):
            has_kl_ut(G, k, l)
    assert has_kl_ut(G, 5, 5).holds
    assert has_kl_ut(PermutationGroup([], 1), 1, 1).holds


def test_undecided_on_budget():
    r = has_kl_ut(C.agl1(7), 3, 6, max_work=10)
    assert r.holds is None and "progress" in r.stats
    with pytest.raises(ValueError):
        bool(r)
    t = threshold(C.bundled("m11_12"), 4, max_work=1000)
    assert t.status == "undecided" and t.value is None
    lo, hi = t.interval
    assert 4 <= lo <= hi <= 12


@pytest.mark.parametrize("G", [G for G in CATALOG_12 if G.degree <= 7], ids=gid)
def test_matches_bruteforce(G):
    els = closure([g.images for g in G.generators])
    n = G.degree
    for k in range(1, min(n, 4) + 1):
        for l in range(k, n + 1):
            assert has_kl_ut(G, k, l).holds == oracle_kl_ut(els, n, k, l), (k, l)


@pytest.mark.parametrize("G", [C.cyclic(5), C.agl1(7), C.dihedral(6)], ids=gid)
def test_threshold_matches_bruteforce(G):
    els = closure([g.images for g in G.generators])
    for k in (2, 3):
        res = threshold(G, k, method="search")
        want = oracle_threshold(els, G.degree, k)
        assert res.value == want
        assert res.status == ("none" if want is None else "exact")


@pytest.mark.parametrize("G", CATALOG_12, ids=gid)
def test_monotone_in_l(G):
    n = G.degree
    for k in range(1, min(n, 4) + 1):
        prev = False
        for l in range(k, n + 1):
            cur = has_kl_ut(G, k, l).holds
            assert not (prev and not cur), (k, l)
            prev = cur


@pytest.mark.parametrize("G", CATALOG_12, ids=gid)
def test_kk_is_homogeneity(G):
    for k in range(1, G.degree + 1):
        assert has_kl_ut(G, k, k).holds == is_k_homogeneous(G, k)


@pytest.mark.parametrize("G", [G for G in CATALOG_12 if G.degree >= 2], ids=gid)
def test_2n_is_primitivity(G):
    assert has_kl_ut(G, 2, G.degree).holds == G.is_primitive()


@pytest.mark.parametrize("G", CATALOG_12, ids=gid)
def test_witnesses_revalidate(G):
    n = G.degree
    for k in range(1, min(n, 4) + 1):
        for l in range(k, n + 1):
            r = has_kl_ut(G, k, l)
            if r.holds is False:
                w = r.witness
                assert w.partition.k == k and len(w.partition.support) == l
                assert verify_witness(G, w)
                assert verify_witness(G, Witness.from_json(w.to_json()))


def test_tampered_witness_rejected():
    G = C.cyclic(5)
    w = has_kl_ut(G, 3, 4).witness
    other = 1 - w.orbit
    orbs = G.k_subset_orbits(3)
    assert not verify_witness(G, Witness(other, orbs[other].rep, w.partition))
    assert not verify_witness(G, Witness(w.orbit, (9, 9, 9), w.partition))


@pytest.mark.parametrize("G", CATALOG_8, ids=gid)
def test_symmetry_reduction_agrees(G):
    n = G.degree
    for k in range(1, n + 1):
        for l in range(k, n + 1):
            a = has_kl_ut(G, k, l).holds
            assert has_kl_ut(G, k, l, symmetry=False).holds == a
            assert has_kl_ut(G, k, l, prune=True).holds == a


def test_support_representatives_cover():
    G = C.agl1(7)
    reps = support_representatives(G, 4)
    seen = set()
    for B in reps:
        seen |= set(G.set_orbit(B))
    assert seen == set(combinations(range(7), 4))
    assert len(support_representatives(G, 4, symmetry=False)) == 35


def test_threaded_matches_serial():
    G = C.psl2(7)
    for l in range(3, 9):
        assert has_kl_ut(G, 3, l, jobs=3).holds == has_kl_ut(G, 3, l).holds


def test_t1_examples():
    assert t1(C.cyclic(6)).value == 1
    assert t1(PermutationGroup([Permutation.from_cycles([[0, 1, 2]], 5)])).value == 5
    assert t1(PermutationGroup([Permutation.from_cycles([[0, 1], [2, 3]], 4)])).value == 3


def test_t2_examples():
    assert t2(C.cyclic(5)).value == 4
    assert t2(C.dihedral(5)).value == 4
    for n in range(3, 7):
        assert t2(C.symmetric(n)).value == 2
    with pytest.raises(NotPrimitiveError):
        t2(C.cyclic(6))
    assert threshold(C.cyclic(6), 2).status == "none"


@pytest.mark.parametrize("G", CATALOG_10, ids=gid)
def test_closed_forms_match_search(G):
    s1 = threshold(G, 1, method="search")
    assert t1(G).value == s1.value
    if G.degree < 2:
        return
    s2 = threshold(G, 2, method="search")
    if G.is_primitive():
        assert t2(G).value == s2.value
    else:
        assert s2.status == "none"


@pytest.mark.parametrize("G", CATALOG_12, ids=gid)
def test_threshold_boundary(G):
    n = G.degree
    for k in range(1, min(n, 4) + 1):
        r = threshold(G, k, method="search")
        if r.status == "none":
            assert not has_kl_ut(G, k, n).holds
            continue
        t = r.value
        assert has_kl_ut(G, k, t).holds
        assert t == k or not has_kl_ut(G, k, t - 1).holds
        if is_k_homogeneous(G, k):
            assert r.method == "homogeneous-fast-path" and t == k


@pytest.mark.parametrize("G", [G for G in CATALOG_12 if G.is_primitive() and G.degree > 2],
                         ids=gid)
def test_two_below_degree(G):
    n = G.degree
    assert has_kl_ut(G, 2, n - 1).holds
    if n - 2 >= 2:
        prime_cyclic = (G.name.startswith(("C", "D(")) and all(n % p for p in range(2, n)))
        assert has_kl_ut(G, 2, n - 2).holds == (not prime_cyclic)


INDUCTION_GROUPS = [G for G in CATALOG_12 if G.degree <= 9
                    and G.name.startswith(("Sym", "Alt", "PGL"))]


@pytest.mark.parametrize("G", INDUCTION_GROUPS, ids=gid)
def test_point_stabilizer_inherits(G):
    n = G.degree
    H = point_stabilizer_action(G, 0) if n > 1 else None
    for k in range(2, n):
        if not setwise_transitive_on_orbits(G, k):
            continue
        for l in range(k, n + 1):
            if has_kl_ut(G, k, l).holds:
                assert has_kl_ut(H, k - 1, l - 1).holds, (k, l)


def _exceptional(G, n, k):
    return (n, k) == (5, 3) and G.name in ("C5", "D(2*5)") or \
        (n, k) == (7, 4) and G.name == "AGL(1,7)"


@pytest.mark.parametrize("G", CATALOG_12, ids=gid)
def test_k_ut_descends(G):
    n = G.degree
    for k in range(2, max((n + 1) // 2, n - 6) + 1):
        if k > n:
            break
        if not has_kl_ut(G, k, n).holds:
            continue
        descends = all(has_kl_ut(G, k - 1, m).holds for m in range(k - 1, n + 1))
        if _exceptional(G, n, k):
            assert not descends and threshold(G, k).value == n
        else:
            assert descends, k
