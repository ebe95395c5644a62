"""Regenerate the bundled generator files in ``src/transversal/data``.

Every group is derived from first principles and its order is checked before
writing:

* M24 from the extended quadratic-residue code of length 24 (the binary Golay
  code), generated by PSL(2,23) on the projective line plus the map
  x -> x^3 (squares), x -> 12 x^3 (non-squares).
* M12 is the setwise stabilizer of a dodecad D; the 3-transitive M11 on 12
  points is the stabilizer in M12 of a point outside D, acting on D.
* PSL(2,11) on 11 points is a point stabilizer of that M11.
* 2^4:A6 is the affine group of GF(2)^4 over the derived group of Sp(4,2).
* Sp(6,2) acts on the 28 quadratic forms of minus type polarising to the
  standard symplectic form.
* Co3 is the automorphism group of the regular two-graph on the 23 points
  and 253 heptads of S(4,7,23). M23 supplies most of it; the missing element
  is an isomorphism between the descendant graphs at a point and at a heptad,
  found by individualisation-refinement.

Run: ``python tools/build_group_data.py [outdir]``.
"""

from __future__ import annotations

import sys
import time
from itertools import product
from pathlib import Path

import numpy as np

from transversal.constructors import format_group
from transversal.groups import PermutationGroup, _group_from_candidates
from transversal.perm import Permutation

OUT = Path(__file__).resolve().parents[1] / "src" / "transversal" / "data"


def log(msg: str) -> None:
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", flush=True)


def small_generating_set(gens: list[tuple], degree: int, order: int) -> PermutationGroup:
    return _group_from_candidates(gens, degree, order)


# -- M24 and the Golay code -------------------------------------------------

def golay_m24():
    p, inf = 23, 23
    squares = {(x * x) % p for x in range(1, p)}
    basis = []
    for i in range(p):
        s = {(x + i) % p for x in squares | {0}}
        if len(s) % 2:
            s.add(inf)
        basis.append(sum(1 << x for x in s))
    basis.append((1 << 24) - 1)
    code = {0}
    for b in basis:
        code |= {w ^ b for w in code}
    assert len(code) == 4096
    octads = {w for w in code if bin(w).count("1") == 8}
    assert len(octads) == 759

    def mob(f):
        return tuple(f(x) for x in range(24))

    inv = lambda x: pow(x, p - 2, p)
    gens = [
        mob(lambda x: inf if x == inf else (x + 1) % p),
        mob(lambda x: inf if x == inf else (2 * x) % p),
        mob(lambda x: 0 if x == inf else inf if x == 0 else (-inv(x)) % p),
        mob(lambda x: x if x in (0, inf) else
            (pow(x, 3, p) * (1 if x in squares else 12)) % p),
    ]
    for g in gens:
        for w in octads:
            assert sum(1 << g[i] for i in range(24) if w >> i & 1) in octads
    M24 = PermutationGroup([Permutation(g) for g in gens], 24, "M24")
    assert M24.order() == 244823040
    return M24, code, octads


def mathieu_11_12(M24, code):
    dodecad = min(w for w in code if bin(w).count("1") == 12)
    D = [i for i in range(24) if dodecad >> i & 1]
    outside = [i for i in range(24) if not dodecad >> i & 1]
    M12 = M24.setwise_stabilizer(D)
    assert M12.order() == 95040, M12.order()
    M11_24 = M12.stabilizer(outside[0])
    assert M11_24.order() == 7920
    M11 = M11_24.action_on(D)
    M11 = small_generating_set([g.images for g in M11.strong_generators()], 12, 7920)
    M11.name = "M11"
    return M11


def psl2_11_degree11(M11):
    H = M11.stabilizer(11)
    assert H.order() == 660
    H = H.action_on(range(11))
    H = small_generating_set([g.images for g in H.strong_generators()], 11, 660)
    H.name = "PSL(2,11)"
    return H


# -- symplectic groups over GF(2) ------------------------------------------

def symplectic_form(dim: int):
    def B(x: int, y: int) -> int:
        r = 0
        for i in range(0, dim, 2):
            r ^= ((x >> i) & 1) & ((y >> (i + 1)) & 1)
            r ^= ((x >> (i + 1)) & 1) & ((y >> i) & 1)
        return r
    return B


def transvections(dim: int):
    B = symplectic_form(dim)
    out = []
    for v in range(1, 1 << dim):
        out.append(tuple(x ^ v if B(x, v) else x for x in range(1 << dim)))
    return out


def two4_a6():
    sp = PermutationGroup([Permutation(t) for t in transvections(4)], 16)
    assert sp.order() == 720
    squares = {_sq(g) for g in sp.chain.elements()}
    a6 = _group_from_candidates(sorted(squares), 16, 360)
    translation = tuple(x ^ 1 for x in range(16))
    gens = [translation] + [g.images for g in a6.generators]
    G = small_generating_set(gens, 16, 5760)
    G.name = "2^4:A6"
    return G


def _sq(g: tuple) -> tuple:
    return tuple(g[g[x]] for x in range(len(g)))


def sp6_2_degree28():
    dim = 6
    B = symplectic_form(dim)
    vecs = range(1 << dim)

    def q0(x):
        return ((x & 1) & (x >> 1 & 1)) ^ ((x >> 2 & 1) & (x >> 3 & 1)) ^ ((x >> 4 & 1) & (x >> 5 & 1))

    tables = []
    for a in vecs:
        tables.append(tuple(q0(x) ^ B(a, x) for x in vecs))
    minus = [t for t in tables if t.count(0) == 28]
    assert len(minus) == 28
    index = {t: i for i, t in enumerate(minus)}
    lin = [Permutation(t) for t in transvections(dim)]
    sp = small_generating_set([g.images for g in lin], 64, 1451520)
    gens = []
    for g in sp.generators:
        ginv = g.inverse().images
        gens.append(Permutation(index[tuple(t[ginv[x]] for x in vecs)] for t in minus))
    G = PermutationGroup(gens, 28, "Sp(6,2)")
    assert G.order() == 1451520
    return G


# -- Co3 ---------------------------------------------------------------------

def two_graph_parity(adj: np.ndarray) -> np.ndarray:
    """Number of coherent triples through each pair for the two-graph of ``adj``."""
    n = len(adj)
    a = adj.astype(np.int32)
    deg = a.sum(1)
    common = a @ a
    # z with a_xz != a_yz, z not in {x, y}
    differ = deg[:, None] + deg[None, :] - 2 * common - 2 * a
    lam = np.where(adj, n - 2 - differ, differ)
    np.fill_diagonal(lam, -1)
    return lam


def refine(adjs, colours):
    """Colour refinement run jointly on several graphs so colours stay comparable."""
    while True:
        sigs = []
        for adj, col in zip(adjs, colours):
            k = int(max(c.max() for c in colours)) + 1
            onehot = np.zeros((len(col), k), dtype=np.int32)
            onehot[np.arange(len(col)), col] = 1
            counts = adj.astype(np.int32) @ onehot
            sigs.append(np.concatenate([col[:, None], counts], axis=1))
        allsig = np.concatenate(sigs)
        _, inv = np.unique(allsig, axis=0, return_inverse=True)
        inv = inv.ravel()
        new = []
        pos = 0
        for col in colours:
            new.append(inv[pos:pos + len(col)].astype(np.int64))
            pos += len(col)
        if all(len(np.unique(a)) == len(np.unique(b)) for a, b in zip(new, colours)):
            return new
        colours = new


def find_isomorphism(adj1: np.ndarray, adj2: np.ndarray):
    n = len(adj1)

    def search(c1, c2, depth):
        c1, c2 = refine([adj1, adj2], [c1, c2])
        if not np.array_equal(np.bincount(c1, minlength=c1.max() + 1),
                              np.bincount(c2, minlength=c2.max() + 1)):
            return None
        sizes = np.bincount(c1)
        if sizes.max() == 1:
            mapping = np.empty(n, dtype=np.int64)
            order2 = np.argsort(c2)
            mapping[np.argsort(c1)] = order2
            if np.array_equal(adj1, adj2[np.ix_(mapping, mapping)]):
                return mapping
            return None
        cell = int(np.flatnonzero(sizes > 1)[np.argmin(sizes[sizes > 1])])
        v = int(np.flatnonzero(c1 == cell)[0])
        fresh = max(c1.max(), c2.max()) + 1
        for w in np.flatnonzero(c2 == cell):
            d1 = c1.copy()
            d2 = c2.copy()
            d1[v] = fresh
            d2[w] = fresh
            res = search(d1, d2, depth + 1)
            if res is not None:
                return res
        return None

    zero = np.zeros(n, dtype=np.int64)
    return search(zero, zero.copy(), 0)


def co3_degree276(M24, octads):
    inf = 23
    M23 = M24.stabilizer(inf)
    assert M23.order() == 10200960
    M23 = small_generating_set([g.images for g in M23.strong_generators()], 24, 10200960)
    heptads = sorted(w & ~(1 << inf) for w in octads if w >> inf & 1)
    assert len(heptads) == 253
    hindex = {h: i for i, h in enumerate(heptads)}
    n = 276

    def hept_image(h, g):
        return sum(1 << g[i] for i in range(23) if h >> i & 1)

    gens276 = []
    for g in M23.generators:
        gi = g.images
        img = list(gi[:23]) + [23 + hindex[hept_image(h, gi)] for h in heptads]
        gens276.append(img)

    hsets = np.array([[h >> i & 1 for i in range(23)] for h in heptads], dtype=np.int32)
    meet = hsets @ hsets.T
    found = None
    for pp, ph_in, hh in product([0, 1], [1, 0], [1, 3]):
        adj = np.zeros((n, n), dtype=bool)
        adj[:23, :23] = pp
        inc = hsets.T.astype(bool) if ph_in else ~hsets.T.astype(bool)
        adj[:23, 23:] = inc
        adj[23:, :23] = inc.T
        adj[23:, 23:] = meet == hh
        np.fill_diagonal(adj, False)
        lam = two_graph_parity(adj)
        vals = np.unique(lam[lam >= 0])
        log(f"  rule pp={pp} in={ph_in} hh={hh}: lambda values {vals.tolist()}")
        if len(vals) == 1 and vals[0] in (112, 162):
            found = adj
            break
    assert found is not None, "no regular two-graph among the candidate rules"
    adj = found
    for img in gens276:
        perm = np.array(img)
        B = adj ^ adj[np.ix_(perm, perm)]
        s = B[0]
        assert np.array_equal(B, s[:, None] ^ s[None, :]), "M23 does not preserve the two-graph"

    def descendant(p):
        rest = [x for x in range(n) if x != p]
        sub = adj[np.ix_(rest, rest)]
        to_p = adj[p, rest]
        # {p, x, y} coherent iff a_px + a_py + a_xy is odd
        return rest, sub ^ to_p[:, None] ^ to_p[None, :]

    rest1, d1 = descendant(0)
    rest2, d2 = descendant(23)
    np.fill_diagonal(d1, False)
    np.fill_diagonal(d2, False)
    log("  searching descendant isomorphism")
    mapping = find_isomorphism(d1, d2)
    assert mapping is not None
    phi = [0] * n
    phi[0] = 23
    for i, x in enumerate(rest1):
        phi[x] = rest2[mapping[i]]
    perm = np.array(phi)
    B = adj ^ adj[np.ix_(perm, perm)]
    s = B[0]
    assert np.array_equal(B, s[:, None] ^ s[None, :])
    G = PermutationGroup([Permutation(g) for g in gens276] + [Permutation(phi)], n, "Co3")
    log("  computing order of Co3")
    assert G.order() == 495766656000, G.order()
    return G


def main(outdir: Path = OUT) -> None:
    outdir.mkdir(parents=True, exist_ok=True)

    def write(G, fname, comments):
        path = outdir / f"{fname}.grp"
        path.write_text(format_group(G, order=G.order(), comments=comments))
        log(f"wrote {path.name}: degree {G.degree}, order {G.order()}")

    log("building M24")
    M24, code, octads = golay_m24()
    M11 = mathieu_11_12(M24, code)
    write(M11, "m11_12", ["M11 in its 3-transitive action on 12 points"])
    L = psl2_11_degree11(M11)
    write(L, "psl2_11_deg11", ["PSL(2,11) acting on 11 points (cosets of A5)"])
    write(two4_a6(), "2_4_a6_16", ["affine group 2^4:A6, A6 = Sp(4,2)' in GL(4,2)"])
    write(sp6_2_degree28(), "sp6_2_deg28",
          ["Sp(6,2) on the 28 minus-type quadratic forms"])
    log("building Co3")
    write(co3_degree276(M24, octads), "co3_276",
          ["Co3 on 276 points: automorphisms of the regular two-graph on",
           "the 23 points and 253 heptads of S(4,7,23)"])


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else OUT)
