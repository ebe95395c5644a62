"""
Thresholds of small groups
==========================

A group G on n points has the (k,l)-ut property when every k-subset can be
moved onto a transversal of every k-partition of every l-subset. For fixed k
the property is monotone in l, so it holds exactly from a threshold t(G,k)
up to n. This walk-through computes a few thresholds and inspects the
witnesses that show why the property fails just below them.
"""

# %%
# The cyclic group of order 5 is 1-homogeneous but not 2-homogeneous.
# Its two orbits on 3-subsets are "three in a row" and "two plus one".
from transversal import constructors as C
from transversal.ut import has_kl_ut, threshold, verify_witness

G = C.cyclic(5)
for orbit in G.k_subset_orbits(3):
    print(orbit.id, orbit.rep, orbit.size)

# %%
# (3,4)-ut fails. The witness names an orbit and a 3-partition of a
# 4-set that no member of the orbit meets once in each block.
r = has_kl_ut(G, 3, 4)
w = r.witness
print(r.holds, w.orbit_rep, w.partition.blocks)
print("re-validated:", verify_witness(G, w))

# %%
# With all five points available the property holds, so t(C5,3) = 5.
res = threshold(G, 3)
print(res.value, res.method, res.probes)

# %%
# AGL(1,7) acts 2-transitively on the 7 points of GF(7), yet its 35
# triples split into two orbits. Binary search settles t = 6, and the
# failing probe at l = 5 keeps its witness.
A = C.agl1(7)
res = threshold(A, 3)
print(res.value, sorted(res.probes.items()))
print(res.witnesses[5].partition.blocks)

# %%
# Larger thresholds, with the amount of work each needed.
import time

from transversal.catalog import get

for gid, k in [("psl2_11_deg11", 3), ("m11_12", 4), ("pgl2_7", 4), ("2_4_a6_16", 3)]:
    H = get(gid)
    t0 = time.perf_counter()
    res = threshold(H, k)
    print(f"{gid:14} k={k}  t={res.value}  probes={sorted(res.probes)}  "
          f"{time.perf_counter() - t0:.2f}s")

# %%
# k = 1 and k = 2 have closed forms: n - d + 1 with d the smallest orbit
# length or the smallest orbital-graph valency. The search agrees.
from transversal.ut import t1, t2

for H in (C.cyclic(7), C.dihedral(7), C.psl2(7)):
    print(H.name, t1(H).value, t2(H).value, threshold(H, 2, method="search").value)
