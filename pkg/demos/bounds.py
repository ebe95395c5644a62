"""
Bounding thresholds without a full search
=========================================

Exact search enumerates every k-partition of every l-subset up to symmetry,
which stops being practical somewhere past degree 30. Two cheap invariants
still pin t(G,3) down: regular invariant hypergraphs give a lower bound, and
for groups with two orbits on triples the two-graph parameters give an
interval.
"""

# %%
# Regular hypergraphs. A union of orbits on k-subsets is regular when every
# (k-1)-subset lies in the same number d of its edges; then t(G,k) is at
# least n - d + 1. For AGL(1,7) the smallest such valency is 2.
from transversal import constructors as C
from transversal.bounds import bound_report, min_regular_valency

A = C.agl1(7)
vr = min_regular_valency(A, 3)
print(vr.valency, vr.orbit_ids, vr.exhaustive)
print(bound_report(A, 3, exact=False).to_json())

# %%
# Two-graphs. When G has two orbits on triples and both are regular
# two-graphs with pair counts lam <= lam', the threshold lies in
# [lam' + 3, first l above min(3 lam / 2, (6 lam' + 9) / 5)].
from transversal.bounds import three_ut_bounds, two_graph_params
from transversal.catalog import get

for gid in ("psl2_13", "2_4_a6_16", "sp6_2_deg28"):
    G = get(gid)
    p = two_graph_params(G)
    b = three_ut_bounds(G, certified=gid != "2_4_a6_16", params=p)
    print(f"{gid:12} n={G.degree:3}  lam={p.lam:3} lam'={p.lam_prime:3}  "
          f"[{b.lower}, {b.upper}]  conditional={b.conditional}")

# %%
# The upper end is only proved for some families, so 2^4:A6 gets the
# conditional flag. Exact search confirms both intervals that it can reach.
from transversal.ut import threshold

for gid in ("psl2_13", "2_4_a6_16"):
    print(gid, threshold(get(gid), 3).value)

# %%
# Co3 on 276 points is far beyond exact search, but its two orbits on the
# 3.5 million triples are still cheap to classify.
import time

t0 = time.perf_counter()
co3 = get("co3_276")
p = two_graph_params(co3)
print(p, three_ut_bounds(co3, certified=True, params=p).to_json(),
      f"{time.perf_counter() - t0:.1f}s")
