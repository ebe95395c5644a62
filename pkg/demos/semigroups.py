"""
Regular semigroups from a group and one partial map
===================================================

Add a single partial map t to a permutation group G and close under
composition. Whether the resulting semigroup is regular (every a has some b
with a b a = a) is tied to the (k,l)-ut property, where k is the rank of t
and l the size of its domain.
"""

# %%
# A partial map is written by its domain and images. Rank is the image
# size and the kernel groups domain points with equal image.
from transversal import constructors as C
from transversal.semigroup import PartialTransformation, pcompose

t = PartialTransformation.parse("dom: 0 1 2 3 ; img: 0 0 1 3", 5)
print(t, t.rank, t.kernel.blocks)
print(pcompose(t, C.cyclic(5).generators[0]))

# %%
# Build a map from the C5 witness for (3,4)-ut: its kernel is the witness
# partition and its image the orbit representative.
from transversal.ut import has_kl_ut

G = C.cyclic(5)
w = has_kl_ut(G, 3, 4).witness
u = PartialTransformation.from_dict(
    {x: w.orbit_rep[i] for i, b in enumerate(w.partition.blocks) for x in b}, 5)
print(u)

# %%
# u g u keeps the rank of u exactly when g sends im(u) to a transversal of
# ker(u). No element of C5 does, so u has no inverse of that form, and the
# semigroup <C5, u> is not regular.
from transversal.semigroup import is_regular_orbit, is_regular_scan, semigroup_regular

print(is_regular_scan(G, u), is_regular_orbit(G, u))
v = semigroup_regular(G, u)
print(v.regular, v.size)

# %%
# Once the rank test succeeds, the inverse can be written down from g:
# b = g (u g)^(w-1), where (u g)^w is idempotent.
from transversal.semigroup import rank_inverse

s = PartialTransformation.parse("dom: 0 1 2 3 4 ; img: 0 0 1 1 3", 5)
g = is_regular_scan(G, s)
b = rank_inverse(s, g)
print(g, b, pcompose(pcompose(s, b), s) == s)

# %%
# Across a whole class of maps: for every rank-3 map on 5 or 6 points,
# up to symmetry, regularity of <G,t> matches (3,l)-ut.
from transversal.semigroup import equivalence_harness

for H, l in [(C.cyclic(5), 4), (C.cyclic(5), 5), (C.agl1(7), 6)]:
    rep = equivalence_harness(H, 3, l)
    print(H.name, l, "ut:", rep.ut, "all regular:", rep.all_regular, "maps:", rep.checked)
