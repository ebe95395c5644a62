"""Universal transversal properties of finite permutation groups.

A group G on n points has the (k,l)-universal transversal property when every
k-subset can be moved by G onto a transversal of every k-partition of every
l-subset. The package decides this exactly, computes the threshold t(G,k),
bounds it where search is out of reach, and checks regularity of semigroups
generated by G and a partial map.
"""

from .bounds import (BoundReport, bound_report, hypergraph_regularity, induction_bound,
                     lower_bound_hypergraph, min_regular_valency, three_ut_bounds,
                     two_graph_params, two_graph_test)
from .constructors import (agl1, alternating, builtin, bundled, cyclic, dihedral, from_file,
                           pgammal2, pgl2, psl2, symmetric)
from .fields import GF, field_condition
from .groups import PermutationGroup, connectivity_at_least
from .partitions import PartialPartition, partitions_into_k
from .perm import Permutation, compose
from .semigroup import (PartialTransformation, closure, equivalence_harness,
                        is_regular_orbit, is_regular_scan, pcompose, semigroup_regular)
from .subsets import BudgetExceeded
from .ut import (ThresholdResult, UtResult, Witness, has_kl_ut, has_transversal,
                 is_k_homogeneous, k_subset_orbits, t1, t2, threshold, verify_witness)

__all__ = [
    "BoundReport", "bound_report", "hypergraph_regularity", "induction_bound",
    "lower_bound_hypergraph", "min_regular_valency", "three_ut_bounds",
    "two_graph_params", "two_graph_test", "agl1", "alternating", "builtin", "bundled",
    "cyclic", "dihedral", "from_file", "pgammal2", "pgl2", "psl2", "symmetric", "GF",
    "field_condition", "PermutationGroup", "connectivity_at_least", "PartialPartition",
    "partitions_into_k", "Permutation", "compose", "PartialTransformation", "closure",
    "equivalence_harness", "is_regular_orbit", "is_regular_scan", "pcompose",
    "semigroup_regular", "BudgetExceeded", "ThresholdResult", "UtResult", "Witness",
    "has_kl_ut", "has_transversal", "is_k_homogeneous", "k_subset_orbits", "t1", "t2",
    "threshold", "verify_witness",
]

__version__ = "0.1.0"
