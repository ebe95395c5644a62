"""Named groups used by the reproduction suites and the tests.

Each entry knows how to build its group and whether it belongs to a family for
which the two-graph upper bound on t(G,3) is proved (``two_graph_certified``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

from . import constructors as C
from .groups import PermutationGroup
from .perm import Permutation


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    build: Callable[[], PermutationGroup]
    description: str
    two_graph_certified: bool = False


def _bundled(name: str) -> Callable[[], PermutationGroup]:
    return lambda: C.bundled(name)


ENTRIES = {e.id: e for e in [
    CatalogEntry("c5", lambda: C.cyclic(5), "C5 on 5 points"),
    CatalogEntry("d10", lambda: C.dihedral(5), "D(2*5) on 5 points"),
    CatalogEntry("agl1_7", lambda: C.agl1(7), "AGL(1,7) on 7 points"),
    CatalogEntry("pgl2_7", lambda: C.pgl2(7), "PGL(2,7) on 8 points"),
    CatalogEntry("psl2_11_deg11", _bundled("psl2_11_deg11"), "PSL(2,11) on 11 points"),
    CatalogEntry("m11_12", _bundled("m11_12"), "M11 on 12 points"),
    CatalogEntry("psl2_13", lambda: C.psl2(13), "PSL(2,13) on 14 points", True),
    CatalogEntry("2_4_a6_16", _bundled("2_4_a6_16"), "2^4:A6 on 16 points"),
    CatalogEntry("sp6_2_deg28", _bundled("sp6_2_deg28"), "Sp(6,2) on 28 points", True),
    CatalogEntry("co3_276", _bundled("co3_276"), "Co3 on 276 points", True),
    CatalogEntry("pgammal2_32", lambda: C.pgammal2(32), "PGammaL(2,32) on 33 points"),
]}


@lru_cache(maxsize=None)
def get(group_id: str) -> PermutationGroup:
    """Build (once) the catalog group with this id."""
    try:
        return ENTRIES[group_id].build()
    except KeyError:
        raise KeyError(f"unknown catalog group {group_id!r}; choose from {sorted(ENTRIES)}") from None


def certified_builtin(spec: str) -> bool:
    """psl2:q with q = 1 mod 4 is in a certified two-graph family."""
    kind, _, arg = spec.partition(":")
    return kind == "psl2" and arg.isdigit() and int(arg) % 4 == 1


def is_certified(source: str) -> bool:
    """Whether a group source string (``builtin:...`` or a bundled id) is certified."""
    if source.startswith("builtin:"):
        return certified_builtin(source[len("builtin:"):])
    e = ENTRIES.get(source)
    return bool(e and e.two_graph_certified)


def small_catalog(max_degree: int = 12) -> list[PermutationGroup]:
    """Assorted groups of small degree for property tests, including intransitive
    and imprimitive ones."""
    gs = []
    for n in range(1, 7):
        gs.append(C.symmetric(n))
    for n in range(3, 8):
        gs.append(C.alternating(n))
    for n in range(2, 9):
        gs.append(C.cyclic(n))
    for n in range(3, 9):
        gs.append(C.dihedral(n))
    for q in (4, 5, 7, 8):
        gs.append(C.agl1(q))
    for q in (4, 5, 7):
        gs.append(C.psl2(q))
    for q in (5, 7):
        gs.append(C.pgl2(q))
    gs.append(C.pgammal2(8))
    gs.append(PermutationGroup([Permutation.from_cycles([[0, 1, 2]], 5)], 5, "<(0 1 2)> on 5"))
    gs.append(PermutationGroup([Permutation.from_cycles([[0, 1], [2, 3]], 4)], 4,
                               "<(0 1)(2 3)> on 4"))
    gs.append(PermutationGroup([Permutation.from_cycles([[0, 1, 2]], 6),
                                Permutation.from_cycles([[3, 4, 5]], 6),
                                Permutation.from_cycles([[0, 3], [1, 4], [2, 5]], 6)],
                               6, "C3 wr C2"))
    gs.append(get("psl2_11_deg11"))
    gs.append(get("m11_12"))
    return [G for G in gs if G.degree <= max_degree]


@lru_cache(maxsize=1)
def expected_rows() -> list[dict]:
    """Reference values for the reproduction suites."""
    text = (resources.files("transversal") / "data" / "expected.json").read_text()
    return json.loads(text)["rows"]
