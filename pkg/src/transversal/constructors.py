"""Standard permutation groups and the text group-file format.

Projective groups act on the projective line: points ``0..q-1`` are field
elements (see :mod:`transversal.fields` for the integer encoding) and point
``q`` is infinity.

Group files::

    # name: M11
    # order: 7920
    degree 12
    (0 1 2 3 4 5 6 7 8 9 10)
    (2 6 10 7)(3 9 4 5)

``#`` starts a comment; ``# order:`` and ``# name:`` comments are read as
metadata and the order is asserted at load time.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Callable

from .fields import GF
from .groups import PermutationGroup
from .perm import Permutation


class GroupFileError(ValueError):
    pass


def cyclic(n: int) -> PermutationGroup:
    return PermutationGroup([Permutation((i + 1) % n for i in range(n))], n, f"C{n}")


def dihedral(n: int) -> PermutationGroup:
    gens = [Permutation((i + 1) % n for i in range(n)),
            Permutation((-i) % n for i in range(n))]
    return PermutationGroup(gens, n, f"D(2*{n})")


def symmetric(n: int) -> PermutationGroup:
    gens = [Permutation.identity(n)]
    if n >= 2:
        gens = [Permutation.from_cycles([[0, 1]], n),
                Permutation((i + 1) % n for i in range(n))]
    return PermutationGroup(gens, n, f"Sym({n})")


def alternating(n: int) -> PermutationGroup:
    gens = [Permutation.identity(n)]
    if n >= 3:
        long = list(range(n)) if n % 2 else list(range(1, n))
        gens = [Permutation.from_cycles([[0, 1, 2]], n), Permutation.from_cycles([long], n)]
    return PermutationGroup(gens, n, f"Alt({n})")


def agl1(q: int) -> PermutationGroup:
    """AGL(1,q) acting on GF(q): x -> ax + b."""
    F = GF(q)
    w = F.primitive_element
    gens = [Permutation(F.add(x, 1) for x in range(q))]
    if q > 2:
        gens.append(Permutation(F.mul(w, x) for x in range(q)))
    return PermutationGroup(gens, q, f"AGL(1,{q})")


def _mobius(F: GF, a: int, b: int, c: int, d: int) -> Permutation:
    q = F.q
    inf = q
    images = []
    for x in range(q + 1):
        if x == inf:
            images.append(inf if c == 0 else F.mul(a, F.inv(c)))
            continue
        num = F.add(F.mul(a, x), b)
        den = F.add(F.mul(c, x), d)
        images.append(inf if den == 0 else F.mul(num, F.inv(den)))
    return Permutation(images)


def _projective_gens(q: int, full: bool) -> list[Permutation]:
    F = GF(q)
    w = F.primitive_element
    minus_one = F.neg(1)
    gens = [_mobius(F, 1, 1, 0, 1)]
    if full:
        gens += [_mobius(F, w, 0, 0, 1), _mobius(F, 0, 1, 1, 0)]
    else:
        gens += [_mobius(F, F.mul(w, w), 0, 0, 1), _mobius(F, 0, minus_one, 1, 0)]
    return gens


def psl2(q: int) -> PermutationGroup:
    """PSL(2,q) on the q+1 points of the projective line."""
    return PermutationGroup(_projective_gens(q, False), q + 1, f"PSL(2,{q})")


def pgl2(q: int) -> PermutationGroup:
    """PGL(2,q) on the projective line."""
    return PermutationGroup(_projective_gens(q, True), q + 1, f"PGL(2,{q})")


def pgammal2(q: int) -> PermutationGroup:
    """PGammaL(2,q): PGL(2,q) extended by the Frobenius automorphism."""
    F = GF(q)
    gens = _projective_gens(q, True)
    if F.m > 1:
        gens.append(Permutation([F.frobenius(x) for x in range(q)] + [q]))
    return PermutationGroup(gens, q + 1, f"PGammaL(2,{q})")


BUILTINS: dict[str, Callable[[int], PermutationGroup]] = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "agl1": agl1,
    "psl2": psl2,
    "pgl2": pgl2,
    "pgammal2": pgammal2,
}


def builtin(spec: str) -> PermutationGroup:
    """Build a group from a registry string such as ``"agl1:7"``."""
    try:
        kind, arg = spec.split(":")
        n = int(arg)
    except ValueError:
        raise ValueError(f"bad builtin group {spec!r}; expected kind:n") from None
    if kind not in BUILTINS:
        raise ValueError(f"unknown builtin group kind {kind!r}; choose from {sorted(BUILTINS)}")
    if n < 1:
        raise ValueError("group parameter must be positive")
    return BUILTINS[kind](n)


def parse_group_text(text: str, source: str = "<string>") -> PermutationGroup:
    degree = None
    meta: dict[str, str] = {}
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, _, comment = raw.partition("#")
        comment = comment.strip()
        if ":" in comment and not line.strip():
            key, _, val = comment.partition(":")
            meta[key.strip().lower()] = val.strip()
        line = line.strip()
        if not line:
            continue
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise GroupFileError(f"{source}:{lineno}: expected 'degree <n>'")
            try:
                degree = int(parts[1])
            except ValueError:
                raise GroupFileError(f"{source}:{lineno}: bad degree {parts[1]!r}") from None
            if degree < 1:
                raise GroupFileError(f"{source}:{lineno}: degree must be positive")
            continue
        try:
            gens.append(Permutation.parse(line, degree))
        except ValueError as exc:
            raise GroupFileError(f"{source}:{lineno}: {exc}") from None
    if degree is None:
        raise GroupFileError(f"{source}: missing 'degree <n>' line")
    G = PermutationGroup(gens, degree, meta.get("name"))
    if "order" in meta:
        expected = int(meta["order"])
        if G.order() != expected:
            raise GroupFileError(f"{source}: generators give order {G.order()}, "
                                 f"file declares {expected}")
    return G


def from_file(path: str | Path) -> PermutationGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from None
    return parse_group_text(text, str(path))


def format_group(G: PermutationGroup, name: str | None = None,
                 order: int | None = None, comments: list[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    if name or G.name:
        lines.append(f"# name: {name or G.name}")
    if order is not None:
        lines.append(f"# order: {order}")
    lines.append(f"degree {G.degree}")
    lines += [str(g) for g in G.generators]
    return "\n".join(lines) + "\n"


def data_path(name: str) -> Path:
    return Path(str(resources.files("transversal") / "data" / f"{name}.grp"))


def bundled(name: str) -> PermutationGroup:
    """Load a bundled generator file, e.g. ``bundled("m11_12")``."""
    return from_file(data_path(name))
