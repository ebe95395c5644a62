import pytest

from transversal import constructors as C
from transversal.constructors import GroupFileError, builtin, format_group, parse_group_text


@pytest.mark.parametrize("spec, order, degree", [
    ("cyclic:5", 5, 5),
    ("dihedral:5", 10, 5),
    ("symmetric:6", 720, 6),
    ("alternating:7", 2520, 7),
    ("agl1:7", 42, 7),
    ("agl1:8", 56, 8),
    ("psl2:11", 660, 12),
    ("psl2:13", 1092, 14),
    ("pgl2:7", 336, 8),
    ("pgammal2:8", 1512, 9),
    ("pgammal2:32", 163680, 33),
])
def test_builtin_orders(spec, order, degree):
    G = builtin(spec)
    assert (G.order(), G.degree) == (order, degree)


@pytest.mark.parametrize("name, order, degree", [
    ("m11_12", 7920, 12),
    ("psl2_11_deg11", 660, 11),
    ("2_4_a6_16", 5760, 16),
    ("sp6_2_deg28", 1451520, 28),
    ("co3_276", 495766656000, 276),
])
def test_bundled_orders(name, order, degree):
    G = C.bundled(name)
    assert (G.order(), G.degree) == (order, degree)


@pytest.mark.parametrize("spec", ["cyclic", "cyclic:x", "nope:3", "cyclic:0", "a:b:c"])
def test_builtin_rejects(spec):
    with pytest.raises(ValueError):
        builtin(spec)


def test_round_trip():
    G = C.bundled("m11_12")
    H = parse_group_text(format_group(G, order=G.order()))
    assert H.order() == 7920 and H.degree == 12 and H.name == "M11"


@pytest.mark.parametrize("text", [
    "",
    "(0 1)\n",
    "degree\n",
    "degree x\n",
    "degree 0\n",
    "degree 3\n(0 1 5)\n",
    "degree 3\n(0 1\n",
    "# order: 7\ndegree 3\n(0 1 2)\n",
])
def test_group_file_errors(text):
    with pytest.raises(GroupFileError):
        parse_group_text(text)


def test_missing_file(tmp_path):
    with pytest.raises(GroupFileError):
        C.from_file(tmp_path / "absent.grp")


def test_file_with_comments(tmp_path):
    p = tmp_path / "g.grp"
    p.write_text("# a comment\n# name: C5\ndegree 5\n\n(0 1 2 3 4)  # generator\n")
    G = C.from_file(p)
    assert G.order() == 5 and G.name == "C5"
