import pytest

from spherical_kit.rootsys import (
    GroupSpecError,
    build_group,
    diagram_automorphisms,
    ordered_subdiagram,
    pairing,
    permute_vector,
    positive_roots_outside,
    sub_root_system,
    support,
)


def test_cartan_a1():
    assert build_group([("A", 1)]).cartan == ((2,),)


def test_cartan_d4_shape():
    c = build_group([("D", 4)]).cartan
    assert [c[1][j] for j in (0, 2, 3)] == [-1, -1, -1]
    for i, j in ((0, 2), (2, 3), (0, 3)):
        assert c[i][j] == 0


def test_d3_is_a3():
    d3 = build_group([("D", 3)])
    assert d3 == build_group([("A", 3)])
    assert d3.aliases


def test_d2_is_a1xa1():
    assert build_group("D2") == build_group("A1xA1")


def test_spec_strings():
    assert build_group("A3xD4").spec() == "A3xD4"
    assert build_group("trivial").rank == 0
    assert build_group("").rank == 0
    with pytest.raises(GroupSpecError):
        build_group("B3")
    with pytest.raises(GroupSpecError):
        build_group("D1")


@pytest.mark.parametrize(
    "group,i,v,expected",
    [("D4", 0, (1, 1, 0, 0), 1), ("A3", 1, (1, 2, 1), 2), ("A3", 0, (1, 2, 1), 0)],
)
def test_pairing_examples(group, i, v, expected):
    assert pairing(build_group(group), i, v) == expected


def test_pairing_matches_cartan():
    rs = build_group("A2xD5")
    for i in range(rs.rank):
        for j in range(rs.rank):
            assert pairing(rs, i, rs.simple_root(j)) == rs.cartan[i][j]


def test_support():
    assert support((0, 0, 0)) == frozenset()
    assert support((1, 2, 1)) == {0, 1, 2}
    assert support((2,)) == {0}


def test_positive_roots_outside():
    d4 = build_group("D4")
    assert positive_roots_outside(d4, ()) == 12
    assert positive_roots_outside(d4, {2, 3}) == 10
    a5 = build_group("A5")
    assert positive_roots_outside(a5, range(5)) == 0
    assert positive_roots_outside(a5, ()) == 15


def test_automorphisms():
    assert diagram_automorphisms(build_group("A1")) == [(0,)]
    assert diagram_automorphisms(build_group("A3")) == [(0, 1, 2), (2, 1, 0)]
    d4 = diagram_automorphisms(build_group("D4"))
    assert len(d4) == 6 and all(p[1] == 1 for p in d4)
    assert len(diagram_automorphisms(build_group("A1xA1"))) == 2


def test_automorphisms_preserve_cartan():
    for spec in ("D4", "A2xA2", "D5", "A1xA1xA2"):
        rs = build_group(spec)
        for p in diagram_automorphisms(rs):
            for i in range(rs.rank):
                for j in range(rs.rank):
                    assert rs.cartan[p[i]][p[j]] == rs.cartan[i][j]


def test_permute_vector():
    assert permute_vector((2, 1, 0), (1, 2, 0)) == (0, 2, 1)


def test_sub_root_system():
    rs = build_group("D5")
    sub, embed = sub_root_system(rs, {0, 1, 2})
    assert sub.spec() == "A3" and embed == [0, 1, 2]
    sub, embed = sub_root_system(rs, {2, 3, 4})
    assert sub.spec() == "A3"
    assert embed[1] == 2  # branch vertex sits in the middle
    sub, _ = sub_root_system(rs, {1, 2, 3, 4})
    assert sub.spec() == "D4"
    sub, _ = sub_root_system(build_group("D6"), {2, 3, 4, 5})
    assert sub.spec() == "D4"


def test_ordered_subdiagram_d():
    rs = build_group("D5")
    kind, order = ordered_subdiagram(rs, range(5))
    assert kind == ("D", 5) and order == [0, 1, 2, 3, 4]
