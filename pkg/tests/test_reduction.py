import pytest

from spherical_kit.families import a1_system, comb, dc_star, do_pq, product
from spherical_kit.quotient import SubsetCache, is_distinguished
from spherical_kit.reduction import (
    analyze_component,
    decompose_by_lemma,
    delta_of_sigma,
    is_comb,
    is_primitive,
    reduce,
    strong_components,
    strongly_adjacent,
)
from spherical_kit.rootsys import build_group
from spherical_kit.system import SphericalSystem, build_colours


def test_strong_adjacency_dcstar5():
    s = dc_star(5)
    assert strongly_adjacent(s, (1, 1, 0, 0, 0), (0, 1, 1, 0, 0))
    assert not strongly_adjacent(s, (1, 1, 0, 0, 0), (0, 0, 1, 0, 1))


def test_strong_adjacency_symmetric():
    s = dc_star(6)
    for a in range(s.rank):
        for b in range(s.rank):
            if a != b:
                assert strongly_adjacent(s, a, b) == strongly_adjacent(s, b, a)


def test_adjacency_across_factors():
    s = product(dc_star(4), a1_system())
    assert not strongly_adjacent(s, 0, 3)


def test_strong_components():
    assert strong_components(dc_star(5)) == [(0, 1, 2, 3)]
    assert strong_components(a1_system()) == [(0,)]
    comps = strong_components(product(dc_star(4), a1_system()))
    assert comps == [(0, 1, 2), (3,)]


def test_analyze_component():
    s = product(do_pq(1, 3), a1_system())
    a = analyze_component(s, [0, 1])
    assert a.status == "isolated"
    empty = analyze_component(dc_star(5), [0])
    assert empty.delta_of == () and empty.status == "none"


def test_analyze_component_erasable_witness_verifies():
    s = product(dc_star(4), a1_system())
    cache = SubsetCache(s)
    a = analyze_component(s, [3], cache)
    assert a.witness is not None
    r = is_distinguished(s, a.witness)
    assert r.distinguished and r.smooth


def test_erasable_full_sigma():
    s = comb(2)
    a = analyze_component(s, [0, 1])
    assert a.status in ("erasable", "isolated")


def test_decompose_by_lemma():
    s = product(dc_star(4), a1_system())
    pair = decompose_by_lemma(s, [0, 1, 2], [3])
    cs = build_colours(s)
    assert pair is not None
    d1, d2 = pair
    assert set(d1) == {cs.names[k] for k in delta_of_sigma(s, [0, 1, 2], cs)}
    assert decompose_by_lemma(s, [0, 1], [1, 3]) is None
    assert decompose_by_lemma(dc_star(5), [0, 1], [2, 3]) is None


def test_combs():
    assert is_comb(comb(2)) and is_comb(comb(3))
    assert not is_comb(dc_star(5))
    assert is_comb(a1_system())  # vacuous 1-comb


def test_primitivity():
    assert is_primitive(dc_star(5)).primitive
    v = is_primitive(SphericalSystem(build_group("A3"), frozenset(), ((1, 0, 0),),
                                     ("p", "m"), ((1,), (1,))))
    assert not v and "not cuspidal" in v.reasons
    v = is_primitive(comb(2))
    assert not v and any("projective" in r for r in v.reasons)


def test_reduce_d3_leaf():
    s = SphericalSystem(build_group("A3"), frozenset({0, 2}), ((1, 2, 1),))
    tree = reduce(s)
    assert tree.root.is_leaf() and tree.leaves == [s]


def test_reduce_product():
    tree = reduce(product(dc_star(4), a1_system()))
    assert tree.root.step == "direct-product-split"
    assert len(tree.root.children) == 2


def test_reduce_comb():
    tree = reduce(comb(2))
    assert tree.root.step == "projective-fibration"
    child = tree.root.children[0]
    assert child.system.rank == 0
    assert [s.group.rank for s in tree.leaves] == [0]


@pytest.mark.parametrize("sys", [dc_star(5), do_pq(2, 3), comb(3), product(comb(2), dc_star(4))],
                         ids=["dc5", "do23", "comb3", "comb2xdc4"])
def test_leaves_are_primitive_or_trivial(sys):
    for leaf in reduce(sys).leaves:
        assert leaf.group.rank == 0 or is_primitive(leaf).primitive


def test_tree_serializations():
    tree = reduce(comb(2))
    d = tree.to_dict()
    assert d["step"] == "projective-fibration"
    assert "leaf" in tree.outline()


@pytest.mark.parametrize("spec", ["A3", "A1xA2"])
def test_every_leaf_primitive_over_enumeration(spec):
    from spherical_kit.classify import enumerate_systems

    for s in enumerate_systems(build_group(spec)):
        for leaf in reduce(s).leaves:
            assert leaf.group.rank == 0 or is_primitive(leaf).primitive


def test_bridge_note():
    assert any("d" in n for n in reduce(comb(2)).root.notes)
    assert reduce(dc_star(5)).root.notes == []
