import random

import pytest

from spherical_kit.errors import NotDistinguishedError
from spherical_kit.families import a1_system, comb, dc_star, do_pq, product
from spherical_kit.io import serialize_system
from spherical_kit.lattice import feasible_oracle
from spherical_kit.quotient import (
    affine_test,
    direct_factors,
    direct_partition,
    fiber_product_decompositions,
    is_distinguished,
    is_rigid,
    localize,
    localize_s,
    localize_sigma,
    parabolic_induction_base,
    projective_elements,
    quotient_by,
    quotient_by_projective,
)
from spherical_kit.reduction import trivial_system
from spherical_kit.rootsys import build_group
from spherical_kit.system import SphericalSystem, build_colours, validate


def test_empty_subset():
    s = dc_star(5)
    r = is_distinguished(s, [])
    assert r.distinguished and r.sigma_of == frozenset()
    assert r.smooth and r.star and not r.parabolic
    assert quotient_by(s, []).result == s


def test_dcstar4_single_colour():
    s = dc_star(4)
    r = is_distinguished(s, ["d_a2"])
    assert r.distinguished and r.witness == (1,)
    assert r.sigma_of == {0, 1, 2} and r.parabolic and r.smooth
    q = quotient_by(s, ["d_a2"])
    assert q.result.rank == 0 and q.validation.ok


def test_dcstar5_worked_quotient():
    s = dc_star(5)
    r = is_distinguished(s, ["d_a1", "d_a3"])
    assert r.distinguished and r.witness == (1, 1)
    assert {s.sigma[j] for j in r.sigma_of} == {(0, 0, 1, 1, 0), (0, 0, 1, 0, 1)}
    assert r.v_dim == 3 and not r.smooth and r.star
    q = quotient_by(s, ["d_a1", "d_a3"])
    assert q.result.sigma == ((1, 2, 1, 0, 0),)
    assert q.result.sp == {0, 2} and q.result.a_names == ()
    assert q.validation.ok


def test_dcstar5_parabolic():
    s = dc_star(5)
    r = is_distinguished(s, ["d_a1", "d_a2", "d_a3"])
    assert r.parabolic
    q = quotient_by(s, ["d_a1", "d_a2", "d_a3"])
    assert q.result.rank == 0 and q.result.sp == {0, 1, 2}


def test_not_distinguished():
    s = dc_star(5)
    assert not is_distinguished(s, ["d_a4"]).distinguished
    with pytest.raises(NotDistinguishedError):
        quotient_by(s, ["d_a4"])


def test_solvers_agree_on_dcstar5():
    s = dc_star(5)
    cs = build_colours(s)
    for mask in range(1 << len(cs)):
        idx = [k for k in range(len(cs)) if mask >> k & 1]
        a = is_distinguished(s, idx, cs)
        b = is_distinguished(s, idx, cs, solver=feasible_oracle)
        assert (a.distinguished, a.sigma_of, a.smooth, a.star) == (b.distinguished, b.sigma_of, b.smooth, b.star)


def test_quotient_keeps_a_colours():
    s = product(dc_star(4), a1_system())
    q = quotient_by(s, ["b(a2)"])
    assert q.validation.ok
    assert q.result.sigma == ((0, 0, 0, 0, 1),)
    assert q.result.a_names == ("d+_a1", "d-_a1") and q.result.rho == ((1,), (1,))
    # dropping one colour of A(alpha) removes the whole pair
    q = quotient_by(comb(2), ["d", "d-_a1"])
    assert q.result.rank == 0 and q.result.a_names == ()


def test_localize_sigma():
    s = dc_star(5)
    assert localize_sigma(s, s.sigma) == s
    loc = localize_sigma(s, [(1, 1, 0, 0, 0)])
    assert loc.sigma == ((1, 1, 0, 0, 0),) and loc.sp == frozenset() and validate(loc).ok
    d = do_pq(1, 3)
    loc = localize_sigma(d, [(2, 0, 0, 0)])
    assert loc.sp == {2, 3} and loc.sigma == ((2, 0, 0, 0),)


def test_localize_s():
    s = dc_star(5)
    assert localize_s(s, range(5)) == s
    loc = localize_s(s, {0, 1, 2})
    assert loc.group.spec() == "A3"
    assert loc.sigma == ((1, 1, 0), (0, 1, 1)) and loc.sp == frozenset()
    loc = localize_s(do_pq(1, 3), {0})
    assert loc.group.spec() == "A1" and loc.sigma == ((2,),)


def test_localize_both():
    s = dc_star(5)
    loc = localize(s, {0, 1, 2}, [(1, 1, 0, 0, 0)])
    assert loc.group.spec() == "A3" and loc.sigma == ((1, 1, 0),)
    assert localize(s, range(5), s.sigma) == s


def test_localize_commutes_on_samples():
    rng = random.Random(5)
    for s in (dc_star(5), do_pq(2, 3), comb(3)):
        n = s.group.rank
        for _ in range(10):
            s_sub = frozenset(i for i in range(n) if rng.random() < 0.7)
            ok = [g for g in s.sigma if all(i in s_sub for i, c in enumerate(g) if c)]
            sub = [g for g in ok if rng.random() < 0.6]
            first = localize_s(localize_sigma(s, sub), s_sub)
            assert serialize_system(first) == serialize_system(localize(s, s_sub, sub))


def test_parabolic_induction_base():
    assert parabolic_induction_base(dc_star(5)) == (frozenset(range(5)), True)
    a3 = SphericalSystem(build_group("A3"), frozenset(), ((1, 0, 0),), ("p", "m"), ((1,), (1,)))
    assert parabolic_induction_base(a3) == ({0}, False)
    full = SphericalSystem(build_group("A2"), frozenset({0, 1}), ())
    assert parabolic_induction_base(full) == ({0, 1}, False)


def test_direct_partition():
    assert len(direct_partition(dc_star(5))) == 1
    a1a1 = build_group("A1xA1")
    two = SphericalSystem(a1a1, frozenset(), ((1, 0), (0, 1)),
                          ("p1", "m1", "p2", "m2"), ((1, 0), (1, 0), (0, 1), (0, 1)))
    assert len(direct_factors(two)) == 2
    joined = SphericalSystem(a1a1, frozenset(), ((1, 1),))
    assert len(direct_partition(joined)) == 1


def test_fiber_products():
    assert fiber_product_decompositions(do_pq(1, 3)) == []
    assert fiber_product_decompositions(dc_star(4)) == []
    pairs = fiber_product_decompositions(product(dc_star(4), a1_system()))
    assert (("b(a1)", "b(a2)", "b(a3)", "b(a4)"), ("d+_a1", "d-_a1")) in pairs


def test_fiber_product_rank1_single_colour():
    s = SphericalSystem(build_group("A1"), frozenset(), ((2,),))
    assert fiber_product_decompositions(s) == []


def test_projective_elements():
    assert projective_elements(dc_star(5)) == []
    assert projective_elements(comb(2)) == ["d"]
    assert quotient_by_projective(comb(2), "d").rank == 0
    assert quotient_by_projective(comb(3), "d").rank == 0


def test_projective_zero_row():
    s = product(comb(2), SphericalSystem(build_group("A1"), frozenset(), ((2,),)))
    assert "d" in projective_elements(s)
    q = quotient_by_projective(s, "d")
    assert q.sigma == ((0, 0, 2),) and validate(q).ok


def test_affine():
    w = affine_test(do_pq(1, 3))
    assert w is not None
    for c in build_colours(do_pq(1, 3)):
        assert sum(a * b for a, b in zip(w, c.values)) > 0
    assert affine_test(dc_star(5)) is None
    assert affine_test(trivial_system()) == ()


def test_rigid():
    assert is_rigid(dc_star(5))
    assert is_rigid(comb(2))
    assert not is_rigid(a1_system())
