import pytest

from spherical_kit.classify import enumerate_systems, invariants, summary_table
from spherical_kit.errors import SphericalKitError
from spherical_kit.families import comb, dc_star, do_pq
from spherical_kit.reduction import trivial_system
from spherical_kit.rootsys import build_group
from spherical_kit.system import SphericalSystem, canonical_key


def _shape(systems):
    return sorted((tuple(sorted(s.sp)), s.sigma) for s in systems)


def test_invariants_examples():
    inv = invariants(do_pq(1, 3))
    assert (inv.dim_GH, inv.rank_Xi_H) == (12, 0)
    inv = invariants(dc_star(5))
    assert (inv.dim_GH, inv.rank_Xi_H) == (24, 1)
    full = SphericalSystem(build_group("A3"), frozenset({0, 1, 2}), ())
    assert invariants(full).dim_GH == 0
    assert invariants(comb(2), with_primitive=True).primitive is False
    assert invariants(trivial_system()).dim_GH == 0


def test_classify_a1():
    found = enumerate_systems(build_group("A1"))
    assert _shape(found) == [((), ((1,),)), ((), ((2,),))]
    a = [s for s in found if s.sigma == ((1,),)][0]
    assert a.rho == ((1,), (1,))


def test_classify_a1xa1_cuspidal_rank1():
    found = enumerate_systems(build_group("A1xA1"), max_rank=1, cuspidal_only=True)
    assert _shape(found) == [((), ((1, 1),))]


def test_classify_d4_cuspidal_rank1():
    found = enumerate_systems(build_group("D4"), max_rank=1, cuspidal_only=True)
    assert _shape(found) == [((1, 2, 3), ((2, 2, 1, 1),))]


@pytest.mark.parametrize("spec,count", [("A1", 2), ("A2", 6), ("A1xA1", 9), ("A3", 31)])
def test_pruned_matches_bruteforce(spec, count):
    rs = build_group(spec)
    fast = enumerate_systems(rs)
    slow = enumerate_systems(rs, prune=False)
    assert len(fast) == count
    assert sorted(canonical_key(s) for s in fast) == sorted(canonical_key(s) for s in slow)


def test_rank_zero_included_on_request():
    found = enumerate_systems(build_group("A1"), min_rank=0)
    assert len(found) == 4  # adds S^p = {} and S^p = {a1} with Sigma empty


def test_dedup_and_threads():
    rs = build_group("A3")
    plain = enumerate_systems(rs)
    assert len(enumerate_systems(rs, dedup=False)) > len(plain)
    assert enumerate_systems(rs, threads=2) == plain


def test_group_cap():
    with pytest.raises(SphericalKitError):
        enumerate_systems(build_group("A9"))


def test_summary_table():
    t = summary_table(enumerate_systems(build_group("A2")))
    assert t["total"] == 6 and sum(t["by_rank"].values()) == 6
    assert t["cuspidal"] + t["non_cuspidal"] == 6


def test_every_enumerated_system_has_consistent_invariants():
    for s in enumerate_systems(build_group("D4"), max_rank=2):
        inv = invariants(s)
        assert inv.rank_Xi_H >= 0
