import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherical_kit.errors import CapExceededError
from spherical_kit.lattice import (
    EQ,
    FREE,
    GE,
    GE0,
    GE1,
    FeasibilityProblem,
    NotInLatticeError,
    extreme_rays,
    feasible,
    feasible_oracle,
    graver_basis,
    hilbert_basis,
    hilbert_basis_bruteforce,
    hilbert_cap,
    integer_kernel_basis,
    is_lattice_basis,
    rational_rank,
)


def test_feasible_empty():
    p = FeasibilityProblem(0)
    assert feasible(p) == () and feasible_oracle(p) == ()


def test_infeasible_single_row():
    p = FeasibilityProblem(1, (GE1,), (((-1,), GE),))
    assert feasible(p) is None and feasible_oracle(p) is None


def test_feasible_with_equality_and_strict():
    p = FeasibilityProblem(2, (GE1, GE1), (((1, -1), EQ),), ((0, 1),))
    for solver in (feasible, feasible_oracle):
        x = solver(p)
        assert x is not None and p.satisfied_by(x)
        assert x[0] == x[1]


def test_free_variables():
    p = FeasibilityProblem(2, (FREE, GE0), (((1, 1), EQ),), ((-1, 0),))
    for solver in (feasible, feasible_oracle):
        x = solver(p)
        assert x is not None and x[0] < 0 and p.satisfied_by(x)


def test_witness_is_rational():
    p = FeasibilityProblem(2, (GE1, GE1), (((2, -3), GE),))
    x = feasible(p)
    assert all(isinstance(v, Fraction) for v in x)


def test_bad_problem_rejected():
    with pytest.raises(ValueError):
        FeasibilityProblem(2, (GE1,))
    with pytest.raises(ValueError):
        FeasibilityProblem(1, ("ge2",))
    with pytest.raises(ValueError):
        FeasibilityProblem(2, (GE0, GE0), (((1,), GE),))


rows = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.sampled_from([GE1, GE0, FREE]), min_size=3, max_size=3),
    st.lists(st.tuples(rows, st.sampled_from([GE, EQ])), max_size=4),
    st.lists(rows, max_size=2),
)
def test_solvers_agree(lower, weak, strict):
    p = FeasibilityProblem(
        3, tuple(lower), tuple((tuple(r), rel) for r, rel in weak), tuple(tuple(r) for r in strict)
    )
    a, b = feasible(p), feasible_oracle(p)
    assert (a is None) == (b is None)
    for x in (a, b):
        if x is not None:
            assert p.satisfied_by(x)


def test_rank_and_kernel():
    assert rational_rank([(1, 2), (2, 4)]) == 1
    assert rational_rank([]) == 0
    k = integer_kernel_basis([(1, 1, -2)], 3)
    assert len(k) == 2
    assert all(v[0] + v[1] - 2 * v[2] == 0 for v in k)
    assert is_lattice_basis(k, [(1, 1, -2)], 3)


def test_is_lattice_basis_examples():
    assert is_lattice_basis([], [(1,)], 1) is True
    assert is_lattice_basis([(2,)], [], 1) is False
    assert is_lattice_basis([(1, 1)], [(1, -1)], 2) is True


def test_is_lattice_basis_membership():
    with pytest.raises(NotInLatticeError):
        is_lattice_basis([(1, 0)], [(1, -1)], 2)


def test_is_lattice_basis_counts():
    assert not is_lattice_basis([(1, 0)], [], 2)
    assert not is_lattice_basis([(1, 0), (0, 1), (1, 1)], [], 2)
    assert not is_lattice_basis([(1, 1), (1, -1)], [], 2)  # index 2


def test_hilbert_examples():
    assert hilbert_basis([], 2) == [(1, 0), (0, 1)]
    assert hilbert_basis([(1, -1)], 2) == [(1, 1)]
    assert sorted(hilbert_basis([(1, 1, -2)], 3)) == [(0, 2, 1), (1, 1, 1), (2, 0, 1)]
    assert hilbert_basis([(1, 1)], 2) == []
    assert hilbert_basis([], 0) == []


def test_hilbert_cap():
    with pytest.raises(CapExceededError):
        hilbert_basis([(1, -7)], 2, cap=5)
    assert hilbert_basis([(1, -7)], 2, cap=8) == [(7, 1)]


def test_cap_env(monkeypatch):
    monkeypatch.setenv("SPHERICAL_KIT_CAP", "3")
    assert hilbert_cap() == 3
    with pytest.raises(CapExceededError):
        hilbert_basis([(1, -7)], 2)
    monkeypatch.delenv("SPHERICAL_KIT_CAP")
    assert hilbert_cap() == 64


def test_extreme_rays():
    assert sorted(extreme_rays([(1, 1, -2)], 3)) == [(0, 2, 1), (2, 0, 1)]


def _random_instance(rng):
    n = rng.randint(1, 4)
    m = rng.randint(0, 2)
    return [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(m)], n


def test_hilbert_against_bruteforce_and_graver():
    rng = random.Random(20261016)
    for _ in range(60):
        eqs, n = _random_instance(rng)
        hb = hilbert_basis(eqs, n, cap=512)
        assert sorted(v for v in hb if sum(v) <= 8) == sorted(hilbert_basis_bruteforce(eqs, n, 8))
        try:
            gr = graver_basis(eqs, n, cap=40)
        except CapExceededError:
            continue
        assert sorted(g for g in gr if min(g) >= 0) == sorted(hb)


def test_hilbert_elements_are_solutions():
    hb = hilbert_basis([(2, -1, -1), (0, 1, -1)], 3)
    assert hb == [(1, 1, 1)]
