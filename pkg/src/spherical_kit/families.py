"""Constructors for the named systems used in examples and tests."""

from __future__ import annotations

from .rootsys import build_group
from .system import SphericalSystem, require_valid


def _vec(n, coeffs):
    v = [0] * n
    for i, c in coeffs.items():
        v[i - 1] = c
    return tuple(v)


def dc_star(n: int) -> SphericalSystem:
    """``S^p`` empty, roots ``a_i + a_{i+1}`` along the chain and ``a_{n-2} + a_n``."""
    if n < 4:
        raise ValueError("dc*(n) needs n >= 4")
    sigma = [_vec(n, {i: 1, i + 1: 1}) for i in range(1, n - 1)]
    sigma.append(_vec(n, {n - 2: 1, n: 1}))
    return require_valid(SphericalSystem(build_group([("D", n)]), frozenset(), sigma))


def do_pq(p: int, q: int) -> SphericalSystem:
    """Roots ``2a_1, ..., 2a_p`` and the ``d``-type root starting at ``a_{p+1}``."""
    if p < 1 or q < 2:
        raise ValueError("do(p+q) needs p >= 1 and q >= 2")
    n = p + q
    sigma = [_vec(n, {i: 2}) for i in range(1, p + 1)]
    tail = {i: 2 for i in range(p + 1, n - 1)}
    tail.update({n - 1: 1, n: 1})
    sigma.append(_vec(n, tail))
    sp = frozenset(range(p + 1, n)) if q >= 3 else frozenset()
    return require_valid(SphericalSystem(build_group([("D", n)]), sp, sigma))


def do_22_variants() -> list[SphericalSystem]:
    """The three rank-3 systems on D4 with two doubled roots and one a1xa1 root."""
    rs = build_group("D4")
    out = []
    for x, (y, z) in ((1, (3, 4)), (3, (1, 4)), (4, (1, 3))):
        sigma = [_vec(4, {x: 2}), _vec(4, {2: 2}), _vec(4, {y: 1, z: 1})]
        out.append(require_valid(SphericalSystem(rs, frozenset(), sigma)))
    return out


def a1_system() -> SphericalSystem:
    """``Sigma = {a1}`` on A1 with its two colours."""
    rs = build_group("A1")
    return require_valid(SphericalSystem(rs, frozenset(), [(1,)], ("d+_a1", "d-_a1"), ((1,), (1,))))


def comb(n: int) -> SphericalSystem:
    """The ``n``-comb on ``A1^n``: one colour taking value 1 on every root."""
    if n < 1:
        raise ValueError("a comb needs n >= 1")
    rs = build_group([("A", 1)] * n)
    sigma = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    names = ["d"]
    rows = [tuple([1] * n)]
    for i in range(n):
        names.append(f"d-_a{i + 1}")
        rows.append(tuple(1 if j == i else -1 for j in range(n)))
    return require_valid(SphericalSystem(rs, frozenset(), sigma, names, rows))


def product(s1: SphericalSystem, s2: SphericalSystem) -> SphericalSystem:
    """Direct product on the concatenated group; ``A`` names of ``s2`` get a prime if they clash."""
    rs = build_group(list(s1.group.components) + list(s2.group.components))
    n1, n2 = s1.group.rank, s2.group.rank
    sigma = [g + (0,) * n2 for g in s1.sigma] + [(0,) * n1 + g for g in s2.sigma]
    sp = set(s1.sp) | {n1 + i for i in s2.sp}
    names = list(s1.a_names)
    rows = [row + (0,) * s2.rank for row in s1.rho]
    for name, row in zip(s2.a_names, s2.rho):
        renamed = name
        while renamed in names:
            renamed += "'"
        names.append(renamed)
        rows.append((0,) * s1.rank + row)
    return require_valid(SphericalSystem(rs, frozenset(sp), sigma, names, rows))
