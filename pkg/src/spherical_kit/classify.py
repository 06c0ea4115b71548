"""Enumeration of spherical systems of a group and their numeric invariants."""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import SphericalKitError
from .lattice import rational_rank
from .quotient import is_rigid, parabolic_induction_base
from .rootsys import RootSystem, pairing, positive_roots_outside
from .system import (
    SphericalRoot,
    SphericalSystem,
    build_colours,
    canonical_key,
    spherical_roots_of_group,
    validate,
)

DEFAULT_GROUP_CAP = 8


@dataclass(frozen=True)
class Invariants:
    dim_GH: int
    rank_Xi_H: int
    cuspidal: bool
    rigid: bool
    primitive: bool | None = None


def invariants(sys: SphericalSystem, with_primitive: bool = False) -> Invariants:
    rs = sys.group
    colours = build_colours(sys)
    dim_p = positive_roots_outside(rs, sys.sp)
    dim = dim_p + sys.rank
    rank_xi = len(colours) - sys.rank
    assert rank_xi >= 0, "more spherical roots than colours"
    assert sys.rank <= rs.rank, "rank of Sigma exceeds the rank of S"
    assert dim_p <= positive_roots_outside(rs, ()), "dim P^u exceeds dim B^u"
    if any(r is not None and r.kind in ("dn", "a1xa1") for r in sys.roots):
        assert sys.rank < rs.rank, "a d_m or a1xa1 root forces rank Sigma < rank S"
    _, cuspidal = parabolic_induction_base(sys)
    primitive = None
    if with_primitive:
        from .reduction import is_primitive

        primitive = is_primitive(sys).primitive
    return Invariants(dim, rank_xi, cuspidal, is_rigid(sys), primitive)


# --------------------------------------------------------------------------
# enumeration


def _pair_ok(rs: RootSystem, a: SphericalRoot, b: SphericalRoot) -> bool:
    """Sigma1 and Sigma2 between two candidate roots, in both directions."""
    for x, y in ((a, b), (b, a)):
        if x.kind == "a1'":
            i = x.vector.index(2)
            p = pairing(rs, i, y.vector)
            if p % 2 or p > 0:
                return False
        if x.kind == "a1xa1":
            i, j = [k for k, c in enumerate(x.vector) if c]
            if pairing(rs, i, y.vector) != pairing(rs, j, y.vector):
                return False
    return True


def sigma_candidates(rs: RootSystem, max_rank: int, prune: bool = True):
    """Linearly independent subsets of the spherical roots, with pairwise filters."""
    roots = spherical_roots_of_group(rs)
    out = []

    def rec(start, chosen, lower, upper):
        out.append((tuple(chosen), lower, upper))
        if len(chosen) == max_rank:
            return
        for k in range(start, len(roots)):
            r = roots[k]
            if prune:
                if any(not _pair_ok(rs, r, c) for c in chosen):
                    continue
                nl, nu = lower | r.lower, upper & r.upper
                if not nl <= nu:
                    continue
                vecs = [c.vector for c in chosen] + [r.vector]
                if rational_rank(vecs) != len(vecs):
                    continue
            else:
                nl, nu = lower | r.lower, upper & r.upper
            rec(k + 1, chosen + [r], nl, nu)

    rec(0, [], frozenset(), frozenset(range(rs.rank)))
    return out


def _row_choices(rs: RootSystem, sigma, i: int):
    """Unordered pairs ``(r+, r-)`` for ``alpha_i`` allowed by A1 and A2."""
    j0 = sigma.index(tuple(1 if k == i else 0 for k in range(rs.rank)))
    cart = [pairing(rs, i, g) for g in sigma]
    ranges = []
    for j, g in enumerate(sigma):
        if j == j0:
            ranges.append([1])
        elif sum(g) == 1:
            ranges.append(range(cart[j] - 1, 2))
        else:
            ranges.append(range(cart[j], 1))
    pairs = set()
    for plus in itertools.product(*ranges):
        minus = tuple(c - p for c, p in zip(cart, plus))
        if all(lo <= v for v, lo in zip(minus, (min(r) for r in ranges))) and all(
            v <= max(r) for v, r in zip(minus, ranges)
        ):
            pairs.add(tuple(sorted((plus, minus))))
    return sorted(pairs)


def _assemble(simple: list[int], choice, sigma) -> list[tuple[str, tuple[int, ...]]] | None:
    """Merge per-root pairs into the multiset ``A``; ``None`` if inconsistent.

    A row with value 1 on several simple roots is one shared colour, so its
    multiplicity has to agree in every pair where it appears.
    """
    n = len(sigma[0])
    col = {i: sigma.index(tuple(1 if k == i else 0 for k in range(n))) for i in simple}
    counts = [Counter(pair) for pair in choice]
    for cnt in counts:
        for row, m in cnt.items():
            for k, i in enumerate(simple):
                if row[col[i]] == 1 and counts[k][row] != m:
                    return None
    named, emitted = [], set()
    for i, pair in zip(simple, choice):
        for row, sign in zip(pair, _signs(pair)):
            if row not in emitted:
                named.append((f"d{sign}_a{i + 1}", row))
        emitted.update(pair)
    return named


def _signs(pair):
    a, b = pair
    a_ok, b_ok = min(a) >= -1, min(b) >= -1
    if a_ok and not b_ok:
        return ["+", "-"]
    if b_ok and not a_ok:
        return ["-", "+"]
    return ["+", "-"] if a >= b else ["-", "+"]


def _systems_for_sigma(rs: RootSystem, chosen, lower, upper, brute: bool = False):
    sigma = [r.vector for r in chosen]
    simple = sorted(g.index(1) for g in sigma if sum(g) == 1)
    free = sorted(upper - lower)
    out = []
    sp_choices = []
    if brute:
        sp_choices = [frozenset(s) for k in range(rs.rank + 1)
                      for s in itertools.combinations(range(rs.rank), k)]
    else:
        for k in range(len(free) + 1):
            for extra in itertools.combinations(free, k):
                sp_choices.append(lower | frozenset(extra))
    if brute:
        row_sets = [_brute_rows(rs, sigma, i) for i in simple]
    else:
        row_sets = [_row_choices(rs, sigma, i) for i in simple]
    for sp in sp_choices:
        for choice in itertools.product(*row_sets):
            named = _assemble(simple, list(choice), sigma) if simple else []
            if named is None:
                continue
            sys = SphericalSystem(rs, sp, tuple(sigma), tuple(n for n, _ in named),
                                  tuple(r for _, r in named))
            if validate(sys).ok:
                out.append(sys)
    return out


def _brute_rows(rs: RootSystem, sigma, i: int):
    """Every unordered pair of rows from the box [-2, 1] with 1 at ``alpha_i``
    whose sum is the pairing row (the A2 equation, checked pair by pair)."""
    j0 = sigma.index(tuple(1 if k == i else 0 for k in range(rs.rank)))
    cart = tuple(pairing(rs, i, g) for g in sigma)
    box = [r for r in itertools.product(range(-2, 2), repeat=len(sigma)) if r[j0] == 1]
    pairs = set()
    for a, b in itertools.combinations_with_replacement(box, 2):
        if tuple(x + y for x, y in zip(a, b)) == cart:
            pairs.add(tuple(sorted((a, b))))
    return sorted(pairs)


def _branch(args):
    rs, chosen, lower, upper, brute = args
    return _systems_for_sigma(rs, chosen, lower, upper, brute)


def enumerate_systems(
    rs: RootSystem,
    max_rank: int | None = None,
    cuspidal_only: bool = False,
    min_rank: int = 1,
    dedup: bool = True,
    prune: bool = True,
    threads: int = 1,
    group_cap: int = DEFAULT_GROUP_CAP,
) -> list[SphericalSystem]:
    """All spherical systems of the group, up to diagram automorphism by default.

    With ``prune=False`` no pairwise filter or window is used and every
    ``S^p`` and every pair of rows from the full box is tried; this is the
    brute-force oracle for small groups.
    """
    if rs.rank > group_cap:
        raise SphericalKitError(f"group rank {rs.rank} exceeds the enumeration cap {group_cap}")
    max_rank = rs.rank if max_rank is None else min(max_rank, rs.rank)
    cands = [c for c in sigma_candidates(rs, max_rank, prune) if len(c[0]) >= min_rank]
    full = frozenset(range(rs.rank))
    if cuspidal_only:
        cands = [c for c in cands if frozenset().union(*(r.support for r in c[0])) == full]
    tasks = [(rs, chosen, lower, upper, not prune) for chosen, lower, upper in cands]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_branch, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    else:
        results = [_branch(t) for t in tasks]
    systems = [s for batch in results for s in batch]
    keyed = {}
    for s in systems:
        key = canonical_key(s) if dedup else (s.sp, s.sigma, tuple(sorted(s.rho)))
        keyed.setdefault(key, s)
    return [keyed[k] for k in sorted(keyed, key=lambda k: (len(k[1]), k))]


def summary_table(systems) -> dict:
    by_rank = Counter(s.rank for s in systems)
    cusp = Counter(parabolic_induction_base(s)[1] for s in systems)
    return {
        "total": len(systems),
        "by_rank": dict(sorted(by_rank.items())),
        "cuspidal": cusp.get(True, 0),
        "non_cuspidal": cusp.get(False, 0),
    }
