"""Localizations, distinguished subsets, quotients and products."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .errors import NotDistinguishedError, SphericalKitError, StarPropertyError
from .lattice import (
    GE0,
    GE1,
    GE,
    FeasibilityProblem,
    feasible,
    hilbert_basis,
    is_lattice_basis,
    rational_rank,
)
from .rootsys import RootSystem, sub_root_system, support
from .system import (
    ColourSet,
    SphericalSystem,
    ValidationReport,
    build_colours,
    format_vector,
    validate,
)

FIBER_PRODUCT_MAX_COLOURS = 24


# --------------------------------------------------------------------------
# colour subsets


def _colour_indices(colours: ColourSet, subset) -> frozenset[int]:
    out = set()
    for item in subset:
        out.add(colours.index(item) if isinstance(item, str) else int(item))
    for k in out:
        if not 0 <= k < len(colours):
            raise SphericalKitError(f"colour position {k} out of range")
    return frozenset(out)


@dataclass(frozen=True)
class DistinguishedReport:
    subset: tuple[str, ...]
    distinguished: bool
    witness: tuple[int, ...] = ()
    sigma_of: frozenset[int] = frozenset()  # positions in sigma
    v_dim: int = 0
    smooth: bool = False
    parabolic: bool = False
    star: bool = False
    equations: tuple[tuple[int, ...], ...] = field(default=(), repr=False)
    hilbert: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    def check_implications(self):
        assert not self.parabolic or self.smooth, "parabolic but not smooth"
        assert not self.smooth or self.star, "smooth but without the star property"


def _integer_witness(x) -> tuple[int, ...]:
    if not x:
        return ()
    den = lcm(*(Fraction(v).denominator for v in x))
    ints = [int(Fraction(v) * den) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def distinguished_problem(colours: ColourSet, idx, n_sigma: int) -> FeasibilityProblem:
    """``c >= 1`` on the chosen colours and ``sum c rho >= 0`` on every root."""
    idx = sorted(idx)
    rows = tuple(
        (tuple(colours.colours[k].values[j] for k in idx), GE) for j in range(n_sigma)
    )
    return FeasibilityProblem(len(idx), (GE1,) * len(idx), rows)


def is_distinguished(sys: SphericalSystem, subset, colours: ColourSet | None = None,
                     solver=feasible) -> DistinguishedReport:
    """Distinguished-subset analysis of a set of colours (names or positions)."""
    colours = build_colours(sys) if colours is None else colours
    idx = sorted(_colour_indices(colours, subset))
    names = tuple(colours.colours[k].name for k in idx)
    n_sigma = sys.rank
    prob = distinguished_problem(colours, idx, n_sigma)
    base = solver(prob)
    if base is None:
        return DistinguishedReport(names, False)
    # Sigma(D') is found one root at a time.  Witnesses for different roots
    # add up to a witness positive on all of them, since the cone is convex.
    total = list(base)
    sigma_of = set()
    for j in range(n_sigma):
        row = tuple(colours.colours[k].values[j] for k in idx)
        if not any(row):
            continue
        w = solver(prob.with_strict(row))
        if w is not None:
            sigma_of.add(j)
            total = [a + b for a, b in zip(total, w)]
    witness = _integer_witness(total)
    gens = [colours.colours[k].values for k in idx]
    units = [tuple(1 if i == j else 0 for i in range(n_sigma)) for j in sorted(sigma_of)]
    v_dim = rational_rank(gens + units) if n_sigma else 0
    smooth = v_dim == len(sigma_of)
    parabolic = len(sigma_of) == n_sigma
    equations = tuple(tuple(g) for g in gens if any(g)) + tuple(units)
    hb = tuple(hilbert_basis(equations, n_sigma))
    star = is_lattice_basis(hb, equations, n_sigma)
    report = DistinguishedReport(
        names, True, witness, frozenset(sigma_of), v_dim, smooth, parabolic, star,
        equations, hb,
    )
    report.check_implications()
    return report


# --------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientTriple:
    result: SphericalSystem
    colour_image: dict
    report: DistinguishedReport
    validation: ValidationReport

    @property
    def sigma(self):
        return self.result.sigma


def _combine(sys: SphericalSystem, coeffs) -> tuple[int, ...]:
    n = sys.group.rank
    out = [0] * n
    for c, g in zip(coeffs, sys.sigma):
        for i in range(n):
            out[i] += c * g[i]
    return tuple(out)


def quotient_by(sys: SphericalSystem, subset, colours: ColourSet | None = None,
                report: DistinguishedReport | None = None) -> QuotientTriple:
    """The quotient triple by a distinguished subset with the star property."""
    colours = build_colours(sys) if colours is None else colours
    idx = _colour_indices(colours, subset)
    if report is None:
        report = is_distinguished(sys, idx, colours)
    if not report.distinguished:
        raise NotDistinguishedError(f"{{{', '.join(report.subset)}}} is not distinguished")
    if not report.star:
        raise StarPropertyError(
            f"{{{', '.join(report.subset)}}} is distinguished without the star property; "
            f"Hilbert basis {list(report.hilbert)} is not a lattice basis"
        )
    rs = sys.group
    sp = frozenset(i for i in range(rs.rank) if colours.moved_by[i] <= idx)
    basis = report.hilbert  # coordinates over sigma
    sigma = tuple(_combine(sys, c) for c in basis)
    dropped = {colours.colours[k].name for k in idx}
    names, rows = [], []
    for name, row in zip(sys.a_names, sys.rho):
        owners = [i for i, j in sys.simple_in_sigma.items() if row[j] == 1]
        # keep delta when some A(alpha) containing it avoids D'
        keep = any(
            not any(sys.a_names[k] in dropped for k in sys.a_of(i)) for i in owners
        )
        if keep:
            names.append(name)
            rows.append(tuple(sum(c * v for c, v in zip(coef, row)) for coef in basis))
    result = SphericalSystem(rs, sp, sigma, tuple(names), tuple(rows))
    image = {name: name for name in names}
    return QuotientTriple(result, image, report, validate(result))


def projective_elements(sys: SphericalSystem) -> list[str]:
    out = []
    for name, row in zip(sys.a_names, sys.rho):
        if all(v >= 0 for v in row):
            assert all(v in (0, 1) for v in row), "A1 bounds projective values by 1"
            out.append(name)
    return out


def quotient_by_projective(sys: SphericalSystem, name: str) -> SphericalSystem:
    if name not in sys.a_names:
        raise SphericalKitError(f"{name!r} is not an element of A")
    k = sys.a_names.index(name)
    row = sys.rho[k]
    if any(v < 0 for v in row):
        raise SphericalKitError(f"{name} is not projective")
    s_delta = {i for i, j in sys.simple_in_sigma.items() if row[j] == 1}
    keep_cols = [j for j, g in enumerate(sys.sigma)
                 if not (sum(g) == 1 and g.index(1) in s_delta)]
    keep_simple = set(sys.simple_in_sigma) - s_delta
    names, rows = [], []
    for nm, r in zip(sys.a_names, sys.rho):
        if any(r[sys.simple_in_sigma[i]] == 1 for i in keep_simple):
            names.append(nm)
            rows.append(tuple(r[j] for j in keep_cols))
    return SphericalSystem(sys.group, sys.sp, tuple(sys.sigma[j] for j in keep_cols),
                           tuple(names), tuple(rows))


# --------------------------------------------------------------------------
# localization


def _sigma_positions(sys: SphericalSystem, sigma_sub) -> list[int]:
    out = []
    for g in sigma_sub:
        if isinstance(g, int):
            out.append(g)
        else:
            g = tuple(g)
            if g not in sys.sigma:
                raise SphericalKitError(f"{format_vector(g)} is not in Sigma")
            out.append(sys.sigma.index(g))
    return sorted(set(out))


def localize_sigma(sys: SphericalSystem, sigma_sub) -> SphericalSystem:
    cols = _sigma_positions(sys, sigma_sub)
    simple = {i for i, j in sys.simple_in_sigma.items() if j in cols}
    names, rows = [], []
    for name, row in zip(sys.a_names, sys.rho):
        if any(row[sys.simple_in_sigma[i]] == 1 for i in simple):
            names.append(name)
            rows.append(tuple(row[j] for j in cols))
    return SphericalSystem(sys.group, sys.sp, tuple(sys.sigma[j] for j in cols),
                           tuple(names), tuple(rows))


def localize_s(sys: SphericalSystem, s_sub) -> SphericalSystem:
    """Localization in a subset of simple roots, re-indexed on the sub-diagram."""
    rs = sys.group
    s_sub = frozenset(s_sub)
    if any(not 0 <= i < rs.rank for i in s_sub):
        raise SphericalKitError("simple root outside the group")
    sub, embed = sub_root_system(rs, s_sub)
    local = {g: j for j, g in enumerate(embed)}
    cols = [j for j, g in enumerate(sys.sigma) if support(g) <= s_sub]
    sigma = tuple(tuple(sys.sigma[j][embed[k]] for k in range(sub.rank)) for j in cols)
    simple = {i for i in sys.simple_in_sigma if i in s_sub}
    names, rows = [], []
    for name, row in zip(sys.a_names, sys.rho):
        if any(row[sys.simple_in_sigma[i]] == 1 for i in simple):
            names.append(name)
            rows.append(tuple(row[j] for j in cols))
    sp = frozenset(local[i] for i in sys.sp & s_sub)
    return SphericalSystem(sub, sp, sigma, tuple(names), tuple(rows))


def embedding_of(rs: RootSystem, s_sub) -> list[int]:
    return sub_root_system(rs, s_sub)[1]


def localize(sys: SphericalSystem, s_sub, sigma_sub) -> SphericalSystem:
    """Localization in ``(S', Sigma')``; both orders of composition agree."""
    cols = _sigma_positions(sys, sigma_sub)
    s_sub = frozenset(s_sub)
    for j in cols:
        if not support(sys.sigma[j]) <= s_sub:
            raise SphericalKitError(
                f"support of {format_vector(sys.sigma[j])} is not contained in S'"
            )
    first = localize_s(localize_sigma(sys, cols), s_sub)
    inner = localize_s(sys, s_sub)
    embed = embedding_of(sys.group, s_sub)
    local_roots = [tuple(sys.sigma[j][embed[k]] for k in range(len(embed))) for j in cols]
    second = localize_sigma(inner, local_roots)
    assert first == second, "localizations in S' and Sigma' do not commute"
    return first


# --------------------------------------------------------------------------
# structure


def parabolic_induction_base(sys: SphericalSystem) -> tuple[frozenset[int], bool]:
    supp = sys.sigma_support()
    return supp | sys.sp, supp == frozenset(range(sys.group.rank))


def _union_find(n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    return find, union


def direct_partition(sys: SphericalSystem) -> list[frozenset[int]]:
    """The finest partition of ``S`` along which the system splits."""
    rs = sys.group
    find, union = _union_find(rs.rank)
    for i in range(rs.rank):
        for j in rs.neighbours[i]:
            union(i, j)
    for g in sys.sigma:
        s = sorted(support(g))
        for a in s[1:]:
            union(s[0], a)
    for row in sys.rho:
        owners = [i for i, j in sys.simple_in_sigma.items() if row[j] == 1]
        for i in owners:
            for j, v in enumerate(row):
                if v != 0:
                    union(i, min(support(sys.sigma[j])))
    parts: dict[int, set[int]] = {}
    for i in range(rs.rank):
        parts.setdefault(find(i), set()).add(i)
    return [frozenset(p) for _, p in sorted(parts.items())]


def direct_factors(sys: SphericalSystem) -> list[SphericalSystem]:
    parts = direct_partition(sys)
    if len(parts) == 1:
        return [sys]
    return [localize_s(sys, p) for p in parts]


def affine_test(sys: SphericalSystem, colours: ColourSet | None = None):
    """Nonnegative combination of Sigma on which every colour is positive."""
    colours = build_colours(sys) if colours is None else colours
    n = sys.rank
    strict = tuple(tuple(c.values) for c in colours)
    prob = FeasibilityProblem(n, (GE0,) * n, (), strict)
    w = feasible(prob)
    return None if w is None else _integer_witness(w) if any(w) else tuple(w)


def is_rigid(sys: SphericalSystem) -> bool:
    return len(set(sys.rho)) == len(sys.rho)


# --------------------------------------------------------------------------
# fiber products


@dataclass
class SubsetCache:
    """Distinguished reports and quotients of one system, computed on demand."""

    sys: SphericalSystem
    colours: ColourSet = None
    reports: dict = field(default_factory=dict)
    quotients: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.colours is None:
            self.colours = build_colours(self.sys)

    def report(self, idx: frozenset[int]) -> DistinguishedReport:
        if idx not in self.reports:
            self.reports[idx] = is_distinguished(self.sys, idx, self.colours)
        return self.reports[idx]

    def quotient(self, idx: frozenset[int]) -> QuotientTriple:
        if idx not in self.quotients:
            self.quotients[idx] = quotient_by(self.sys, idx, self.colours, self.report(idx))
        return self.quotients[idx]

    def names(self, idx) -> tuple[str, ...]:
        return tuple(self.colours.colours[k].name for k in sorted(idx))


def fiber_product_conditions(cache: SubsetCache, d1: frozenset[int], d2: frozenset[int]) -> list[str]:
    """The conditions that fail for the pair; empty means it decomposes."""
    sys = cache.sys
    if not d1 or not d2 or d1 & d2:
        return ["(i)"]
    r1, r2, r3 = cache.report(d1), cache.report(d2), cache.report(d1 | d2)
    if not (r1.distinguished and r2.distinguished and r3.distinguished):
        return ["distinguished"]
    if not (r1.star and r2.star and r3.star):
        return ["(ii)"]
    failed = []
    q1, q2 = cache.quotient(d1), cache.quotient(d2)
    gone1 = set(sys.sigma) - set(q1.result.sigma)
    gone2 = set(sys.sigma) - set(q2.result.sigma)
    if gone1 & gone2:
        failed.append("(iii)")
    rs = sys.group
    new1 = q1.result.sp - sys.sp
    new2 = q2.result.sp - sys.sp
    if any(not rs.orthogonal(a, b) or a == b for a in new1 for b in new2):
        failed.append("(iv)")
    if not (r1.smooth or r2.smooth):
        failed.append("(v)")
    return failed


def fiber_product_decompositions(sys: SphericalSystem, cache: SubsetCache | None = None,
                                 first_only: bool = False) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Unordered pairs of colour subsets decomposing the system, sorted by names."""
    cache = SubsetCache(sys) if cache is None else cache
    n = len(cache.colours)
    if n > FIBER_PRODUCT_MAX_COLOURS:
        raise SphericalKitError(
            f"{n} colours exceed the fiber product search limit of {FIBER_PRODUCT_MAX_COLOURS}"
        )
    good = []
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            idx = frozenset(combo)
            r = cache.report(idx)
            if r.distinguished and r.star:
                good.append(idx)
    out = []
    for d1, d2 in itertools.combinations(good, 2):
        if d1 & d2:
            continue
        if not fiber_product_conditions(cache, d1, d2):
            pair = tuple(sorted((cache.names(d1), cache.names(d2))))
            out.append(pair)
    out.sort()
    if first_only:
        return out[:1]
    return out
