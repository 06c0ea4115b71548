"""Spherical roots, spherical systems, axiom checks and colours."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import InvalidSystemError, UnknownColourError
from .lattice import rational_rank
from .rootsys import (
    RootSystem,
    WeightVector,
    connected_parts,
    diagram_automorphisms,
    pairing,
    permute_vector,
    subdiagram_type,
    support,
)

KINDS = ("a1", "am", "a1'", "a1xa1", "d3", "dn")


@dataclass(frozen=True)
class SphericalRoot:
    """An element of the set of spherical roots of the group.

    ``lower`` and ``upper`` bound ``S^p`` for any system containing it.
    """

    vector: WeightVector
    kind: str
    lower: frozenset[int]
    upper: frozenset[int]

    @property
    def support(self) -> frozenset[int]:
        return support(self.vector)


def _window(rs: RootSystem, v) -> tuple[frozenset[int], frozenset[int]]:
    upper = frozenset(i for i in range(rs.rank) if pairing(rs, i, v) == 0)
    return upper & support(v), upper


def root_kind(rs: RootSystem, v) -> str | None:
    """The shape of ``v`` if it is a spherical root of the group, else ``None``."""
    v = tuple(v)
    if len(v) != rs.rank or any(c < 0 for c in v) or not any(v):
        return None
    supp = sorted(support(v))
    parts = connected_parts(rs, supp)
    coeffs = sorted(v[i] for i in supp)
    if len(parts) == 2:
        if all(len(p) == 1 for p in parts) and coeffs == [1, 1]:
            return "a1xa1"
        return None
    if len(parts) != 1:
        return None
    kind, k = subdiagram_type(rs, supp)
    if k == 1:
        return {1: "a1", 2: "a1'"}.get(coeffs[0])
    if kind == "A":
        if all(c == 1 for c in coeffs):
            return "am"
        if k == 3:
            middle = next(i for i in supp if len(rs.neighbours[i] & set(supp)) == 2)
            if v[middle] == 2 and coeffs == [1, 1, 2]:
                return "d3"
        return None
    # D-shaped support: branch and one arm carry 2, the two other arms are single 1s
    sset = set(supp)
    branch = next(i for i in supp if len(rs.neighbours[i] & sset) == 3)
    if v[branch] != 2:
        return None
    ones = [i for i in supp if v[i] == 1]
    twos = [i for i in supp if v[i] == 2]
    if len(ones) != 2 or len(ones) + len(twos) != k:
        return None
    if not all(rs.neighbours[i] & sset == {branch} for i in ones):
        return None
    return "dn"


def make_root(rs: RootSystem, v) -> SphericalRoot | None:
    kind = root_kind(rs, v)
    if kind is None:
        return None
    lower, upper = _window(rs, tuple(v))
    return SphericalRoot(tuple(v), kind, lower, upper)


def spherical_roots_of_group(rs: RootSystem) -> list[SphericalRoot]:
    """Every spherical root of the group, sorted by kind then vector."""
    n = rs.rank
    candidates: set[WeightVector] = set()
    for i in range(n):
        candidates.add(rs.simple_root(i))
        candidates.add(tuple(2 if j == i else 0 for j in range(n)))
    for i, j in itertools.combinations(range(n), 2):
        if rs.orthogonal(i, j):
            candidates.add(tuple(1 if k in (i, j) else 0 for k in range(n)))
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n), size):
            if len(connected_parts(rs, subset)) != 1:
                continue
            sset = set(subset)
            kind, k = subdiagram_type(rs, subset)
            if kind == "A":
                candidates.add(tuple(1 if x in sset else 0 for x in range(n)))
                if k == 3:
                    mid = next(x for x in subset if len(rs.neighbours[x] & sset) == 2)
                    candidates.add(tuple((2 if x == mid else 1) if x in sset else 0 for x in range(n)))
                continue
            branch = next(x for x in subset if len(rs.neighbours[x] & sset) == 3)
            leaves = [x for x in subset if len(rs.neighbours[x] & sset) == 1]
            for pair in itertools.combinations(leaves, 2):
                if all(rs.neighbours[x] & sset == {branch} for x in pair):
                    candidates.add(tuple((1 if x in pair else 2) if x in sset else 0 for x in range(n)))
    roots = [make_root(rs, v) for v in candidates]
    roots = [r for r in roots if r is not None]
    return sorted(roots, key=lambda r: (KINDS.index(r.kind), tuple(-c for c in r.vector)))


# --------------------------------------------------------------------------
# the spherical system


@dataclass(frozen=True)
class SphericalSystem:
    """The triple ``(S^p, Sigma, A)`` with the table ``rho`` on ``A``.

    ``rho[k][j]`` is the value of the ``k``-th element of ``A`` on ``sigma[j]``.
    """

    group: RootSystem
    sp: frozenset[int]
    sigma: tuple[WeightVector, ...]
    a_names: tuple[str, ...] = ()
    rho: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "sp", frozenset(self.sp))
        object.__setattr__(self, "sigma", tuple(tuple(int(c) for c in g) for g in self.sigma))
        object.__setattr__(self, "a_names", tuple(self.a_names))
        object.__setattr__(self, "rho", tuple(tuple(int(c) for c in row) for row in self.rho))
        n = self.group.rank
        if any(not 0 <= i < n for i in self.sp):
            raise ValueError("S^p contains an index outside the group")
        for g in self.sigma:
            if len(g) != n:
                raise ValueError(f"spherical root {g} has length {len(g)}, expected {n}")
        if len(set(self.sigma)) != len(self.sigma):
            raise ValueError("repeated spherical root")
        if len(self.rho) != len(self.a_names):
            raise ValueError("one rho row per element of A is required")
        if len(set(self.a_names)) != len(self.a_names):
            raise ValueError("element names of A must be distinct")
        for name, row in zip(self.a_names, self.rho):
            if len(row) != len(self.sigma):
                raise ValueError(f"rho row of {name} has {len(row)} values, expected {len(self.sigma)}")

    @property
    def rank(self) -> int:
        return len(self.sigma)

    @cached_property
    def roots(self) -> tuple[SphericalRoot | None, ...]:
        return tuple(make_root(self.group, g) for g in self.sigma)

    @cached_property
    def simple_in_sigma(self) -> dict[int, int]:
        """``{simple root index: position in sigma}`` for ``Sigma ∩ S``."""
        out = {}
        for j, g in enumerate(self.sigma):
            if sum(g) == 1:
                out[g.index(1)] = j
        return out

    @cached_property
    def half_in_sigma(self) -> dict[int, int]:
        """``{alpha: position of 2 alpha in sigma}``."""
        out = {}
        for j, g in enumerate(self.sigma):
            if sum(g) == 2 and 2 in g:
                out[g.index(2)] = j
        return out

    def cartan_row(self, i: int) -> tuple[int, ...]:
        return tuple(pairing(self.group, i, g) for g in self.sigma)

    def a_of(self, i: int) -> list[int]:
        """Indices into ``A`` of ``A(alpha_i)`` (value 1 on ``alpha_i``)."""
        j = self.simple_in_sigma.get(i)
        if j is None:
            return []
        return [k for k, row in enumerate(self.rho) if row[j] == 1]

    def sigma_support(self) -> frozenset[int]:
        out = set()
        for g in self.sigma:
            out |= support(g)
        return frozenset(out)

    def with_a(self, names, rows) -> "SphericalSystem":
        return SphericalSystem(self.group, self.sp, self.sigma, tuple(names), tuple(rows))


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    passed: bool
    failures: tuple[str, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[AxiomResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def summary(self) -> str:
        if self.ok:
            return "all axioms pass"
        lines = []
        for r in self.failed():
            lines.append(f"{r.axiom}: " + "; ".join(r.failures))
        return "\n".join(lines)


AXIOMS = ("A1", "A2", "A3", "Sigma1", "Sigma2", "S", "independence", "membership")


def validate(sys: SphericalSystem) -> ValidationReport:
    """Evaluate every axiom and collect all failures."""
    rs = sys.group
    names = rs.name
    sig = sys.sigma
    fails: dict[str, list[str]] = {a: [] for a in AXIOMS}

    for name, row in zip(sys.a_names, sys.rho):
        for j, val in enumerate(row):
            if val > 1:
                fails["A1"].append(f"({name}, {format_vector(sig[j])}) has value {val} > 1")
            elif val == 1 and sum(sig[j]) != 1:
                fails["A1"].append(f"({name}, {format_vector(sig[j])}) has value 1 but the root is not simple")

    covered = set()
    for i, j in sorted(sys.simple_in_sigma.items()):
        members = sys.a_of(i)
        covered.update(members)
        if len(members) != 2:
            fails["A2"].append(f"A({names(i)}) has {len(members)} elements, expected 2")
            continue
        row = sys.cartan_row(i)
        total = tuple(a + b for a, b in zip(sys.rho[members[0]], sys.rho[members[1]]))
        for col, (t, c) in enumerate(zip(total, row)):
            if t != c:
                m0, m1 = (sys.a_names[k] for k in members)
                fails["A2"].append(
                    f"({m0}, {m1}, {format_vector(sig[col])}): values sum to {t}, pairing of {names(i)} is {c}"
                )
    for k, name in enumerate(sys.a_names):
        if k not in covered:
            fails["A3"].append(f"{name} lies in no A(alpha)")

    for i, j in sorted(sys.half_in_sigma.items()):
        for col, g in enumerate(sig):
            if col == j:
                continue
            p = pairing(rs, i, g)
            if p % 2 or p > 0:
                fails["Sigma1"].append(
                    f"({names(i)}, {format_vector(g)}): half pairing {Fraction(p, 2)} is not a nonpositive integer"
                )

    for i, k in itertools.combinations(range(rs.rank), 2):
        if not rs.orthogonal(i, k):
            continue
        s = tuple(1 if x in (i, k) else 0 for x in range(rs.rank))
        if s in sig:
            for g in sig:
                if pairing(rs, i, g) != pairing(rs, k, g):
                    fails["Sigma2"].append(f"({names(i)}, {names(k)}, {format_vector(g)}): pairings differ")

    for g, root in zip(sig, sys.roots):
        if root is None:
            fails["membership"].append(f"{format_vector(g)} is not a spherical root of {rs.spec()}")
            lower, upper = _window(rs, g)
        else:
            lower, upper = root.lower, root.upper
        if not lower <= sys.sp:
            missing = ",".join(names(i) for i in sorted(lower - sys.sp))
            fails["S"].append(f"{format_vector(g)} forces {missing} into S^p")
        if not sys.sp <= upper:
            extra = ",".join(names(i) for i in sorted(sys.sp - upper))
            fails["S"].append(f"{format_vector(g)} forbids {extra} in S^p")

    if sig and rational_rank(sig) != len(sig):
        fails["independence"].append("spherical roots are linearly dependent")

    return ValidationReport(tuple(AxiomResult(a, not fails[a], tuple(fails[a])) for a in AXIOMS))


def require_valid(sys: SphericalSystem) -> SphericalSystem:
    report = validate(sys)
    if not report.ok:
        raise InvalidSystemError("not a spherical system:\n" + report.summary(), report)
    return sys


# --------------------------------------------------------------------------
# colours


@dataclass(frozen=True)
class Colour:
    name: str
    kind: str  # "a", "a'" or "b"
    values: tuple[int, ...]
    moved_by: frozenset[int]


@dataclass(frozen=True)
class ColourSet:
    """The full colour set with functionals on ``Sigma``."""

    colours: tuple[Colour, ...]
    n_simple: int
    b_classes: tuple[tuple[int, ...], ...] = field(default=())

    def __len__(self):
        return len(self.colours)

    def __iter__(self):
        return iter(self.colours)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.colours)

    @property
    def functional(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c.values for c in self.colours)

    @cached_property
    def moved_by(self) -> tuple[frozenset[int], ...]:
        """``moved_by[i]`` is the set of colour positions moved by ``alpha_i``."""
        return tuple(
            frozenset(k for k, c in enumerate(self.colours) if i in c.moved_by)
            for i in range(self.n_simple)
        )

    def delta_of_simple(self, subset) -> frozenset[int]:
        out = set()
        for i in subset:
            out |= self.moved_by[i]
        return frozenset(out)

    def index(self, name: str) -> int:
        name = name.strip()
        for k, c in enumerate(self.colours):
            if c.name == name:
                return k
        # short aliases: d_ai for the b colour of ai, d'_ai for the a' colour
        if name.startswith(("d_a", "d'_a")):
            i = int(name.split("_a", 1)[1]) - 1
            want = "a'" if name.startswith("d'") else "b"
            for k, c in enumerate(self.colours):
                if i in c.moved_by and c.kind == want:
                    return k
            if want == "b":
                for k, c in enumerate(self.colours):
                    if i in c.moved_by and c.kind == "a'":
                        return k
        raise UnknownColourError(f"unknown colour {name!r}; known: {', '.join(self.names)}")

    def indices(self, names) -> frozenset[int]:
        return frozenset(self.index(n) for n in names)


def build_colours(sys: SphericalSystem, check: bool = True) -> ColourSet:
    """Colours ``A ⊔ A' ⊔ B`` with their functionals.

    Colours are ordered by the smallest simple root moving them; ties keep
    the order of ``A``.
    """
    if check:
        require_valid(sys)
    rs = sys.group
    entries = []
    for k, (name, row) in enumerate(zip(sys.a_names, sys.rho)):
        moved = frozenset(i for i in sys.simple_in_sigma if row[sys.simple_in_sigma[i]] == 1)
        entries.append((min(moved, default=rs.rank), 0, k, Colour(name, "a", row, moved)))
    for i in sorted(sys.half_in_sigma):
        vals = []
        for g in sys.sigma:
            p = pairing(rs, i, g)
            if p % 2:
                raise InvalidSystemError(f"half pairing of {rs.name(i)} with {format_vector(g)} is not integral")
            vals.append(p // 2)
        entries.append((i, 1, 0, Colour(f"a'({rs.name(i)})", "a'", tuple(vals), frozenset([i]))))
    sb = [
        i for i in range(rs.rank)
        if i not in sys.sp and i not in sys.simple_in_sigma and i not in sys.half_in_sigma
    ]
    sigma_set = set(sys.sigma)
    classes: list[list[int]] = []
    for i in sb:
        for cls in classes:
            if any(_related(rs, i, j, sigma_set) for j in cls):
                cls.append(i)
                break
        else:
            classes.append([i])
    for cls in classes:
        rows = {sys.cartan_row(i) for i in cls}
        if len(rows) != 1:
            raise InvalidSystemError(f"colour class {cls} has no well-defined functional")
        label = "~".join(rs.name(i) for i in cls)
        entries.append((cls[0], 2, 0, Colour(f"b({label})", "b", rows.pop(), frozenset(cls))))
    entries.sort(key=lambda e: e[:3])
    return ColourSet(tuple(e[3] for e in entries), rs.rank, tuple(tuple(c) for c in classes))


def _related(rs: RootSystem, i: int, j: int, sigma_set) -> bool:
    if not rs.orthogonal(i, j):
        return False
    s = tuple(1 if x in (i, j) else 0 for x in range(rs.rank))
    return s in sigma_set


# --------------------------------------------------------------------------
# symmetry


def permute_system(sys: SphericalSystem, perm) -> SphericalSystem:
    return SphericalSystem(
        sys.group,
        frozenset(perm[i] for i in sys.sp),
        tuple(permute_vector(perm, g) for g in sys.sigma),
        sys.a_names,
        sys.rho,
    )


def canonical_form(sys: SphericalSystem, perm=None):
    """A hashable form independent of the order of ``Sigma`` and names in ``A``."""
    s = sys if perm is None else permute_system(sys, perm)
    order = sorted(range(len(s.sigma)), key=lambda j: s.sigma[j], reverse=True)
    sigma = tuple(s.sigma[j] for j in order)
    rows = tuple(sorted(tuple(row[j] for j in order) for row in s.rho))
    return (tuple(sorted(s.sp)), sigma, rows)


def canonical_key(sys: SphericalSystem):
    return min(canonical_form(sys, p) for p in diagram_automorphisms(sys.group))


def systems_equal_up_to_automorphism(s1: SphericalSystem, s2: SphericalSystem):
    """A diagram automorphism carrying ``s1`` onto ``s2``, or ``None``."""
    if s1.group != s2.group:
        return None
    target = canonical_form(s2)
    for p in diagram_automorphisms(s1.group):
        if canonical_form(s1, p) == target:
            return p
    return None


# --------------------------------------------------------------------------
# text forms of vectors


def format_vector(v) -> str:
    """``(1,2,1)`` as ``a1+2a2+a3``; the zero vector as ``0``."""
    terms = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        coef = "" if c == 1 else ("-" if c == -1 else str(c))
        terms.append(f"{coef}a{i + 1}")
    if not terms:
        return "0"
    return "+".join(terms).replace("+-", "-")


def parse_vector(text: str, n: int) -> WeightVector:
    """Inverse of ``format_vector`` for nonnegative combinations."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty root expression")
    out = [0] * n
    for term in text.split("+"):
        m = re.fullmatch(r"(\d*)\*?a(\d+)", term)
        if not m:
            raise ValueError(f"cannot parse term {term!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        idx = int(m.group(2)) - 1
        if not 0 <= idx < n:
            raise ValueError(f"simple root a{idx + 1} out of range for rank {n}")
        out[idx] += coef
    return tuple(out)
