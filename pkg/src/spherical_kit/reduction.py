"""Strong adjacency, erasability, combs, primitivity and the reduction tree."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import SphericalKitError
from .quotient import (
    SubsetCache,
    direct_partition,
    fiber_product_conditions,
    fiber_product_decompositions,
    localize_s,
    parabolic_induction_base,
    projective_elements,
    quotient_by,
    quotient_by_projective,
)
from .rootsys import RootSystem, support
from .system import ColourSet, SphericalSystem, build_colours, format_vector

STEP_KINDS = (
    "parabolic-induction-strip",
    "direct-product-split",
    "projective-fibration",
    "fiber-product-split",
)


def _position(sys: SphericalSystem, g) -> int:
    if isinstance(g, int):
        if not 0 <= g < sys.rank:
            raise SphericalKitError(f"root position {g} out of range")
        return g
    g = tuple(g)
    if g not in sys.sigma:
        raise SphericalKitError(f"{format_vector(g)} is not in Sigma")
    return sys.sigma.index(g)


def delta_of_root(colours: ColourSet, sys: SphericalSystem, j: int) -> frozenset[int]:
    """Colours moved by some simple root in the support of ``sigma[j]``."""
    return colours.delta_of_simple(support(sys.sigma[j]))


def strongly_adjacent(sys: SphericalSystem, g1, g2, colours: ColourSet | None = None) -> bool:
    colours = build_colours(sys) if colours is None else colours
    j1, j2 = _position(sys, g1), _position(sys, g2)
    if j1 == j2:
        raise SphericalKitError("strong adjacency compares two different roots")
    vals = colours.functional
    return all(vals[k][j2] != 0 for k in delta_of_root(colours, sys, j1)) and all(
        vals[k][j1] != 0 for k in delta_of_root(colours, sys, j2)
    )


def bridge_colours(sys: SphericalSystem, colours: ColourSet | None = None) -> list[str]:
    """Colours moved by two simple roots lying in supports of different roots.

    Strong adjacency reads the colours of a root as those moved by its
    support; shared colours are where that reading could matter.
    """
    colours = build_colours(sys) if colours is None else colours
    out = []
    for c in colours:
        if len(c.moved_by) < 2:
            continue
        owners = {j for j, g in enumerate(sys.sigma) if support(g) & c.moved_by}
        if len(owners) > 1:
            out.append(c.name)
    return out


def strong_components(sys: SphericalSystem, colours: ColourSet | None = None) -> list[tuple[int, ...]]:
    """Partition of Sigma (as positions) into strongly connected components."""
    colours = build_colours(sys) if colours is None else colours
    n = sys.rank
    comp = list(range(n))

    def find(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for a, b in itertools.combinations(range(n), 2):
        if strongly_adjacent(sys, a, b, colours):
            ra, rb = find(a), find(b)
            if ra != rb:
                comp[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    return [tuple(v) for _, v in sorted(groups.items())]


def delta_of_sigma(sys: SphericalSystem, positions, colours: ColourSet | None = None) -> frozenset[int]:
    """Colours moved by ``supp(Sigma')`` that vanish on every other root."""
    colours = build_colours(sys) if colours is None else colours
    positions = set(positions)
    supp = set()
    for j in positions:
        supp |= support(sys.sigma[j])
    cands = colours.delta_of_simple(supp)
    others = [j for j in range(sys.rank) if j not in positions]
    return frozenset(k for k in cands if all(colours.functional[k][j] == 0 for j in others))


def splits_as_product(sys: SphericalSystem, s1, s2) -> bool:
    """Whether ``S1 ⊔ S2`` satisfies the three reducibility conditions."""
    rs = sys.group
    s1, s2 = frozenset(s1), frozenset(s2)
    if any(not rs.orthogonal(a, b) for a in s1 for b in s2):
        return False
    side = {}
    for j, g in enumerate(sys.sigma):
        sp = support(g)
        if sp <= s1:
            side[j] = 1
        elif sp <= s2:
            side[j] = 2
        else:
            return False
    for row in sys.rho:
        owners = {1 if i in s1 else 2 for i, j in sys.simple_in_sigma.items() if row[j] == 1}
        for j, v in enumerate(row):
            if v and any(o != side[j] for o in owners):
                return False
    return True


@dataclass(frozen=True)
class ComponentAnalysis:
    sigma_subset: tuple[int, ...]
    delta_of: tuple[str, ...]
    status: str  # isolated, erasable, quasi-erasable, none
    witness: tuple[str, ...] | None = None
    star_witness: tuple[str, ...] | None = None


def _subsets_smallest_first(items):
    items = sorted(items)
    for size in range(1, len(items) + 1):
        for combo in itertools.combinations(items, size):
            yield frozenset(combo)


def analyze_component(sys: SphericalSystem, positions, cache: SubsetCache | None = None) -> ComponentAnalysis:
    cache = SubsetCache(sys) if cache is None else cache
    positions = tuple(sorted(_position(sys, p) for p in positions))
    dset = delta_of_sigma(sys, positions, cache.colours)
    smooth_w = star_w = None
    for sub in _subsets_smallest_first(dset):
        r = cache.report(sub)
        if not r.distinguished:
            continue
        if r.star and star_w is None:
            star_w = sub
        if r.smooth:
            smooth_w = sub
            break
    supp_all = sys.sigma_support()
    supp_sub = frozenset().union(*(support(sys.sigma[j]) for j in positions)) if positions else frozenset()
    isolated = bool(positions) and splits_as_product(sys, supp_sub, supp_all - supp_sub)
    if isolated:
        status = "isolated"
    elif smooth_w is not None:
        status = "erasable"
    elif star_w is not None:
        status = "quasi-erasable"
    else:
        status = "none"
    names = cache.names
    return ComponentAnalysis(
        positions,
        names(dset),
        status,
        names(smooth_w) if smooth_w is not None else None,
        names(star_w) if star_w is not None else None,
    )


def decompose_by_lemma(sys: SphericalSystem, sigma1, sigma2, cache: SubsetCache | None = None):
    """A pair of colour subsets from two removable pieces that decomposes the system."""
    cache = SubsetCache(sys) if cache is None else cache
    p1 = {_position(sys, g) for g in sigma1}
    p2 = {_position(sys, g) for g in sigma2}
    if not p1 or not p2 or p1 & p2:
        return None
    a1, a2 = analyze_component(sys, p1, cache), analyze_component(sys, p2, cache)
    removable = ("isolated", "erasable", "quasi-erasable")
    if a1.status not in removable or a2.status not in removable:
        return None
    if a1.witness is None and a2.witness is None:
        return None

    def candidates(pos):
        dset = delta_of_sigma(sys, pos, cache.colours)
        full = [dset] if dset else []
        rest = [s for s in _subsets_smallest_first(dset) if s != dset]
        for sub in full + rest:
            r = cache.report(sub)
            if r.distinguished and r.star:
                yield sub

    for d1 in candidates(p1):
        for d2 in candidates(p2):
            if not fiber_product_conditions(cache, d1, d2):
                return cache.names(d1), cache.names(d2)
    return None


def is_comb(sys: SphericalSystem, colours: ColourSet | None = None) -> bool:
    rs = sys.group
    if sys.sp or sys.rank == 0 or sys.rank != rs.rank:
        return False
    if set(sys.simple_in_sigma) != set(range(rs.rank)):
        return False
    if len(strong_components(sys, colours)) != 1:
        return False
    return any(all(v == 1 for v in row) for row in sys.rho)


@dataclass(frozen=True)
class PrimitivityVerdict:
    primitive: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self):
        return self.primitive


def is_primitive(sys: SphericalSystem, cache: SubsetCache | None = None) -> PrimitivityVerdict:
    reasons = []
    _, cuspidal = parabolic_induction_base(sys)
    if not cuspidal:
        reasons.append("not cuspidal")
    proj = projective_elements(sys)
    if proj:
        reasons.append("projective elements: " + ", ".join(proj))
    cache = SubsetCache(sys) if cache is None else cache
    pairs = fiber_product_decompositions(sys, cache, first_only=True)
    if pairs:
        d1, d2 = pairs[0]
        reasons.append(f"decomposed by {{{', '.join(d1)}}} and {{{', '.join(d2)}}}")
    return PrimitivityVerdict(not reasons, tuple(reasons))


# --------------------------------------------------------------------------
# reduction tree


def trivial_system() -> SphericalSystem:
    return SphericalSystem(RootSystem(()), frozenset(), ())


@dataclass
class ReductionNode:
    system: SphericalSystem
    step: str | None = None  # how the children were obtained; None for a leaf
    data: dict = field(default_factory=dict)
    children: list["ReductionNode"] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class ReductionTree:
    root: ReductionNode

    def nodes(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    @property
    def steps(self) -> list[tuple[str, dict]]:
        return [(n.step, n.data) for n in self.nodes() if n.step is not None]

    @property
    def leaves(self) -> list[SphericalSystem]:
        return [n.system for n in self.nodes() if n.is_leaf()]

    def outline(self) -> str:
        lines = []

        def walk(node, depth):
            pad = "  " * depth
            lines.append(pad + describe(node.system))
            for note in node.notes:
                lines.append(pad + f"  note: {note}")
            if node.step:
                extra = ", ".join(f"{k}={v}" for k, v in node.data.items())
                lines.append(pad + f"- {node.step}" + (f" ({extra})" if extra else ""))
            else:
                lines.append(pad + "- leaf")
            for child in node.children:
                walk(child, depth + 1)

        walk(self.root, 0)
        return "\n".join(lines)

    def to_dict(self) -> dict:
        def conv(node):
            out = {"system": system_summary(node.system)}
            if node.notes:
                out["notes"] = list(node.notes)
            if node.step:
                out["step"] = node.step
                out["data"] = node.data
                out["children"] = [conv(c) for c in node.children]
            else:
                out["leaf"] = True
            return out

        return conv(self.root)


def system_summary(sys: SphericalSystem) -> dict:
    rs = sys.group
    return {
        "group": rs.spec(),
        "sp": [rs.name(i) for i in sorted(sys.sp)],
        "sigma": [format_vector(g) for g in sys.sigma],
        "a": {name: list(row) for name, row in zip(sys.a_names, sys.rho)},
    }


def describe(sys: SphericalSystem) -> str:
    rs = sys.group
    sp = ",".join(rs.name(i) for i in sorted(sys.sp)) or "-"
    sig = ", ".join(format_vector(g) for g in sys.sigma) or "-"
    return f"[{rs.spec()}] S^p={{{sp}}} Sigma={{{sig}}} |A|={len(sys.a_names)}"


def _measure(sys: SphericalSystem) -> tuple[int, int, int]:
    n_colours = len(build_colours(sys, check=False)) if sys.group.rank else 0
    return sys.group.rank, sys.rank, n_colours


def reduce(sys: SphericalSystem) -> ReductionTree:
    """Reduce to primitive systems by induction strips, splits and fibrations."""
    root = ReductionNode(sys)
    budget = [4 * (sum(_measure(sys)) + 1) ** 2]
    _expand(root, budget)
    return ReductionTree(root)


def _expand(node: ReductionNode, budget):
    budget[0] -= 1
    if budget[0] < 0:
        raise SphericalKitError("reduction did not terminate within its step bound")
    sys = node.system
    rs = sys.group
    children: list[SphericalSystem] = []
    if rs.rank == 0:
        return
    bridges = bridge_colours(sys) if sys.rank else []
    if bridges:
        node.notes.append(
            "strong adjacency reads shared colours " + ", ".join(bridges) + " through root supports"
        )
    if sys.rank == 0:
        node.step, node.data = "parabolic-induction-strip", {"S'": []}
        children = [trivial_system()]
    else:
        base, cuspidal = parabolic_induction_base(sys)
        parts = direct_partition(sys)
        proj = projective_elements(sys)
        if not cuspidal and base != frozenset(range(rs.rank)):
            node.step = "parabolic-induction-strip"
            node.data = {"S'": [rs.name(i) for i in sorted(base)]}
            children = [localize_s(sys, base)]
        elif len(parts) > 1:
            node.step = "direct-product-split"
            node.data = {"parts": [[rs.name(i) for i in sorted(p)] for p in parts]}
            children = [localize_s(sys, p) for p in parts]
        elif proj:
            node.step = "projective-fibration"
            node.data = {"delta": proj[0]}
            children = [quotient_by_projective(sys, proj[0])]
        else:
            cache = SubsetCache(sys)
            pairs = fiber_product_decompositions(sys, cache, first_only=True)
            if pairs:
                d1, d2 = pairs[0]
                node.step = "fiber-product-split"
                node.data = {"delta1": list(d1), "delta2": list(d2)}
                children = [quotient_by(sys, d, cache.colours).result for d in (d1, d2)]
    before = _measure(sys)
    for child in children:
        if child.group.rank and _measure(child) >= before:
            raise SphericalKitError(
                f"reduction step {node.step} made no progress on {describe(sys)}"
            )
        cnode = ReductionNode(child)
        node.children.append(cnode)
        _expand(cnode, budget)
