"""Root systems that are products of simple components of type A and D.

Simple roots carry a global index ``0..N-1`` (named ``a1..aN``) and are
numbered component by component following Bourbaki.  For ``D_n`` the fork
ends are the last two roots ``a_{n-1}`` and ``a_n``.

Weight vectors are plain tuples of integers: the coefficients over the
simple roots.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import SphericalKitError

WeightVector = tuple[int, ...]

_COMPONENT_RE = re.compile(r"([AaDd])(\d+)")


class GroupSpecError(SphericalKitError, ValueError):
    pass


def _cartan_block(kind: str, rank: int) -> list[list[int]]:
    m = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        m[i][i] = 2
    if kind == "A":
        edges = [(i, i + 1) for i in range(rank - 1)]
    else:
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return m


@dataclass(frozen=True)
class RootSystem:
    """A product of A/D Dynkin components with its Cartan matrix."""

    components: tuple[tuple[str, int], ...]
    aliases: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for kind, rank in self.components:
            if kind not in ("A", "D"):
                raise GroupSpecError(f"unknown type tag {kind!r}")
            if rank < 1 or (kind == "D" and rank < 4):
                raise GroupSpecError(f"invalid component {kind}{rank}")

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for _, r in self.components:
            out.append(acc)
            acc += r
        return tuple(out)

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        m = [[0] * n for _ in range(n)]
        for (kind, r), off in zip(self.components, self.offsets):
            block = _cartan_block(kind, r)
            for i in range(r):
                for j in range(r):
                    m[off + i][off + j] = block[i][j]
        return tuple(tuple(row) for row in m)

    @cached_property
    def neighbours(self) -> tuple[frozenset[int], ...]:
        c = self.cartan
        return tuple(
            frozenset(j for j in range(self.rank) if j != i and c[i][j] != 0)
            for i in range(self.rank)
        )

    def locate(self, i: int) -> tuple[int, int]:
        """Return ``(component index, local 1-based Bourbaki index)``."""
        if not 0 <= i < self.rank:
            raise IndexError(f"simple root index {i} out of range")
        for c, off in reversed(list(enumerate(self.offsets))):
            if i >= off:
                return c, i - off + 1
        raise AssertionError("unreachable")

    def name(self, i: int) -> str:
        return f"a{i + 1}"

    def index(self, name: str) -> int:
        m = re.fullmatch(r"a(\d+)", name.strip())
        if not m or not 1 <= int(m.group(1)) <= self.rank:
            raise GroupSpecError(f"unknown simple root {name!r}")
        return int(m.group(1)) - 1

    def spec(self) -> str:
        if not self.components:
            return "trivial"
        return "x".join(f"{k}{r}" for k, r in self.components)

    def simple_root(self, i: int) -> WeightVector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def orthogonal(self, i: int, j: int) -> bool:
        return self.cartan[i][j] == 0

    def __repr__(self):
        return f"RootSystem({self.spec()})"


def build_group(spec) -> RootSystem:
    """Build a root system from ``[("A", 3), ("D", 4)]`` or ``"A3xD4"``.

    ``D2`` is normalised to ``A1xA1`` and ``D3`` to ``A3``; the rewrite is
    kept in ``RootSystem.aliases``.
    """
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    comps: list[tuple[str, int]] = []
    aliases: list[str] = []
    for kind, rank in spec:
        kind = str(kind).upper()
        rank = int(rank)
        if kind not in ("A", "D"):
            raise GroupSpecError(f"unknown type tag {kind!r}")
        if rank < 1:
            raise GroupSpecError(f"rank must be positive, got {kind}{rank}")
        if kind == "D" and rank == 1:
            raise GroupSpecError("D1 is not a root system")
        if kind == "D" and rank == 2:
            comps += [("A", 1), ("A", 1)]
            aliases.append("D2=A1xA1")
        elif kind == "D" and rank == 3:
            comps.append(("A", 3))
            aliases.append("D3=A3")
        else:
            comps.append((kind, rank))
    return RootSystem(tuple(comps), tuple(aliases))


def parse_group_spec(text: str) -> list[tuple[str, int]]:
    text = text.strip()
    if text in ("", "trivial", "1"):
        return []
    out = []
    for part in text.split("x"):
        m = _COMPONENT_RE.fullmatch(part.strip())
        if not m:
            raise GroupSpecError(f"cannot parse group component {part!r} in {text!r}")
        out.append((m.group(1).upper(), int(m.group(2))))
    return out


def pairing(rs: RootSystem, i: int, v) -> int:
    """``<alpha_i^vee, v>`` for a weight vector over the simple roots."""
    if len(v) != rs.rank:
        raise ValueError(f"vector of length {len(v)} for a group of rank {rs.rank}")
    row = rs.cartan[i]
    return sum(row[j] * v[j] for j in range(rs.rank) if v[j])


def support(v) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(v) if c != 0)


def connected_parts(rs: RootSystem, subset) -> list[list[int]]:
    """Connected components of the Dynkin sub-diagram on ``subset``."""
    subset = set(subset)
    parts, seen = [], set()
    for start in sorted(subset):
        if start in seen:
            continue
        stack, part = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            part.append(v)
            for w in rs.neighbours[v]:
                if w in subset and w not in seen:
                    seen.add(w)
                    stack.append(w)
        parts.append(sorted(part))
    return parts


def subdiagram_type(rs: RootSystem, part) -> tuple[str, int]:
    """Type of a connected sub-diagram: ``("A", k)`` or ``("D", k)``."""
    part = set(part)
    degrees = [len(rs.neighbours[v] & part) for v in part]
    if max(degrees, default=0) >= 3:
        return "D", len(part)
    return "A", len(part)


def _positive_root_count(kind: str, k: int) -> int:
    return k * (k + 1) // 2 if kind == "A" else k * (k - 1)


def positive_roots_outside(rs: RootSystem, subset=frozenset()) -> int:
    """Number of positive roots not in the span of ``subset``.

    This is ``dim G/P`` for the standard parabolic of ``subset``.
    """
    total = sum(_positive_root_count(k, r) for k, r in rs.components)
    inside = sum(
        _positive_root_count(*subdiagram_type(rs, part))
        for part in connected_parts(rs, subset)
    )
    return total - inside


def ordered_subdiagram(rs: RootSystem, part) -> tuple[tuple[str, int], list[int]]:
    """Bourbaki ordering of a connected sub-diagram.

    Returns the type and the list of global indices in local Bourbaki order.
    Paths start from the endpoint with the smaller global index; D-shaped
    parts list the long arm first and the fork ends by global index.
    """
    part = sorted(part)
    pset = set(part)
    kind, k = subdiagram_type(rs, part)
    deg = {v: len(rs.neighbours[v] & pset) for v in part}
    if kind == "A":
        if k == 1:
            return ("A", 1), part
        start = min(v for v in part if deg[v] == 1)
        order = [start]
        while len(order) < k:
            nxt = [w for w in rs.neighbours[order[-1]] & pset if w not in order]
            order.append(nxt[0])
        return ("A", k), order
    branch = next(v for v in part if deg[v] == 3)
    # the long arm is the branch neighbour whose arm is longest
    arms = []
    for w in sorted(rs.neighbours[branch] & pset):
        arm = [w]
        while True:
            nxt = [u for u in rs.neighbours[arm[-1]] & pset if u != branch and u not in arm]
            if not nxt:
                break
            arm.append(nxt[0])
        arms.append(arm)
    arms.sort(key=lambda a: (-len(a), a[0]))
    long_arm, ends = arms[0], sorted(a[0] for a in arms[1:])
    return ("D", k), list(reversed(long_arm)) + [branch] + ends


def sub_root_system(rs: RootSystem, subset) -> tuple[RootSystem, list[int]]:
    """The root system generated by ``subset`` and the embedding of its indices.

    ``embedding[j]`` is the global index (in ``rs``) of local simple root ``j``.
    Components are ordered by their smallest global index.
    """
    comps, embedding = [], []
    for part in connected_parts(rs, subset):
        kind_rank, order = ordered_subdiagram(rs, part)
        comps.append(kind_rank)
        embedding.extend(order)
    return RootSystem(tuple(comps)), embedding


def _component_automorphisms(kind: str, rank: int) -> list[tuple[int, ...]]:
    ident = tuple(range(rank))
    if kind == "A":
        return [ident] if rank == 1 else [ident, tuple(reversed(ident))]
    if rank == 4:
        out = []
        for p in itertools.permutations([0, 2, 3]):
            perm = [0] * 4
            for src, dst in zip([0, 2, 3], p):
                perm[src] = dst
            perm[1] = 1
            out.append(tuple(perm))
        return sorted(out)
    swap = list(ident)
    swap[rank - 2], swap[rank - 1] = rank - 1, rank - 2
    return [ident, tuple(swap)]


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """All permutations of the simple roots preserving the Cartan matrix.

    A permutation ``p`` sends simple root ``i`` to ``p[i]``.  The identity
    comes first; the rest are sorted.
    """
    n = rs.rank
    groups: dict[tuple[str, int], list[int]] = {}
    for c, comp in enumerate(rs.components):
        groups.setdefault(comp, []).append(c)
    # choices: per isomorphism class, a permutation of its components;
    # per component, an internal automorphism
    class_perms = [list(itertools.permutations(cs)) for cs in groups.values()]
    internal = [_component_automorphisms(k, r) for k, r in rs.components]
    out = set()
    for cp in itertools.product(*class_perms):
        target = {}
        for cs, img in zip(groups.values(), cp):
            target.update(zip(cs, img))
        for auts in itertools.product(*internal):
            perm = [0] * n
            for c, (off, aut) in enumerate(zip(rs.offsets, auts)):
                toff = rs.offsets[target[c]]
                for i, j in enumerate(aut):
                    perm[off + i] = toff + j
            out.add(tuple(perm))
    ident = tuple(range(n))
    return [ident] + sorted(out - {ident})


def permute_vector(perm, v) -> WeightVector:
    out = [0] * len(v)
    for i, c in enumerate(v):
        out[perm[i]] = c
    return tuple(out)
