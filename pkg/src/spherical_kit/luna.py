"""Luna diagrams drawn over the Dynkin diagram, as monospaced text or SVG.

Both renderers read the same abstract ``DiagramLayout``.  Vertices sit on an
integer grid: type A is a horizontal chain, type D is a chain ending in
``a_{n-1}`` with ``a_n`` hanging below the branch vertex.  Every simple root
outside ``S^p`` gets one circle per colour it moves; ``a`` colours use the
slot above (``delta+``) and below (``delta-``), ``a'`` colours a doubled circle
below, ``b`` colours a plain circle below.  Circles of one colour are joined
by a segment, and the remaining root kinds get a marker line under the
diagram.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SphericalKitError
from .rootsys import pairing
from .system import SphericalSystem, build_colours, format_vector

SPACING = 6
MARKERS = {"am": "~", "d3": "=", "dn": "="}


class LayoutError(SphericalKitError):
    pass


@dataclass(frozen=True)
class Circle:
    colour: str
    vertex: int
    slot: str  # "top" or "bottom"
    double: bool = False
    arrows: str = ""  # subset of "<>"


@dataclass(frozen=True)
class RootMarker:
    label: str
    kind: str
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class DiagramLayout:
    group: str
    vertices: tuple[tuple[int, int], ...]  # (column, row) per simple root
    edges: tuple[tuple[int, int], ...]
    circles: tuple[Circle, ...]
    joins: tuple[tuple[str, tuple[int, ...]], ...]
    markers: tuple[RootMarker, ...]

    def circles_at(self, i: int) -> list[Circle]:
        return [c for c in self.circles if c.vertex == i]


def _positions(rs) -> list[tuple[int, int]]:
    pos: list[tuple[int, int]] = [(0, 0)] * rs.rank
    x0 = 2
    for (kind, k), off in zip(rs.components, rs.offsets):
        if kind == "A":
            for t in range(k):
                pos[off + t] = (x0 + SPACING * t, 0)
            width = k
        else:
            for t in range(k - 1):
                pos[off + t] = (x0 + SPACING * t, 0)
            pos[off + k - 1] = (pos[off + k - 3][0] + SPACING // 2, 1)
            width = k - 1
        x0 += SPACING * width + SPACING
    return pos


def _arrows(sys: SphericalSystem, pos, i: int, values) -> str:
    rs = sys.group
    out = set()
    for j, g in enumerate(sys.sigma):
        if values[j] != -1 or pairing(rs, i, g) == 0:
            continue
        others = [pos[k][0] for k, c in enumerate(g) if c and k != i]
        if not others:
            continue
        mean = sum(others) / len(others)
        if mean < pos[i][0]:
            out.add("<")
        elif mean > pos[i][0]:
            out.add(">")
    return "".join(sorted(out))


def layout(sys: SphericalSystem) -> DiagramLayout:
    """Canonical layout of a validated system."""
    rs = sys.group
    colours = build_colours(sys)
    pos = _positions(rs)
    edges = tuple(
        (i, j) for i in range(rs.rank) for j in range(i + 1, rs.rank) if rs.cartan[i][j]
    )
    circles: list[Circle] = []
    for i in range(rs.rank):
        if i in sys.simple_in_sigma:
            ks = sys.a_of(i)
            ok = [k for k in ks if min(sys.rho[k]) >= -1]
            if not ok:
                raise LayoutError(
                    f"no colour of A({rs.name(i)}) takes values >= -1; the table is not valid"
                )
            top = ok[0]
            for k in ks:
                name, row = sys.a_names[k], sys.rho[k]
                if k == top:
                    circles.append(Circle(name, i, "top", False, _arrows(sys, pos, i, row)))
                else:
                    circles.append(Circle(name, i, "bottom"))
        else:
            for k in sorted(colours.moved_by[i]):
                c = colours.colours[k]
                circles.append(Circle(c.name, i, "bottom", c.kind == "a'"))
    owners: dict[str, list[int]] = {}
    for c in circles:
        owners.setdefault(c.colour, []).append(c.vertex)
    joins = tuple((name, tuple(vs)) for name, vs in owners.items() if len(vs) > 1)
    markers = []
    for g, root in zip(sys.sigma, sys.roots):
        if root is not None and root.kind in MARKERS:
            markers.append(RootMarker(format_vector(g), root.kind, tuple(sorted(root.support))))
    return DiagramLayout(rs.spec(), tuple(pos), edges, tuple(circles), joins, tuple(markers))


# --------------------------------------------------------------------------
# text


def _span(lay: DiagramLayout, vertices) -> tuple[int, int]:
    xs = [lay.vertices[v][0] for v in vertices]
    return min(xs), max(xs)


def render_text(lay: DiagramLayout) -> str:
    rows = 1 + max((r for _, r in lay.vertices), default=0)
    width = 2 + max((x for x, _ in lay.vertices), default=0) + 4
    grid = [[" "] * width for _ in range(3 * rows)]

    def put(line, col, text):
        for d, ch in enumerate(text):
            if 0 <= col + d < width:
                grid[line][col + d] = ch

    for (i, j) in lay.edges:
        (xi, ri), (xj, rj) = lay.vertices[i], lay.vertices[j]
        if ri == rj:
            put(3 * ri + 1, xi + 1, "-" * (xj - xi - 1))
        else:
            put(2, min(xi, xj) + SPACING // 2, "\\")
    for x, r in lay.vertices:
        put(3 * r + 1, x, "o")
    for c in lay.circles:
        x, r = lay.vertices[c.vertex]
        line = 3 * r + (0 if c.slot == "top" else 2)
        glyph = "(( ))" if c.double else "( )"
        put(line, x - len(glyph) // 2, glyph)
        if "<" in c.arrows:
            put(line, x - len(glyph) // 2 - 1, "<")
        if ">" in c.arrows:
            put(line, x + len(glyph) // 2 + 1, ">")
    # empty slot lines carry no information
    lines = [t for t in ("".join(r).rstrip() for r in grid) if t]
    for name, vs in lay.joins:
        lo, hi = _span(lay, vs)
        line = [" "] * (hi + 1)
        for d in range(lo, hi + 1):
            line[d] = "-"
        for v in vs:
            line[lay.vertices[v][0]] = "+"
        lines.append("".join(line) + "   " + name)
    for m in lay.markers:
        lo, hi = _span(lay, m.vertices)
        lines.append(" " * lo + MARKERS[m.kind] * (hi - lo + 1) + "   " + m.label)
    return f"{lay.group}\n" + "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# svg

_SX, _SY = 12, 22


def _xy(lay: DiagramLayout, v: int) -> tuple[int, int]:
    x, r = lay.vertices[v]
    return _SX * x + 12, _SY * (3 * r + 1) + 30


def render_vector(lay: DiagramLayout) -> str:
    rows = 1 + max((r for _, r in lay.vertices), default=0)
    extra = len(lay.joins) + len(lay.markers)
    width = _SX * (max((x for x, _ in lay.vertices), default=0) + 4) + 24 + 160
    height = _SY * (3 * rows + extra) + 40
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="4" y="14" font-family="monospace" font-size="12">{lay.group}</text>',
        '<g stroke="black" fill="none" stroke-width="1.5">',
    ]
    for i, j in lay.edges:
        (x1, y1), (x2, y2) = _xy(lay, i), _xy(lay, j)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    for c in lay.circles:
        x, y = _xy(lay, c.vertex)
        y += -_SY if c.slot == "top" else _SY
        out.append(f'<circle cx="{x}" cy="{y}" r="7"/>')
        if c.double:
            out.append(f'<circle cx="{x}" cy="{y}" r="4"/>')
    base = _SY * 3 * rows + 30
    for k, (name, vs) in enumerate(lay.joins):
        y = base + _SY * k
        xs = sorted(_xy(lay, v)[0] for v in vs)
        out.append(f'<line x1="{xs[0]}" y1="{y}" x2="{xs[-1]}" y2="{y}"/>')
        for x in xs:
            out.append(f'<line x1="{x}" y1="{y}" x2="{x}" y2="{y - 8}"/>')
    for k, m in enumerate(lay.markers):
        y = base + _SY * (len(lay.joins) + k)
        xs = sorted(_xy(lay, v)[0] for v in m.vertices)
        if m.kind == "am":
            pts, x, up = [], xs[0], True
            while x <= xs[-1]:
                pts.append(f"{x},{y - 3 if up else y + 3}")
                x, up = x + 4, not up
            out.append(f'<polyline points="{" ".join(pts)}"/>')
        else:
            out.append(f'<line x1="{xs[0]}" y1="{y - 2}" x2="{xs[-1]}" y2="{y - 2}"/>')
            out.append(f'<line x1="{xs[0]}" y1="{y + 2}" x2="{xs[-1]}" y2="{y + 2}"/>')
    out.append("</g>")
    out.append('<g fill="black" font-family="monospace" font-size="12">')
    for v in range(len(lay.vertices)):
        x, y = _xy(lay, v)
        out.append(f'<circle cx="{x}" cy="{y}" r="3"/>')
    for c in lay.circles:
        x, y = _xy(lay, c.vertex)
        y += -_SY if c.slot == "top" else _SY
        if "<" in c.arrows:
            out.append(f'<text x="{x - 20}" y="{y + 4}">&lt;</text>')
        if ">" in c.arrows:
            out.append(f'<text x="{x + 11}" y="{y + 4}">&gt;</text>')
    label_x = _SX * (max((x for x, _ in lay.vertices), default=0) + 4) + 24
    for k, (name, _) in enumerate(lay.joins):
        out.append(f'<text x="{label_x}" y="{base + _SY * k + 4}">{_esc(name)}</text>')
    for k, m in enumerate(lay.markers):
        y = base + _SY * (len(lay.joins) + k) + 4
        out.append(f'<text x="{label_x}" y="{y}">{_esc(m.label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
