"""Reading and writing the text format for spherical systems.

A system file is a small YAML document::

    group: D5
    sp: []
    sigma: [a1+a2, a2+a3, a3+a4, a3+a5]
    a: []

``sigma`` entries are root expressions or coefficient lists; each entry of
``a`` is ``{name: ..., values: [...]}`` with values aligned to ``sigma``.
"""

from __future__ import annotations

import json

import yaml

from .errors import InvalidSystemError, ParseError
from .rootsys import GroupSpecError, build_group
from .system import SphericalSystem, format_vector, parse_vector, validate

FIELDS = ("group", "sp", "sigma", "a")


def _pos(node):
    m = node.start_mark
    return m.line + 1, m.column + 1


def _err(msg, node):
    line, col = _pos(node)
    return ParseError(msg, line, col)


def _scalar(node, what):
    if not isinstance(node, yaml.ScalarNode):
        raise _err(f"{what} must be a scalar", node)
    return node.value


def _seq(node, what):
    if not isinstance(node, yaml.SequenceNode):
        raise _err(f"{what} must be a list", node)
    return node.value


def _int(node, what):
    text = _scalar(node, what)
    try:
        return int(text)
    except ValueError:
        raise _err(f"{what} must be an integer, got {text!r}", node) from None


def parse_system_text(text: str, check: bool = True) -> SphericalSystem:
    """Parse a system file; with ``check`` the axioms must hold."""
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise ParseError(str(exc.problem), mark.line + 1, mark.column + 1) from None
    if root is None:
        raise ParseError("empty document", 1, 1)
    if not isinstance(root, yaml.MappingNode):
        raise _err("a system file is a mapping with keys group, sp, sigma, a", root)
    fields = {}
    for key, value in root.value:
        name = _scalar(key, "key")
        if name not in FIELDS:
            raise _err(f"unknown key {name!r}", key)
        if name in fields:
            raise _err(f"duplicate key {name!r}", key)
        fields[name] = value
    for name in ("group", "sigma"):
        if name not in fields:
            raise _err(f"missing key {name!r}", root)

    try:
        rs = build_group(_scalar(fields["group"], "group"))
    except GroupSpecError as exc:
        raise _err(str(exc), fields["group"]) from None
    n = rs.rank

    sp = set()
    if "sp" in fields:
        for item in _seq(fields["sp"], "sp"):
            try:
                sp.add(rs.index(_scalar(item, "sp entry")))
            except GroupSpecError as exc:
                raise _err(str(exc), item) from None

    sigma = []
    for item in _seq(fields["sigma"], "sigma"):
        if isinstance(item, yaml.SequenceNode):
            vec = tuple(_int(c, "coefficient") for c in item.value)
            if len(vec) != n:
                raise _err(f"root has {len(vec)} coefficients, group rank is {n}", item)
        else:
            try:
                vec = parse_vector(_scalar(item, "root"), n)
            except ValueError as exc:
                raise _err(str(exc), item) from None
        if vec in sigma:
            raise _err(f"repeated spherical root {format_vector(vec)}", item)
        sigma.append(vec)

    names, rows = [], []
    if "a" in fields:
        for item in _seq(fields["a"], "a"):
            if not isinstance(item, yaml.MappingNode):
                raise _err("each element of a is a mapping {name, values}", item)
            entry = {}
            for key, value in item.value:
                entry[_scalar(key, "key")] = value
            if set(entry) != {"name", "values"}:
                raise _err("each element of a has exactly the keys name and values", item)
            name = _scalar(entry["name"], "name")
            if name in names:
                raise _err(f"duplicate element name {name!r}", entry["name"])
            values = tuple(_int(v, "value") for v in _seq(entry["values"], "values"))
            if len(values) != len(sigma):
                raise _err(
                    f"{name} has {len(values)} values but sigma has {len(sigma)} roots",
                    entry["values"],
                )
            names.append(name)
            rows.append(values)

    sys = SphericalSystem(rs, frozenset(sp), tuple(sigma), tuple(names), tuple(rows))
    if check:
        report = validate(sys)
        if not report.ok:
            raise InvalidSystemError("not a spherical system:\n" + report.summary(), report)
    return sys


def read_system(path, check: bool = True) -> SphericalSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_system_text(fh.read(), check)


def serialize_system(sys: SphericalSystem) -> str:
    rs = sys.group
    lines = [
        f"group: {rs.spec()}",
        "sp: [" + ", ".join(rs.name(i) for i in sorted(sys.sp)) + "]",
        "sigma: [" + ", ".join(format_vector(g) for g in sys.sigma) + "]",
    ]
    if not sys.a_names:
        lines.append("a: []")
    else:
        lines.append("a:")
        for name, row in zip(sys.a_names, sys.rho):
            vals = ", ".join(str(v) for v in row)
            lines.append(f"  - {{name: {_quote(name)}, values: [{vals}]}}")
    return "\n".join(lines) + "\n"


def _quote(name: str) -> str:
    plain = all(ch.isalnum() or ch in "_+-" for ch in name) and not name[0] in "-+"
    return name if plain else json.dumps(name)


def system_to_dict(sys: SphericalSystem) -> dict:
    rs = sys.group
    return {
        "group": rs.spec(),
        "sp": [rs.name(i) for i in sorted(sys.sp)],
        "sigma": [format_vector(g) for g in sys.sigma],
        "a": [{"name": n, "values": list(r)} for n, r in zip(sys.a_names, sys.rho)],
    }
