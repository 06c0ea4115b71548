"""Command-line front end.

Exit codes: 0 success, 1 domain failure (invalid system, subset not
distinguished, parse error in the input file), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from .classify import enumerate_systems, invariants, summary_table
from .errors import SphericalKitError, UnknownColourError
from .io import parse_system_text, serialize_system, system_to_dict
from .luna import layout, render_text, render_vector
from .quotient import (
    affine_test,
    is_distinguished,
    is_rigid,
    localize,
    localize_s,
    localize_sigma,
    quotient_by,
)
from .reduction import reduce
from .rootsys import GroupSpecError, build_group
from .system import build_colours, format_vector, parse_vector, validate


class UsageError(SphericalKitError):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spherical-kit", description="Spherical systems in types A and D.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def cmd(name, help_text, with_file=True):
        sp = sub.add_parser(name, help=help_text)
        if with_file:
            sp.add_argument("file", help="system file, or - for standard input")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    cmd("validate", "check the axioms")
    cmd("colours", "list the colours and their functionals")
    for name, text in (("distinguished", "analyse a colour subset"),
                       ("quotient", "quotient by a distinguished colour subset")):
        sp = cmd(name, text)
        sp.add_argument("--colours", required=True, help="comma-separated colour names")
    sp = cmd("localize", "localize in simple roots and/or spherical roots")
    sp.add_argument("--s", dest="s_sub", help="comma-separated simple roots, e.g. a1,a2")
    sp.add_argument("--sigma", help="comma-separated spherical roots, e.g. a1+a2,a3")
    cmd("reduce", "reduce to primitive systems")
    sp = cmd("classify", "enumerate spherical systems of a group", with_file=False)
    sp.add_argument("group", help="group spec such as A3 or A1xD4")
    sp.add_argument("--max-rank", type=int)
    sp.add_argument("--min-rank", type=int, default=1)
    sp.add_argument("--cuspidal-only", action="store_true")
    sp.add_argument("--no-dedup", action="store_true", help="keep systems equal up to automorphism")
    sp.add_argument("--threads", type=int, default=1)
    sp = cmd("invariants", "dimension, rank and structural flags")
    sp.add_argument("--primitive", action="store_true", help="also decide primitivity")
    sp = cmd("render", "draw the Luna diagram")
    sp.add_argument("--format", choices=("text", "svg"), default="text")
    sp.add_argument("--out", help="output path (default: standard output)")
    cmd("affine", "test whether the variety is affine")
    cmd("rigid", "test rigidity")
    return p


def _load(path: str):
    if path == "-":
        text = _sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return text


def _names(text: str) -> list[str]:
    out = [t.strip() for t in text.split(",") if t.strip()]
    if not out:
        raise UsageError("empty list")
    return out


def _emit(args, data, human: str, out) -> None:
    if args.json:
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(human if human.endswith("\n") else human + "\n")


def _report_dict(rep, sys) -> dict:
    return {
        "subset": list(rep.subset),
        "distinguished": rep.distinguished,
        "witness": list(rep.witness),
        "sigma_of": [format_vector(sys.sigma[j]) for j in sorted(rep.sigma_of)],
        "v_dim": rep.v_dim,
        "smooth": rep.smooth,
        "parabolic": rep.parabolic,
        "star": rep.star,
    }


def _report_text(rep, sys) -> str:
    head = "{" + ", ".join(rep.subset) + "}"
    if not rep.distinguished:
        return f"{head}: not distinguished"
    sig = ", ".join(format_vector(sys.sigma[j]) for j in sorted(rep.sigma_of)) or "-"
    return "\n".join([
        f"{head}: distinguished",
        f"  witness     {' '.join(str(v) for v in rep.witness)}",
        f"  Sigma(D')   {{{sig}}}",
        f"  dim V(D')   {rep.v_dim}",
        f"  smooth      {'yes' if rep.smooth else 'no'}",
        f"  parabolic   {'yes' if rep.parabolic else 'no'}",
        f"  star        {'yes' if rep.star else 'no'}",
    ])


def _dispatch(args, out) -> int:
    if args.command == "classify":
        try:
            rs = build_group(args.group)
        except GroupSpecError as exc:
            raise UsageError(str(exc)) from None
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        found = enumerate_systems(
            rs, max_rank=args.max_rank, cuspidal_only=args.cuspidal_only,
            min_rank=args.min_rank, dedup=not args.no_dedup, threads=args.threads,
        )
        table = summary_table(found)
        lines = [f"{len(found)} systems on {rs.spec()}"]
        for k, s in enumerate(found, 1):
            sp = ",".join(rs.name(i) for i in sorted(s.sp)) or "-"
            sig = ", ".join(format_vector(g) for g in s.sigma) or "-"
            a = "; ".join(f"{n}={list(r)}" for n, r in zip(s.a_names, s.rho))
            lines.append(f"{k:4d}  S^p={{{sp}}}  Sigma={{{sig}}}" + (f"  A: {a}" if a else ""))
        data = {"group": rs.spec(), "summary": table,
                "systems": [system_to_dict(s) for s in found]}
        _emit(args, data, "\n".join(lines), out)
        return 0

    text = _load(args.file)
    if args.command == "validate":
        sys = parse_system_text(text, check=False)
        rep = validate(sys)
        data = {"ok": rep.ok, "axioms": {r.axiom: {"passed": r.passed, "failures": list(r.failures)}
                                          for r in rep.results}}
        _emit(args, data, rep.summary(), out)
        return 0 if rep.ok else 1

    sys = parse_system_text(text)
    cmd = args.command
    if cmd == "colours":
        cs = build_colours(sys)
        rs = sys.group
        head = "  ".join(format_vector(g) for g in sys.sigma)
        lines = [f"{'colour':<14}{'kind':<6}{'moved by':<12}values on {head or '-'}"]
        for c in cs:
            moved = ",".join(rs.name(i) for i in sorted(c.moved_by))
            lines.append(f"{c.name:<14}{c.kind:<6}{moved:<12}{' '.join(str(v) for v in c.values)}")
        data = [{"name": c.name, "kind": c.kind,
                 "moved_by": [rs.name(i) for i in sorted(c.moved_by)], "values": list(c.values)}
                for c in cs]
        _emit(args, data, "\n".join(lines), out)
        return 0
    if cmd in ("distinguished", "quotient"):
        cs = build_colours(sys)
        try:
            idx = cs.indices(_names(args.colours))
        except UnknownColourError as exc:
            raise UsageError(str(exc)) from None
        rep = is_distinguished(sys, idx, cs)
        if cmd == "distinguished":
            _emit(args, _report_dict(rep, sys), _report_text(rep, sys), out)
            return 0 if rep.distinguished else 1
        q = quotient_by(sys, idx, cs, rep)
        res = q.result
        rs = res.group
        sig = ", ".join(format_vector(g) for g in res.sigma) or "-"
        sp = ", ".join(rs.name(i) for i in sorted(res.sp)) or "-"
        human = "\n".join([
            _report_text(rep, sys),
            f"Sigma/D' = {{{sig}}}",
            f"S^p/D' = {{{sp}}}",
            "quotient system:",
            serialize_system(res).rstrip("\n"),
            f"validation: {q.validation.summary()}",
        ])
        data = {"report": _report_dict(rep, sys), "quotient": system_to_dict(res),
                "valid": q.validation.ok}
        _emit(args, data, human, out)
        return 0 if q.validation.ok else 1
    if cmd == "localize":
        rs = sys.group
        if not args.s_sub and not args.sigma:
            raise UsageError("localize needs --s, --sigma or both")
        try:
            s_sub = [rs.index(n) for n in _names(args.s_sub)] if args.s_sub else None
            sigma = [parse_vector(t, rs.rank) for t in _names(args.sigma)] if args.sigma else None
        except (GroupSpecError, ValueError) as exc:
            raise UsageError(str(exc)) from None
        if s_sub is not None and sigma is not None:
            res = localize(sys, s_sub, sigma)
        elif s_sub is not None:
            res = localize_s(sys, s_sub)
        else:
            res = localize_sigma(sys, sigma)
        _emit(args, system_to_dict(res), serialize_system(res), out)
        return 0
    if cmd == "reduce":
        tree = reduce(sys)
        _emit(args, tree.to_dict(), tree.outline(), out)
        return 0
    if cmd == "invariants":
        inv = invariants(sys, with_primitive=args.primitive)
        data = {"dim_GH": inv.dim_GH, "rank_Xi_H": inv.rank_Xi_H, "cuspidal": inv.cuspidal,
                "rigid": inv.rigid}
        if args.primitive:
            data["primitive"] = inv.primitive
        human = "\n".join(f"{k:<10} {v}" for k, v in data.items())
        _emit(args, data, human, out)
        return 0
    if cmd == "render":
        lay = layout(sys)
        doc = render_text(lay) if args.format == "text" else render_vector(lay)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(doc)
        else:
            out.write(doc)
        return 0
    if cmd == "affine":
        w = affine_test(sys)
        human = "affine: no" if w is None else f"affine: yes (witness {' '.join(map(str, w))})"
        _emit(args, {"affine": w is not None, "witness": None if w is None else list(w)}, human, out)
        return 0
    if cmd == "rigid":
        r = is_rigid(sys)
        _emit(args, {"rigid": r}, f"rigid: {'yes' if r else 'no'}", out)
        return 0
    raise UsageError(f"unknown command {cmd}")


def run(argv=None, out=None, err=None) -> int:
    out = _sys.stdout if out is None else out
    err = _sys.stderr if err is None else err
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _dispatch(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except SphericalKitError as exc:
        err.write(f"error: {exc}\n")
        return 1


def main() -> None:
    raise SystemExit(run())
