"""Command line interface.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage errors.
"""

from __future__ import annotations

import argparse
import sys
from math import gcd

from . import atlas
from .atlas import CONVENTIONS, dumps
from .equivar import weighted_quiver
from .heis import psi, verify_heis_identities
from .invar import verify_generation
from .ncalg import blowup_presentation, certify_relations

OK, MATH_FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _algebra(args) -> str:
    if args.ideal and args.chart:
        raise UsageError("--ideal and --chart are mutually exclusive")
    if args.ideal:
        return {"xz": "B-line", "xyz": "B-origin"}[args.ideal]
    if args.chart:
        return f"chart-{args.chart}"
    return "A"


def _point(args, algebra):
    if args.point is None:
        raise UsageError("--point is required")
    parts = [p.strip() for p in args.point.split(",")]
    want = 4 if algebra == "A" else 3
    if len(parts) != want:
        raise UsageError(f"{algebra} points need {want} comma-separated scalars")
    return tuple(parts)


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _doc(body: dict) -> dict:
    out = dict(body)
    out["conventions"] = CONVENTIONS
    return out


def cmd_heis_check(args):
    n = args.n
    results = {}
    ok = True
    for k in range(1, max(n, 2)):
        if gcd(k, n) != 1:
            continue
        report = verify_heis_identities(psi(n, k))
        results[str(k)] = report
        ok = ok and all(report.values())
    if args.format == "md":
        lines = [f"| k | {' | '.join(next(iter(results.values())))} |", "|---" * (1 + len(next(iter(results.values())))) + "|"]
        for k, rep in results.items():
            lines.append(f"| {k} | " + " | ".join("ok" if v else "FAIL" for v in rep.values()) + " |")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, dumps(_doc({"n": n, "identities": results, "ok": ok})))
    return OK if ok else MATH_FAIL


def cmd_rep(args):
    algebra = _algebra(args)
    rep = atlas.build_rep(algebra, args.n, _point(args, algebra))
    from .reps import verify_rep

    ok, failed = verify_rep(rep)
    body = {"algebra": algebra, "representation": rep.to_json(), "relations_hold": ok, "failed": failed}
    if algebra == "A":
        from .reps import central_character, classify

        pt = central_character(rep)
        st = classify(pt)
        body["central_character"] = pt.as_strings()
        body["stratum"] = {"tag": st.tag, "module_type": st.module_type, "vanishing": list(st.vanishing)}
    _emit(args, dumps(_doc(body)))
    return OK if ok else MATH_FAIL


def cmd_tangent(args):
    from .tanspace import normal_space, orbit_space, tangent_space

    algebra = _algebra(args)
    rep = atlas.build_rep(algebra, args.n, _point(args, algebra))
    T = tangent_space(rep, args.trace_bound)
    O = orbit_space(rep)
    N = normal_space(rep, args.trace_bound, tangent=T)
    body = {
        "algebra": algebra,
        "label": rep.label,
        "tangent_dim": T.dim,
        "orbit_dim": O.dim,
        "normal_dim": N.dim,
        "constraints": T.constraints_applied,
        "normal_representatives": [lab for lab, _ in N.representatives],
    }
    if args.format == "md":
        _emit(args, "| tangent | orbit | normal |\n|---|---|---|\n" f"| {T.dim} | {O.dim} | {N.dim} |\n")
    else:
        _emit(args, dumps(_doc(body)))
    return OK


def cmd_quiver(args):
    from .tanspace import defect, local_quiver

    algebra = _algebra(args)
    rep = atlas.build_rep(algebra, args.n, _point(args, algebra))
    lq = local_quiver(rep, args.trace_bound)
    if args.format == "dot":
        _emit(args, lq.quiver.to_dot())
    elif args.format == "md":
        _emit(args, lq.quiver.to_markdown())
    else:
        try:
            d = defect(rep, args.trace_bound, quiver=lq.quiver)
        except ValueError:
            d = None
        _emit(args, dumps(_doc({"algebra": algebra, "kind": lq.kind, "quiver": lq.quiver.to_json(), "defect": d})))
    return OK


def cmd_stabilizer(args):
    from .equivar import stabilizer_search

    algebra = _algebra(args)
    rep = atlas.build_rep(algebra, args.n, _point(args, algebra))
    stab = stabilizer_search(rep)
    s = atlas.canonical_element(rep, stab)
    wq = weighted_quiver(rep, s, args.trace_bound)
    if args.format == "dot":
        _emit(args, wq.to_dot())
    elif args.format == "md":
        _emit(args, wq.quiver.to_markdown())
    else:
        body = {
            "algebra": algebra,
            "scope": "stabilizer within the monomial family",
            "order": len(stab),
            "elements": [str(e) for e in stab],
            "element": str(s),
            "weighted_quiver": wq.to_json(),
        }
        _emit(args, dumps(_doc(body)))
    return OK


def cmd_blowup(args):
    ideal = args.ideal or "xz"
    B = blowup_presentation(ideal, args.n)
    cert = certify_relations(B, 4)
    _emit(args, dumps(_doc({"presentation": B.to_json(), "certification": cert})))
    return OK if cert["ok"] else MATH_FAIL


def cmd_invariants(args):
    rep = verify_generation(args.n, args.degree)
    _emit(args, dumps(_doc(rep)))
    return OK if rep["ok"] else MATH_FAIL


def cmd_sweep(args):
    algebra = args.algebra or _algebra(args)
    pts = atlas.family(algebra, args.n, args.family)
    doc = atlas.sweep(algebra, args.n, pts, args.trace_bound, args.workers)
    if args.format == "md":
        _emit(args, atlas.summary_markdown(doc))
    else:
        _emit(args, dumps(doc))
    return MATH_FAIL if doc["errors"] else OK


COMMANDS = {
    "heis-check": cmd_heis_check,
    "rep": cmd_rep,
    "tangent": cmd_tangent,
    "quiver": cmd_quiver,
    "stabilizer": cmd_stabilizer,
    "blowup": cmd_blowup,
    "invariants": cmd_invariants,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qplane", description="Local structure of quantum planes at roots of unity.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--point", help="comma-separated scalars, e.g. 1,1,1,z")
        p.add_argument("--ideal", choices=("xz", "xyz"))
        p.add_argument("--chart", choices=("line", "origin"))
        p.add_argument("--trace-bound", type=int, default=None)
        p.add_argument("--format", choices=("json", "dot", "md"), default="json")
        p.add_argument("--out")
        if name == "invariants":
            p.add_argument("--degree", type=int, default=None)
        if name == "sweep":
            p.add_argument("--algebra", choices=atlas.ALGEBRAS)
            p.add_argument("--family", default="canonical")
            p.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.trace_bound is not None and args.trace_bound < 1:
        print("error: --trace-bound must be positive", file=sys.stderr)
        return USAGE
    try:
        if args.command != "heis-check":
            atlas.check_n(args.n)
        elif args.n < 1:
            raise UsageError("n must be positive")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (ArithmeticError, AssertionError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return MATH_FAIL


if __name__ == "__main__":
    sys.exit(main())
