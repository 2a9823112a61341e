"""Per-point reports: representation, tangent data, quiver, stabilizer, weights, defect, singularity type."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import gcd

from .equivar import (
    cstar_direction,
    cstar_reduce,
    cyclic_generator,
    identity_element,
    signed,
    stabilizer_search,
    StabilizerElement,
    weighted_quiver,
)
from .field import format_scalar, make_field
from .reps import (
    blowup_rep,
    center_point,
    central_character,
    classify,
    rep_from_center_point,
    section_rep,
    standard_rep,
    to_diagonal_form,
    verify_rep,
)
from .tanspace import (
    default_trace_bound,
    defect,
    is_simple,
    local_quiver,
    orbit_space,
    tangent_space,
    trep_dimension,
)

CONVENTIONS = {
    "version": "1",
    "commutator": "[a,b] = a b a^-1 b^-1, so [E1,E2] = rho I",
    "e1": "e1 x_i = x_(i-1); E1 has 1 at (i-1 mod n, i)",
    "e2": "E2 = diag(rho^i)",
    "action": "(E1^a E2^b, rho^c) sends phi(v) to rho^(c deg v) g^-1 phi(v) g",
    "weight": "s.v = rho^w v; weights stored mod n, shown in (-n/2, n/2]",
    "word_order": "generator listing order",
    "scalars": "polynomials in z = rho = exp(2 pi i / n)",
}

ALGEBRAS = ("A", "B-line", "B-origin", "chart-line", "chart-origin")
QUOTIENT_DIM = {"A": 2, "B-line": 3, "B-origin": 3}


def check_n(n: int):
    if n < 2:
        raise ValueError("n must be at least 2")
    if gcd(n, 3) != 1:
        raise ValueError(
            f"n={n} is divisible by 3: the center does not give a sheaf of Cayley-Hamilton algebras of degree n"
        )


def build_rep(algebra: str, n: int, point):
    """Representation for a report; A takes a center point (u,v,w,g), the others chart parameters."""
    if algebra == "A":
        return rep_from_center_point(center_point(n, point))
    F = make_field(n)
    params = tuple(F.parse(p) if isinstance(p, str) else F(p) for p in point)
    if len(params) != 3:
        raise ValueError(f"{algebra} points take three parameters")
    if algebra == "B-line":
        return blowup_rep("xz", n, params)
    if algebra == "B-origin":
        return blowup_rep("xyz", n, params)
    if algebra == "chart-line":
        return section_rep("line", n, params)
    if algebra == "chart-origin":
        return section_rep("origin", n, params)
    raise ValueError(f"unknown algebra {algebra!r}; choose from {', '.join(ALGEBRAS)}")


def canonical_element(rep, stab) -> StabilizerElement:
    """(e1 e2^-1, rho) when it stabilises, else a cyclic generator, else the identity."""
    n = rep.n
    pref = StabilizerElement(n, 1, -1, 1)
    if pref in stab:
        return pref
    gen = cyclic_generator(stab)
    return gen if gen is not None else identity_element(n)


def describe_singularity(algebra, kind, reduced, n) -> str:
    if kind == "isotypic":
        return "origin-type"
    if kind == "distinct":
        return "non-Azumaya"
    if reduced is None:
        return "unreduced"
    expected = QUOTIENT_DIM.get(algebra)
    if expected is not None and len(reduced) != expected:
        return f"non-smooth (reduced dimension {len(reduced)} != {expected})"
    nonzero = sorted((signed(w, n) for w in reduced if w % n), reverse=True)
    if len(nonzero) <= 1:
        return "smooth"
    if len(nonzero) == 2:
        body = f"C^2/Z_{n}" if expected == 2 else f"CxC^2/Z_{n}"
        return f"{body} ({nonzero[0]},{nonzero[1]})"
    return f"quotient singularity {tuple(nonzero)}"


@dataclass(frozen=True)
class StratumReport:
    algebra: str
    n: int
    point: tuple
    label: str
    over: tuple
    stratum: str
    module_type: str
    tangent_dim: int
    orbit_dim: int
    normal_dim: int
    quiver: dict
    quiver_kind: str
    stabilizer: tuple
    element: str
    weighted_quiver: dict | None
    weights: tuple | None
    removed_weight: int | None
    reduced_weights: tuple | None
    defect: int | None
    singularity: str
    trace_bound: int

    def to_json(self) -> dict:
        doc = asdict(self)
        doc["conventions"] = CONVENTIONS
        return doc


def _over(rep):
    """Center point of the degree-0 subalgebra x, y, z (A-coordinates)."""
    if not all(nm in rep.pres.names for nm in "xyz"):
        return ()
    return tuple(central_character(rep).as_strings())


def stratify(algebra: str, n: int, point, trace_bound: int | None = None) -> StratumReport:
    check_n(n)
    bound = default_trace_bound(n) if trace_bound is None else trace_bound
    rep = build_rep(algebra, n, point)
    ok, failed = verify_rep(rep)
    if not ok:
        raise ArithmeticError(f"relations fail: {failed}")
    over = _over(rep)
    if algebra == "A":
        st = classify(central_character(rep))
        stratum, mtype = st.tag, st.module_type
    else:
        stratum, mtype = "", ""
    if not is_simple(rep):
        rep = to_diagonal_form(rep)
    T = tangent_space(rep, bound)
    O = orbit_space(rep)
    lq = local_quiver(rep, bound)
    stab = stabilizer_search(rep)
    s = canonical_element(rep, stab)
    wq = weighted_quiver(rep, s, bound) if not s.is_identity else None
    reduction = None
    if algebra in QUOTIENT_DIM and lq.kind != "isotypic" and cstar_direction(rep):
        reduction = cstar_reduce(rep, s, bound)
    try:
        dfct = defect(rep, bound, quiver=lq.quiver)
    except ValueError:
        dfct = None
    if algebra != "A":
        stratum = "simple" if lq.kind == "simple" else "semisimple"
        mtype = lq.kind
    reduced = reduction.reduced if reduction else None
    return StratumReport(
        algebra=algebra,
        n=n,
        point=tuple(p if isinstance(p, str) else format_scalar(make_field(n)(p)) for p in point),
        label=rep.label,
        over=over,
        stratum=stratum,
        module_type=mtype,
        tangent_dim=T.dim,
        orbit_dim=O.dim,
        normal_dim=T.dim - O.dim,
        quiver=lq.quiver.to_json(),
        quiver_kind=lq.kind,
        stabilizer=tuple(str(e) for e in stab),
        element=str(s),
        weighted_quiver=wq.to_json() if wq else None,
        weights=reduction.weights if reduction else None,
        removed_weight=reduction.removed if reduction else None,
        reduced_weights=reduced,
        defect=dfct,
        singularity=describe_singularity(algebra, lq.kind, reduced, n),
        trace_bound=bound,
    )


# ---------------------------------------------------------------------------
# families and sweeps


def family(algebra: str, n: int, name: str = "canonical") -> list:
    """Named point lists (as strings) used by sweeps."""
    if name == "empty":
        return []
    if algebra == "A" and name == "canonical":
        pts = []
        for roots, j in (((1, 1, 1), 1), ((1, 1, 0), 0), ((0, 1, 0), 0), ((0, 0, 0), 0)):
            pts.append(tuple(central_character(standard_rep(n, roots, j)).as_strings()))
        return pts
    if algebra == "B-line" and name in ("canonical", "exceptional"):
        return [("1", "1", "1"), ("1", "z", "1"), ("1", "0", "1"), ("0", "1", "1")]
    if algebra == "B-origin" and name in ("canonical", "exceptional"):
        grid = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1) if (a, b, c) != (0, 0, 0)]
        grid.sort(key=lambda p: (-sum(p), p))
        return [tuple(str(v) for v in p) for p in grid]
    if algebra.startswith("chart-") and name in ("canonical", "mckay"):
        return [("1", "1", "1"), ("0", "1", "0")]
    raise ValueError(f"no family {name!r} for {algebra}")


def _run(args):
    algebra, n, point, bound = args
    try:
        return ("ok", stratify(algebra, n, point, bound).to_json())
    except (ValueError, ArithmeticError) as exc:
        return ("error", {"algebra": algebra, "n": n, "point": list(point), "error": str(exc)})


def sweep(algebra: str, n: int, points, trace_bound: int | None = None, workers: int = 1) -> dict:
    """stratify over a list of points; output order follows input order."""
    jobs = [(algebra, n, tuple(p), trace_bound) for p in points]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run, jobs))
    else:
        results = [_run(j) for j in jobs]
    reports = [r for tag, r in results if tag == "ok"]
    errors = [r for tag, r in results if tag == "error"]
    summary = {}
    for r in reports:
        key = f"{r['stratum']} / {r['singularity']}"
        summary[key] = summary.get(key, 0) + 1
    return {
        "algebra": algebra,
        "n": n,
        "trace_bound": default_trace_bound(n) if trace_bound is None else trace_bound,
        "reports": reports,
        "errors": errors,
        "summary": dict(sorted(summary.items())),
        "conventions": CONVENTIONS,
    }


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def summary_markdown(doc) -> str:
    lines = [
        f"# {doc['algebra']} at n={doc['n']}",
        "",
        "| point | stratum | tangent | orbit | normal | defect | reduced weights | singularity |",
        "|---|---|---|---|---|---|---|---|",
    ]
    for r in doc["reports"]:
        rw = "" if r["reduced_weights"] is None else ",".join(str(signed(w, r["n"])) for w in r["reduced_weights"])
        d = "" if r["defect"] is None else str(r["defect"])
        lines.append(
            f"| {', '.join(r['point'])} | {r['stratum']} | {r['tangent_dim']} | {r['orbit_dim']} | "
            f"{r['normal_dim']} | {d} | {rw} | {r['singularity']} |"
        )
    for e in doc["errors"]:
        lines.append(f"| {', '.join(e['point'])} | error: {e['error']} | | | | | | |")
    return "\n".join(lines) + "\n"
