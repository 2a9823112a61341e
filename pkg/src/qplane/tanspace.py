"""First-order deformations of representations.

A deformation direction assigns a matrix delta_g to every generator g; the
representation ``g -> phi(g) + eps * delta_g`` over C[eps]/(eps^2) must satisfy
every relation and the trace conditions

* ``Tr(w) = 0`` for words whose exponent pattern is not central,
* ``n * w = Tr(w) * I`` for central words,

for all words of length at most the trace bound D. Variables are the entries
of the deltas, indexed ``g * rows * cols + r * cols + c``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from typing import Sequence

from .field import CycMatrix, Echelon, format_scalar
from .heis import psi
from .ncalg import is_central_exponent
from .reps import Representation, decompose_semisimple

TREP_DIM = {"A": lambda n: n * n + 2, "B[xz]": lambda n: n * n + 3, "B[xyz]": lambda n: n * n + 3}


def trep_dimension(pres, n: int) -> int:
    """Dimension of the trace-preserving representation variety (a quoted constant per algebra)."""
    try:
        return TREP_DIM[pres.name](n)
    except KeyError:
        raise ValueError(f"no trep dimension recorded for {pres.name}") from None


# ---------------------------------------------------------------------------
# linear system assembly


class _Block:
    """Delta variables of shape rows x cols for every generator."""

    def __init__(self, ngens: int, rows: int, cols: int):
        self.ngens, self.rows, self.cols = ngens, rows, cols
        self.size = ngens * rows * cols

    def var(self, g: int, r: int, c: int) -> int:
        return (g * self.rows + r) * self.cols + c

    def unvar(self, k: int):
        g, rest = divmod(k, self.rows * self.cols)
        return (g,) + divmod(rest, self.cols)


def _add(row: dict, k: int, v):
    if k in row:
        s = row[k] + v
        if s:
            row[k] = s
        else:
            del row[k]
    elif v:
        row[k] = v


def _eps_entries(word, coeff, left: Representation, right: Representation, block: _Block, acc: dict):
    """Accumulate the eps-part of coeff * word, entry (a, b) -> {var: coeff}."""
    m = len(word)
    for p in range(m):
        L = left.word(word[:p])
        if L.is_zero():
            continue
        R = right.word(word[p + 1 :])
        if R.is_zero():
            continue
        g = word[p]
        r_rows = R._rows_index()
        for (a, r), lv in L._data.items():
            lc = coeff * lv
            for c, entries in r_rows.items():
                k = block.var(g, r, c)
                for b, rv in entries:
                    _add(acc.setdefault((a, b), {}), k, lc * rv)
    return acc


def _eps_trace(word, left: Representation, block: _Block) -> dict:
    """Linear form Delta -> Tr(eps-part of word) for a square block."""
    row = {}
    m = len(word)
    for p in range(m):
        L = left.word(word[:p])
        if L.is_zero():
            continue
        R = left.word(word[p + 1 :])
        if R.is_zero():
            continue
        RL = R * L
        g = word[p]
        for (c, r), v in RL._data.items():
            _add(row, block.var(g, r, c), v)
    return row


def _relation_rows(pres, left, right, block):
    rows = []
    for rel in pres.relations:
        acc = {}
        for w, c in rel.terms.items():
            _eps_entries(w, c, left, right, block, acc)
        rows.extend(r for r in acc.values() if r)
    return rows


def trace_words(pres, bound: int, words: str = "monomials"):
    """Words used for trace conditions: sorted monomials (default) or all words."""
    m = len(pres.generators)
    if words == "all":
        for length in range(1, bound + 1):
            yield from product(range(m), repeat=length)
        return
    if words != "monomials":
        raise ValueError("words must be 'monomials' or 'all'")
    for exps in _exponent_vectors(m, bound):
        if any(exps):
            yield tuple(i for i, e in enumerate(exps) for _ in range(e))


@lru_cache(maxsize=None)
def _exponent_vectors(m: int, bound: int) -> tuple:
    """All length-m exponent vectors with total at most bound."""
    if m == 0:
        return ((),)
    return tuple((e,) + rest for e in range(bound + 1) for rest in _exponent_vectors(m - 1, bound - e))


def _exponents(word, m):
    e = [0] * m
    for g in word:
        e[g] += 1
    return tuple(e)


def _word_is_dead(word, zero_gens):
    return sum(1 for g in word if g in zero_gens) >= 2


def _trace_rows(rep_left, rep_right, block, bound, words, *, square: bool):
    """Trace-condition rows. For non-square (mixed) blocks only central words contribute."""
    pres = rep_left.pres
    m = len(pres.generators)
    zero = {g for g in range(m) if rep_left.images[g].is_zero() and rep_right.images[g].is_zero()}
    n = pres.n
    rows = []
    for word in trace_words(pres, bound, words):
        if _word_is_dead(word, zero):
            continue
        central = is_central_exponent(pres, _exponents(word, m))
        if central:
            acc = _eps_entries(word, pres.field.one, rep_left, rep_right, block, {})
            if square:
                tr = {}
                for a in range(block.rows):
                    for k, v in acc.get((a, a), {}).items():
                        _add(tr, k, v)
                for (a, b), r in acc.items():
                    row = {k: v * n for k, v in r.items()}
                    if a == b:
                        for k, v in tr.items():
                            _add(row, k, -v)
                    if row:
                        rows.append(row)
                for a in range(block.rows):
                    if (a, a) not in acc and tr:
                        rows.append({k: -v for k, v in tr.items()})
            else:
                rows.extend(r for r in acc.values() if r)
        elif square:
            row = _eps_trace(word, rep_left, block)
            if row:
                rows.append(row)
    return rows


def base_trace_defects(rep: Representation, bound: int) -> list:
    """Words (as exponent vectors) where the base point itself violates the trace conditions."""
    pres = rep.pres
    m = len(pres.generators)
    bad = []
    for word in trace_words(pres, bound):
        img = rep.word(word)
        if is_central_exponent(pres, _exponents(word, m)):
            if img.scalar_value() is None:
                bad.append(_exponents(word, m))
        elif img.trace():
            bad.append(_exponents(word, m))
    return bad


# ---------------------------------------------------------------------------
# tangent, orbit, normal


@dataclass(frozen=True, eq=False)
class TangentVector:
    pres: object
    deltas: tuple

    def __getitem__(self, name: str) -> CycMatrix:
        return self.deltas[self.pres.index(name)]

    def to_json(self):
        return {
            nm: [[format_scalar(v) for v in row] for row in d.to_rows()]
            for nm, d in zip(self.pres.names, self.deltas)
        }


def vector_to_tangent(vec: dict, rep: Representation, block: _Block) -> TangentVector:
    F = rep.field
    data = [dict() for _ in range(block.ngens)]
    for k, v in vec.items():
        g, r, c = block.unvar(k)
        data[g][(r, c)] = v
    return TangentVector(rep.pres, tuple(CycMatrix(F, block.rows, block.cols, d) for d in data))


def tangent_to_vector(tv: TangentVector, block: _Block) -> dict:
    vec = {}
    for g, d in enumerate(tv.deltas):
        for (r, c), v in d._data.items():
            vec[block.var(g, r, c)] = v
    return vec


@dataclass(eq=False)
class TangentSpace:
    rep: Representation
    trace_bound: int
    words: str
    block: _Block
    equations: Echelon
    basis: list
    span: Echelon
    n_relation_rows: int
    n_trace_rows: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, vec: dict) -> bool:
        return self.span.contains(vec)

    def satisfies_equations(self, vec: dict) -> bool:
        """Direct check against the assembled equations (independent of the kernel basis)."""
        from .field import dot

        F = self.rep.field
        return all(not dot(row, vec, F) for row in self.equations.pivots.values())

    def vectors(self):
        return [vector_to_tangent(v, self.rep, self.block) for v in self.basis]

    @property
    def constraints_applied(self) -> dict:
        return {
            "relations": len(self.rep.pres.relations),
            "relation_rows": self.n_relation_rows,
            "trace_rows": self.n_trace_rows,
            "trace_bound": self.trace_bound,
            "words": self.words,
        }


def default_trace_bound(n: int) -> int:
    return n + 2


def equation_rows(rep: Representation, trace_bound: int | None = None, words: str = "monomials", *, traced=True):
    block = _Block(len(rep.pres.generators), rep.dim, rep.dim)
    bound = default_trace_bound(rep.n) if trace_bound is None else trace_bound
    rel = _relation_rows(rep.pres, rep, rep, block)
    tr = _trace_rows(rep, rep, block, bound, words, square=True) if traced else []
    return block, rel, tr


def tangent_space(rep: Representation, trace_bound: int | None = None, words: str = "monomials", *, traced=True) -> TangentSpace:
    bound = default_trace_bound(rep.n) if trace_bound is None else trace_bound
    if bound < 1:
        raise ValueError("trace bound must be at least 1")
    block, rel, tr = equation_rows(rep, bound, words, traced=traced)
    ech = Echelon(rep.field, block.size)
    for r in rel:
        ech.add(r)
    for r in tr:
        ech.add(r)
    basis = ech.kernel()
    span = Echelon(rep.field, block.size)
    for v in basis:
        span.add(v)
    return TangentSpace(rep, bound, words, block, ech, basis, span, len(rel), len(tr))


def _coboundary(T: CycMatrix, left: Representation, right: Representation, block: _Block) -> dict:
    """g -> phi_left(g) T - T phi_right(g)."""
    vec = {}
    for g in range(block.ngens):
        D = left.images[g] * T - T * right.images[g]
        for (r, c), v in D._data.items():
            vec[block.var(g, r, c)] = v
    return vec


@dataclass(eq=False)
class OrbitSpace:
    rep: Representation
    span: Echelon
    vectors: list

    @property
    def dim(self) -> int:
        return self.span.rank

    @property
    def commutant_dim(self) -> int:
        return self.rep.dim ** 2 - self.dim


def orbit_space(rep: Representation) -> OrbitSpace:
    F = rep.field
    d = rep.dim
    block = _Block(len(rep.pres.generators), d, d)
    span = Echelon(F, block.size)
    vectors = []
    for r, c in product(range(d), repeat=2):
        v = _coboundary(CycMatrix.matrix_unit(F, d, r, c), rep, rep, block)
        if span.add(v):
            vectors.append(v)
    return OrbitSpace(rep, span, vectors)


def is_simple(rep: Representation) -> bool:
    """Scalar joint commutant (Schur), which for these algebras characterises simplicity."""
    return orbit_space(rep).commutant_dim == 1


def preferred_directions(rep: Representation) -> list:
    """Candidate normal representatives: one generator moved along its Heisenberg block."""
    F = rep.field
    out = []
    blocks = {}
    if rep.dim == rep.n:
        h = psi(rep.n, 1)
        blocks = {"x": h.E1, "y": h.E2, "z": h.z_block, "u": h.E1, "v": h.E2}
    for g, nm in enumerate(rep.pres.names):
        img = rep.images[g]
        base = blocks.get(nm.lower()) if img.is_zero() else img
        if base is None:
            continue
        deltas = [CycMatrix.zeros(F, rep.dim) for _ in rep.pres.names]
        deltas[g] = base
        out.append((nm, TangentVector(rep.pres, tuple(deltas))))
    return out


@dataclass(eq=False)
class NormalSpace:
    tangent: TangentSpace
    orbit: OrbitSpace
    representatives: list  # (label, vector dict)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def vectors(self):
        return [(lab, vector_to_tangent(v, self.tangent.rep, self.tangent.block)) for lab, v in self.representatives]


def normal_space(rep: Representation, trace_bound: int | None = None, *, tangent: TangentSpace | None = None) -> NormalSpace:
    T = tangent or tangent_space(rep, trace_bound)
    O = orbit_space(rep)
    for v in O.vectors:
        if not T.contains(v):
            raise AssertionError("orbit direction outside the tangent space: inconsistent constraints")
    acc = Echelon(rep.field, T.block.size)
    for v in O.vectors:
        acc.add(v)
    reps = []
    for nm, tv in preferred_directions(rep):
        v = tangent_to_vector(tv, T.block)
        if T.contains(v) and acc.add(v):
            reps.append((f"delta_{nm}", v))
    for i, v in enumerate(T.basis):
        if acc.add(v):
            reps.append((f"basis_{i}", v))
    if len(reps) != T.dim - O.dim:
        raise AssertionError("normal complement has the wrong dimension")
    return NormalSpace(T, O, reps)


# ---------------------------------------------------------------------------
# Ext between representations


@dataclass(eq=False)
class ExtSpace:
    source: Representation
    target: Representation
    block: _Block
    cocycles: list
    coboundaries: Echelon
    representatives: list

    @property
    def dim(self) -> int:
        return len(self.representatives)


def ext_space(
    si: Representation,
    sj: Representation,
    trace_bound: int | None = None,
    *,
    traced: bool = True,
    restrict: str | None = None,
) -> ExtSpace:
    """Extensions from si to sj: deltas of shape dim sj x dim si.

    ``restrict="diagonal"`` keeps only diagonal delta entries (si must equal
    sj); at a diagonal representation these decouple from the rest of the
    system and give the trace-coupled self-extensions of the summands.
    """
    F = si.field
    bound = default_trace_bound(si.n) if trace_bound is None else trace_bound
    block = _Block(len(si.pres.generators), sj.dim, si.dim)
    same = si is sj
    rows = _relation_rows(si.pres, sj, si, block)
    if traced:
        rows += _trace_rows(sj, si, block, bound, "monomials", square=same)
    if restrict == "diagonal":
        if not same:
            raise ValueError("diagonal restriction needs si is sj")
        keep = {block.var(g, r, r) for g in range(block.ngens) for r in range(block.rows)}
        rows = [{k: v for k, v in r.items() if k in keep} for r in rows]
        extra = [{k: F.one} for k in range(block.size) if k not in keep]
        rows += extra
    elif restrict is not None:
        raise ValueError("restrict must be None or 'diagonal'")
    ech = Echelon(F, block.size)
    for r in rows:
        ech.add(r)
    cocycles = ech.kernel()
    cob = Echelon(F, block.size)
    if restrict is None:
        for r, c in product(range(sj.dim), range(si.dim)):
            T = CycMatrix(F, sj.dim, si.dim, {(r, c): F.one})
            cob.add(_coboundary(T, sj, si, block))
    acc = Echelon(F, block.size)
    for v in cob.pivots.values():
        acc.add(v)
    reps = [v for v in cocycles if acc.add(v)]
    return ExtSpace(si, sj, block, cocycles, cob, reps)


# ---------------------------------------------------------------------------
# quivers


@dataclass(frozen=True)
class Arrow:
    src: int
    dst: int
    count: int
    marked: int = 0
    weight: int | None = None
    label: str = ""


@dataclass(frozen=True)
class QuiverSetting:
    vertices: tuple  # (label, dim)
    arrows: tuple
    twist: tuple | None = None
    meta: tuple = ()

    def __post_init__(self):
        nv = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.src < nv and 0 <= a.dst < nv):
                raise ValueError(f"arrow endpoint outside 0..{nv - 1}")
            if not 0 <= a.marked <= a.count:
                raise ValueError("marked count exceeds arrow count")

    @property
    def dims(self):
        return tuple(d for _, d in self.vertices)

    def total_arrows(self) -> int:
        return sum(a.count for a in self.arrows)

    def loops(self) -> int:
        return sum(a.count for a in self.arrows if a.src == a.dst)

    def marked(self) -> int:
        return sum(a.marked for a in self.arrows)

    def arrow_counts(self) -> dict:
        out = {}
        for a in self.arrows:
            out[(a.src, a.dst)] = out.get((a.src, a.dst), 0) + a.count
        return out

    def ext_dimension(self) -> int:
        """Sum of count * e_src * e_dst minus one per marked arrow."""
        d = self.dims
        return sum(a.count * d[a.src] * d[a.dst] for a in self.arrows) - self.marked()

    def to_json(self) -> dict:
        return {
            "vertices": [{"label": lab, "dim": d} for lab, d in self.vertices],
            "arrows": [
                {
                    "src": a.src,
                    "dst": a.dst,
                    "count": a.count,
                    "marked": a.marked,
                    "weight": a.weight,
                    "label": a.label,
                }
                for a in self.arrows
            ],
            "twist": list(self.twist) if self.twist is not None else None,
            "meta": {k: v for k, v in self.meta},
        }

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for i, (lab, d) in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{d}", tooltip={json.dumps(lab)}];')
        for a in self.arrows:
            tags = []
            if a.marked:
                tags.append("•" * a.marked)
            if a.weight is not None:
                tags.append(f"[{a.weight}]")
            mult = f"x{a.count} " if a.count > 1 else ""
            lab = (mult + " ".join(tags)).strip()
            lines.append(f'  v{a.src} -> v{a.dst} [label="{lab}"];')
        if self.twist is not None:
            lines.append(f'  // twist: {" ".join(str(t) for t in self.twist)}')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        out = ["| src | dst | count | marked | weight |", "|---|---|---|---|---|"]
        for a in self.arrows:
            w = "" if a.weight is None else str(a.weight)
            out.append(f"| {a.src} | {a.dst} | {a.count} | {a.marked} | {w} |")
        head = "vertices: " + ", ".join(f"{lab} (dim {d})" for lab, d in self.vertices)
        if self.twist is not None:
            head += f"; twist {list(self.twist)}"
        return head + "\n\n" + "\n".join(out) + "\n"


@dataclass(eq=False)
class LocalQuiver:
    quiver: QuiverSetting
    summands: list  # (summand rep, multiplicity, positions)
    kind: str  # "simple", "isotypic", "distinct"
    ext: dict  # (i, j) -> ExtSpace


def local_quiver(rep: Representation, trace_bound: int | None = None) -> LocalQuiver:
    """Local quiver at a semisimple point, assembled from Ext computations.

    Three shapes are handled: a simple representation (one vertex), one
    1-dimensional summand with multiplicity dim, and pairwise distinct
    1-dimensional summands. In the last case the trace-coupled loops are
    attached to the first vertex.
    """
    bound = default_trace_bound(rep.n) if trace_bound is None else trace_bound
    if is_simple(rep):
        e = ext_space(rep, rep, bound)
        q = QuiverSetting(((rep.label or "S", 1),), (Arrow(0, 0, e.dim, 0, label="loop"),) if e.dim else ())
        return LocalQuiver(q, [(rep, 1, tuple(range(rep.dim)))], "simple", {(0, 0): e})
    parts = decompose_semisimple(rep)
    if len(parts) == 1:
        summand, mult, pos = parts[0]
        loose = ext_space(summand, summand, bound, traced=False)
        T = tangent_space(rep, bound)
        loops = loose.dim
        marked = loops * mult * mult - T.dim
        if not 0 <= marked <= loops:
            raise ArithmeticError("trace conditions do not fit the loop count")
        q = QuiverSetting(((summand.label, mult),), (Arrow(0, 0, loops, marked, label="loop"),) if loops else ())
        return LocalQuiver(q, parts, "isotypic", {(0, 0): loose})
    if any(m != 1 for _, m, _ in parts):
        raise ValueError("mixed multiplicities are not supported")
    arrows = []
    exts = {}
    for i, (si, _, _) in enumerate(parts):
        for j, (sj, _, _) in enumerate(parts):
            if i == j:
                continue
            e = ext_space(si, sj, bound)
            exts[(i, j)] = e
            if e.dim:
                arrows.append(Arrow(i, j, e.dim, 0))
    diag = ext_space(rep, rep, bound, restrict="diagonal")
    exts["diagonal"] = diag
    if diag.dim:
        arrows.append(Arrow(0, 0, diag.dim, 0, label="loop"))
    vertices = tuple((s.label, 1) for s, _, _ in parts)
    q = QuiverSetting(vertices, tuple(sorted(arrows, key=lambda a: (a.src != a.dst, a.src, a.dst))))
    return LocalQuiver(q, parts, "distinct", exts)


def defect(rep: Representation, trace_bound: int | None = None, *, quiver: QuiverSetting | None = None) -> int:
    """dim Ext_tr + (n^2 - sum e_i^2) - dim trep."""
    q = quiver or local_quiver(rep, trace_bound).quiver
    n = rep.dim
    return q.ext_dimension() + (n * n - sum(e * e for e in q.dims)) - trep_dimension(rep.pres, n)
