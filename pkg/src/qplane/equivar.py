"""PGL_n x C* symmetry of representations, restricted to the monomial family.

An element (a, b, c) stands for g = E1^a E2^b in PGL_n and lambda = rho^c in
C*. It acts by ``phi(v) -> lambda^deg(v) g^-1 phi(v) g``, and a vector v with
``s.v = rho^w v`` has weight w (stored mod n).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import product

from .field import CycMatrix, Echelon
from .heis import psi
from .reps import Representation
from .tanspace import (
    Arrow,
    NormalSpace,
    QuiverSetting,
    local_quiver,
    normal_space,
    tangent_space,
    tangent_to_vector,
    TangentVector,
    _Block,
)


@dataclass(frozen=True, order=True)
class StabilizerElement:
    n: int
    a: int
    b: int
    c: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "b", self.b % self.n)
        object.__setattr__(self, "c", self.c % self.n)

    @property
    def matrix(self) -> CycMatrix:
        h = psi(self.n, 1)
        return h.word(self.a, self.b)

    def compose(self, other: "StabilizerElement") -> "StabilizerElement":
        """act(self.compose(other)) = act(self) after act(other), up to scalars."""
        return StabilizerElement(self.n, self.a + other.a, self.b + other.b, self.c + other.c)

    def inverse(self) -> "StabilizerElement":
        return StabilizerElement(self.n, -self.a, -self.b, -self.c)

    def power(self, k: int) -> "StabilizerElement":
        return StabilizerElement(self.n, k * self.a, k * self.b, k * self.c)

    @property
    def is_identity(self) -> bool:
        return self.a == self.b == self.c == 0

    def order(self) -> int:
        k = 1
        while not self.power(k).is_identity:
            k += 1
        return k

    def __str__(self):
        return f"(e1^{self.a} e2^{self.b}, rho^{self.c})"


def identity_element(n: int) -> StabilizerElement:
    return StabilizerElement(n, 0, 0, 0)


def signed(w: int, n: int) -> int:
    """Representative of w mod n in (-n/2, n/2]."""
    w %= n
    return w - n if w > n // 2 else w


def _grading(rep: Representation, grading):
    if grading is None:
        return rep.grading
    if grading == "polynomial":
        return tuple(g.degree for g in rep.pres.generators)
    return tuple(grading)


def act(s: StabilizerElement, rep: Representation, grading=None) -> Representation:
    if rep.dim != s.n:
        raise ValueError("the monomial family acts on n-dimensional representations")
    F = rep.field
    G = s.matrix
    Gi = G.inverse()
    degs = _grading(rep, grading)
    images = [(Gi * m * G).scale(F.rho(s.c * d)) for m, d in zip(rep.images, degs)]
    return rep.with_images(images)


def fixes(s: StabilizerElement, rep: Representation, grading=None) -> bool:
    return act(s, rep, grading).images == rep.images


def stabilizer_search(rep: Representation, grading=None) -> list:
    """All (a, b, c) in Z_n^3 fixing rep exactly, sorted."""
    n = rep.n
    found = [
        StabilizerElement(n, a, b, c) for a, b, c in product(range(n), repeat=3) if fixes(StabilizerElement(n, a, b, c), rep, grading)
    ]
    group = set(found)
    for s in found:
        if s.inverse() not in group or any(s.compose(t) not in group for t in found):
            raise ArithmeticError("stabilizer search returned a non-closed set")
    return found


def cyclic_generator(elements) -> StabilizerElement | None:
    """An element generating the whole list, or None when the group is not cyclic."""
    elements = list(elements)
    order = len(elements)
    for s in sorted(elements, key=lambda e: (e.is_identity, e.a, e.b, e.c)):
        if s.order() == order:
            return s
    return None


# ---------------------------------------------------------------------------
# action on tangent data


def act_on_vector(s: StabilizerElement, vec: dict, rep: Representation, block, grading=None) -> dict:
    F = rep.field
    G = s.matrix
    Gi = G.inverse()
    degs = _grading(rep, grading)
    tv_data = [dict() for _ in range(block.ngens)]
    for k, v in vec.items():
        g, r, c = block.unvar(k)
        tv_data[g][(r, c)] = v
    out = {}
    for g, d in enumerate(tv_data):
        if not d:
            continue
        M = Gi * CycMatrix(F, block.rows, block.cols, d) * G
        scale = F.rho(s.c * degs[g])
        for (r, c), v in M._data.items():
            out[block.var(g, r, c)] = v * scale
    return out


def action_matrix(s: StabilizerElement, N: NormalSpace, grading=None) -> list:
    """Matrix (list of columns) of s on the normal space, in the representative basis."""
    rep = N.tangent.rep
    block = N.tangent.block
    reps = [v for _, v in N.representatives]
    modulo = list(N.orbit.vectors)
    return _matrix_of(lambda v: act_on_vector(s, v, rep, block, grading), reps, modulo, rep.field, block.size)


def _matrix_of(op, basis, modulo, field, ncols):
    """Columns: coordinates of op(b) for b in basis, modulo span(modulo)."""
    k = len(basis)
    rows = _eliminate_data(_tag(modulo + basis, ncols, field), ncols, field)
    cols = []
    for b in basis:
        target = op(b)
        cols.append(_express(target, rows, ncols, len(modulo), k, field))
    return cols


def _eliminate_data(tagged, ncols, field):
    """Gauss-Jordan on data columns only; returns {pivot: row} with tag columns carried along."""
    pivots = {}
    for row in tagged:
        row = dict(row)
        for col in [c for c in row if c < ncols and c in pivots]:
            c = row.get(col)
            if c:
                _sub(row, c, pivots[col])
        data = [c for c in row if c < ncols]
        if not data:
            raise ArithmeticError("basis vectors are dependent modulo the given span")
        col = min(data)
        inv = row[col].inverse()
        row = {c: v * inv for c, v in row.items()}
        for p, prow in pivots.items():
            c = prow.get(col)
            if c:
                _sub(prow, c, row)
        pivots[col] = row
    return pivots


def _sub(row, c, other):
    for k, v in other.items():
        nv = row.get(k, None)
        nv = (nv - c * v) if nv is not None else -(c * v)
        if nv:
            row[k] = nv
        else:
            row.pop(k, None)


def _express(target, pivots, ncols, nmod, k, field):
    row = dict(target)
    tags = {}
    for col in sorted(c for c in list(row) if c in pivots):
        c = row.get(col)
        if not c:
            continue
        for kk, v in pivots[col].items():
            if kk < ncols:
                nv = row.get(kk)
                nv = (nv - c * v) if nv is not None else -(c * v)
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
            else:
                tags[kk] = tags.get(kk, field.zero) + c * v
    if any(c < ncols for c in row):
        raise ArithmeticError("image leaves the span: the element does not stabilise the point")
    return [tags.get(ncols + nmod + i, field.zero) for i in range(k)]


def _mat_mul(A, B, field):
    """Column-list matrices: (A B)[:, j] = A @ B[:, j]."""
    k = len(A)
    out = []
    for col in B:
        out.append([sum((A[i][r] * col[i] for i in range(k)), field.zero) for r in range(k)])
    return out


def eigen_split(M: list, n: int, field) -> dict:
    """{w: basis of the rho^w eigenspace} for a matrix of order dividing n.

    Uses the projectors P_w = (1/n) sum_t rho^(-w t) M^t.
    """
    k = len(M)
    if k == 0:
        return {}
    ident = [[field.one if r == c else field.zero for r in range(k)] for c in range(k)]
    powers = [ident]
    for _ in range(1, n):
        powers.append(_mat_mul(M, powers[-1], field))
    if _mat_mul(M, powers[-1], field) != ident:
        raise ArithmeticError("action does not have order dividing n")
    inv_n = field(1) / n
    spaces = {}
    total = 0
    for w in range(n):
        P = [[field.zero] * k for _ in range(k)]
        for t in range(n):
            coef = field.rho(-w * t) * inv_n
            for c in range(k):
                for r in range(k):
                    v = powers[t][c][r]
                    if v:
                        P[c][r] = P[c][r] + coef * v
        ech = Echelon(field, k)
        basis = []
        for col in P:
            vec = {r: v for r, v in enumerate(col) if v}
            if vec and ech.add(vec):
                basis.append(vec)
        if basis:
            spaces[w] = basis
            total += len(basis)
    if total != k:
        raise ArithmeticError("action is not diagonalisable over powers of rho")
    return spaces


@dataclass(frozen=True)
class WeightedDirection:
    weight: int
    support: tuple  # generator names carrying the eigenvector
    vector: dict


def weight_decomposition(s: StabilizerElement, N: NormalSpace, grading=None) -> list:
    """Weights (mod n) of s on the normal space, one per dimension, with their eigenvectors."""
    rep = N.tangent.rep
    F = rep.field
    M = action_matrix(s, N, grading)
    spaces = eigen_split(M, rep.n, F)
    reps = [v for _, v in N.representatives]
    block = N.tangent.block
    out = []
    for w in sorted(spaces):
        for coeffs in spaces[w]:
            vec = {}
            for i, c in coeffs.items():
                for kk, v in reps[i].items():
                    nv = vec.get(kk, F.zero) + c * v
                    if nv:
                        vec[kk] = nv
                    else:
                        vec.pop(kk, None)
            gens = sorted({block.unvar(kk)[0] for kk in vec})
            out.append(WeightedDirection(w, tuple(rep.pres.names[g] for g in gens), vec))
    return out


def weights_only(directions) -> list:
    return sorted(d.weight for d in directions)


# ---------------------------------------------------------------------------
# weighted quivers


@dataclass(frozen=True)
class WeightedQuiver:
    quiver: QuiverSetting
    element: StabilizerElement

    def to_json(self):
        doc = self.quiver.to_json()
        doc["stabilizer"] = {"a": self.element.a, "b": self.element.b, "c": self.element.c, "text": str(self.element)}
        return doc

    def to_dot(self):
        return self.quiver.to_dot()


def _entry_factor(s: StabilizerElement, deg: int, r: int, c: int) -> int:
    """Exponent e with g^-1 E_rc g * lambda^deg = rho^e E_(r+a, c+a)."""
    return (s.c * deg + s.b * (c - r)) % s.n


def vertex_twist(s: StabilizerElement, positions: list) -> tuple:
    """Permutation of summands induced by g = E1^a E2^b (summand at i moves to i + a)."""
    where = {}
    for idx, pos in enumerate(positions):
        for p in pos:
            where[p] = idx
    perm = []
    for pos in positions:
        targets = {where[(p + s.a) % s.n] for p in pos}
        if len(targets) != 1:
            raise ArithmeticError("element does not permute the summands")
        perm.append(targets.pop())
    return tuple(perm)


def weighted_quiver(rep: Representation, s: StabilizerElement, trace_bound=None, grading=None) -> WeightedQuiver:
    """Local quiver with weights of s; a vertex twist is recorded when s permutes summands."""
    if not fixes(s, rep, grading):
        raise ValueError(f"{s} does not stabilise the representation")
    lq = local_quiver(rep, trace_bound)
    degs = _grading(rep, grading)
    n = rep.n
    if lq.kind == "simple":
        N = normal_space(rep, trace_bound)
        ws = weights_only(weight_decomposition(s, N, grading))
        arrows = _group_weights(0, 0, ws, 0)
        q = replace(lq.quiver, arrows=tuple(arrows))
        return WeightedQuiver(q, s)
    if lq.kind == "isotypic":
        arrows = [replace(a, weight=None) for a in lq.quiver.arrows]
        ws = sorted((s.c * d) % n for d in degs)
        # each loop is the space of one generator's deltas, scaled by lambda^deg
        loop = lq.ext[(0, 0)]
        loop_ws = []
        for vec in loop.representatives:
            gens = {loop.block.unvar(k)[0] for k in vec}
            wset = {(s.c * degs[g]) % n for g in gens}
            loop_ws.append(wset.pop() if len(wset) == 1 else None)
        marked = lq.quiver.marked()
        arrows = []
        for w in sorted(set(loop_ws), key=lambda x: (x is None, x)):
            cnt = loop_ws.count(w)
            m = min(marked, cnt)
            marked -= m
            arrows.append(Arrow(0, 0, cnt, m, w, "loop"))
        q = replace(lq.quiver, arrows=tuple(arrows))
        return WeightedQuiver(q, s)
    positions = [pos for _, _, pos in lq.summands]
    twist = vertex_twist(s, positions)
    arrows = []
    for (i, j), e in sorted((k, v) for k, v in lq.ext.items() if k != "diagonal"):
        if not e.dim:
            continue
        pi, pj = positions[i][0], positions[j][0]
        ws = []
        for vec in e.representatives:
            wset = {_entry_factor(s, degs[e.block.unvar(k)[0]], pj, pi) for k in vec}
            if len(wset) != 1:
                raise ArithmeticError("arrow representative mixes weights")
            ws.append(wset.pop())
        arrows += _group_weights(i, j, ws, 0)
    diag = lq.ext["diagonal"]
    loop_ws = []
    for vec in diag.representatives:
        wset = {_entry_factor(s, degs[diag.block.unvar(k)[0]], 0, 0) for k in vec}
        loop_ws.append(wset.pop() if len(wset) == 1 else None)
    if loop_ws:
        arrows += _group_weights(0, 0, loop_ws, 0, label="loop")
    q = QuiverSetting(lq.quiver.vertices, tuple(arrows), twist if any(t != k for k, t in enumerate(twist)) else None)
    return WeightedQuiver(q, s)


def _group_weights(src, dst, ws, marked, label=""):
    out = []
    for w in sorted(set(ws), key=lambda x: (x is None, x)):
        out.append(Arrow(src, dst, ws.count(w), 0, w, label))
    return out


# ---------------------------------------------------------------------------
# C* reduction


def cstar_direction(rep: Representation, grading=None) -> dict:
    """Infinitesimal C*-action: delta_g = deg(g) phi(g)."""
    F = rep.field
    degs = _grading(rep, grading)
    deltas = tuple(m.scale(F(d)) for m, d in zip(rep.images, degs))
    block = _Block(len(rep.pres.generators), rep.dim, rep.dim)
    return tangent_to_vector(TangentVector(rep.pres, deltas), block)


@dataclass(frozen=True)
class Reduction:
    weights: tuple  # weights before reduction (mod n)
    removed: int | None
    reduced: tuple  # weights after removing the C* direction
    quiver: WeightedQuiver

    def signed(self) -> tuple:
        n = self.quiver.element.n
        return tuple(sorted(signed(w, n) for w in self.reduced))


def _arrow_weights(q: QuiverSetting) -> list:
    out = []
    for a in q.arrows:
        out += [a.weight] * a.count
    return sorted(out, key=lambda w: (w is None, w))


def _drop_loop(q: QuiverSetting, weight) -> QuiverSetting:
    arrows = list(q.arrows)
    for i, a in enumerate(arrows):
        if a.src == a.dst and a.weight == weight:
            if a.count == 1:
                del arrows[i]
            else:
                arrows[i] = replace(a, count=a.count - 1, marked=min(a.marked, a.count - 1))
            return replace(q, arrows=tuple(arrows))
    raise ArithmeticError(f"no loop of weight {weight} to remove")


def cstar_reduce(rep: Representation, s: StabilizerElement, trace_bound=None, grading=None) -> Reduction:
    """Remove the infinitesimal C*-orbit direction (delta_g = deg(g) phi(g)).

    At a simple point the direction is located in the weighted normal space.
    At a diagonal semisimple point it lies in the trace-coupled loops and one
    loop of its (twisted) weight is removed.
    """
    wq = weighted_quiver(rep, s, trace_bound, grading)
    before = tuple(_arrow_weights(wq.quiver))
    v = cstar_direction(rep, grading)
    if not v:
        raise ArithmeticError("C* direction vanishes: the point is not semistable")
    T = tangent_space(rep, trace_bound)
    if not T.contains(v):
        raise ArithmeticError("C* direction is not a tangent vector")
    N = normal_space(rep, trace_bound, tangent=T)
    block = T.block
    F = rep.field
    n = rep.n
    reps = [u for _, u in N.representatives]
    modulo = list(N.orbit.vectors)
    pivots = _eliminate_data(_tag(modulo + reps, block.size, F), block.size, F)
    coords = _express(v, pivots, block.size, len(modulo), len(reps), F)
    if not any(coords):
        raise ArithmeticError("C* direction lies in the orbit")
    if wq.quiver.twist is None and len(wq.quiver.vertices) == 1:
        image = _express(act_on_vector(s, v, rep, block, grading), pivots, block.size, len(modulo), len(reps), F)
        w = next((k for k in range(n) if all(a == F.rho(k) * b for a, b in zip(image, coords))), None)
        if w is None:
            raise ArithmeticError("C* direction is not a weight vector")
    else:
        degs = _grading(rep, grading)
        ws = set()
        for k in v:
            g, r, c = block.unvar(k)
            if r != c:
                raise ArithmeticError("C* direction is not diagonal at a diagonal point")
            ws.add(_entry_factor(s, degs[g], r, c))
        if len(ws) != 1:
            raise ArithmeticError("C* direction mixes loop weights")
        w = ws.pop()
    q = _drop_loop(wq.quiver, w)
    reduced = tuple(_arrow_weights(q))
    return Reduction(before, w, reduced, WeightedQuiver(q, s))


def _tag(vectors, ncols, field):
    out = []
    for i, v in enumerate(vectors):
        row = dict(v)
        row[ncols + i] = field.one
        out.append(row)
    return out
