"""Matrix representations of the quantum plane, its blow-ups and the chart algebras."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .field import CycMatrix, CycScalar, format_scalar, make_field
from .heis import psi
from .ncalg import (
    NcPoly,
    Presentation,
    blowup_presentation,
    chart_algebra,
    quantum_plane,
)


@dataclass(frozen=True, eq=False)
class Representation:
    pres: Presentation
    dim: int
    images: tuple
    grading: tuple
    label: str = ""
    meta: dict = dc_field(default_factory=dict)
    _memo: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.pres.field

    @property
    def n(self) -> int:
        return self.pres.n

    def image(self, name: str) -> CycMatrix:
        return self.images[self.pres.index(name)]

    def word(self, word: Sequence[int]) -> CycMatrix:
        word = tuple(word)
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        if not word:
            out = CycMatrix.identity(self.field, self.dim)
        elif len(word) == 1:
            out = self.images[word[0]]
        else:
            out = self.word(word[:-1]) * self.images[word[-1]]
        if len(self._memo) < 200_000:
            self._memo[word] = out
        return out

    def evaluate(self, p: NcPoly) -> CycMatrix:
        total = CycMatrix.zeros(self.field, self.dim)
        for w, c in p.terms.items():
            total = total + self.word(w).scale(c)
        return total

    def with_images(self, images, label=None) -> "Representation":
        return Representation(self.pres, self.dim, tuple(images), self.grading, label or self.label, dict(self.meta))

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.pres is other.pres and self.images == other.images

    def __hash__(self):
        return hash((self.pres.name, self.images))

    def to_json(self) -> dict:
        return {
            "presentation": self.pres.name,
            "conductor": self.n,
            "dim": self.dim,
            "label": self.label,
            "grading": dict(zip(self.pres.names, self.grading)),
            "images": {
                nm: [[format_scalar(v) for v in row] for row in m.to_rows()]
                for nm, m in zip(self.pres.names, self.images)
            },
        }


def make_rep(pres: Presentation, images: Mapping[str, CycMatrix], dim: int, *, label="", meta=None, check=True):
    """Representation from a name -> matrix map; unnamed generators go to 0."""
    F = pres.field
    unknown = set(images) - set(pres.names)
    if unknown:
        raise ValueError(f"unknown generators {sorted(unknown)}")
    mats = tuple(images.get(nm, CycMatrix.zeros(F, dim)) for nm in pres.names)
    rep = Representation(pres, dim, mats, pres.cstar_degrees(), label, dict(meta or {}))
    if check:
        ok, failed = verify_rep(rep)
        if not ok:
            raise ArithmeticError(f"relations fail: {failed}")
    return rep


def verify_rep(rep: Representation) -> tuple[bool, list]:
    failed = [r.render(rep.pres.names) for r in rep.pres.relations if not rep.evaluate(r).is_zero()]
    return not failed, failed


# ---------------------------------------------------------------------------
# center points and strata


def center_lambda(n: int) -> CycScalar:
    """The scalar with x^n y^n z^n = lambda (xyz)^n in A."""
    F = make_field(n)
    return F.rho(n * (n - 1) // 2)


@dataclass(frozen=True)
class CenterPoint:
    """Values of (x^n, y^n, z^n, xyz); satisfies u v w = lambda g^n."""

    u: CycScalar
    v: CycScalar
    w: CycScalar
    g: CycScalar

    @property
    def n(self) -> int:
        return self.u.field.n

    def coords(self):
        return (self.u, self.v, self.w, self.g)

    def on_center(self) -> bool:
        return self.u * self.v * self.w == center_lambda(self.n) * self.g ** self.n

    def as_strings(self):
        return [format_scalar(c) for c in self.coords()]


def center_point(n: int, values) -> CenterPoint:
    F = make_field(n)
    return CenterPoint(*(F(v) if not isinstance(v, str) else F.parse(v) for v in values))


STRATA = ("Azumaya-off-V(xyz)", "Azumaya-on-V(xyz)", "Line", "Origin")


@dataclass(frozen=True)
class Stratum:
    tag: str
    module_type: str
    vanishing: tuple
    meta: tuple = ()


def classify(point: CenterPoint) -> Stratum:
    names = ("u", "v", "w", "g")
    vanishing = tuple(nm for nm, c in zip(names, point.coords()) if not c)
    nonzero_uvw = sum(1 for c in (point.u, point.v, point.w) if c)
    if point.g:
        return Stratum("Azumaya-off-V(xyz)", "FatPoint", vanishing)
    if nonzero_uvw >= 2:
        shifts = tuple(i - 1 for i in range(1, point.n + 1))
        return Stratum("Azumaya-on-V(xyz)", "PointSum", vanishing, (("shift", shifts),))
    if nonzero_uvw == 1:
        return Stratum("Line", "LineType", vanishing)
    return Stratum("Origin", "Trivial", vanishing)


# ---------------------------------------------------------------------------
# standard forms


def standard_rep(n: int, point, j: int = 0) -> Representation:
    """x -> alpha E1, y -> beta E2, z -> gamma rho^j E2^-1 E1^-1.

    The caller supplies the roots alpha, beta, gamma. For even n the z^n
    character is gamma^n times rho^(n(n-1)/2) = -1, so gamma^n = -w there.
    """
    A = quantum_plane(n)
    F = A.field
    alpha, beta, gamma = (F(c) for c in point)
    h = psi(n, 1)
    images = {
        "x": h.E1.scale(alpha),
        "y": h.E2.scale(beta),
        "z": h.z_block.scale(gamma * F.rho(j)),
    }
    meta = {"roots": tuple(format_scalar(c) for c in (alpha, beta, gamma)), "j": j % n}
    return make_rep(A, images, n, label=f"standard({','.join(meta['roots'])};j={j % n})", meta=meta)


def central_character(rep: Representation) -> CenterPoint:
    pres = rep.pres
    n = rep.n
    x, y, z = (pres.index(c) for c in "xyz")
    vals = []
    for word in ((x,) * n, (y,) * n, (z,) * n, (x, y, z)):
        s = rep.word(word).scalar_value()
        if s is None:
            raise ValueError(f"central element {''.join(pres.names[i] for i in word)} has a non-scalar image")
        vals.append(s)
    return CenterPoint(*vals)


def _rational_root(q: Fraction, n: int):
    if q < 0:
        return None

    def iroot(m):
        lo, hi = 0, 1
        while hi ** n <= m:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** n < m:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** n == m else None

    a, b = iroot(q.numerator), iroot(q.denominator)
    return None if a is None or b is None else Fraction(a, b)


def nth_root(c: CycScalar, n: int) -> CycScalar:
    """An n-th root of c = r^n (or -r^n for odd n) with r rational.

    Only these roots are attempted; other values raise ValueError.
    """
    F = c.field
    if not c:
        return F.zero
    q = c.rational()
    if q is None:
        raise ValueError(f"{format_scalar(c)} is not rational; no n-th root is attempted")
    r = _rational_root(q, n)
    if r is not None:
        return F(r)
    if n % 2:
        r = _rational_root(-q, n)
        if r is not None:
            return F(-r)
    raise ValueError(f"{format_scalar(c)} has no n-th root of the supported form")


def rep_from_center_point(point: CenterPoint) -> Representation:
    """Standard-form semisimple representation over a center point."""
    n = point.n
    F = point.u.field
    if not point.on_center():
        raise ValueError("point does not satisfy u v w = lambda g^n")
    alpha = nth_root(point.u, n)
    beta = nth_root(point.v, n)
    gamma = nth_root(point.w / center_lambda(n), n)
    j = 0
    if point.g:
        ratio = point.g / (alpha * beta * gamma)
        j = ratio.rho_exponent()
        if j is None:
            raise ArithmeticError("g/(alpha beta gamma) is not a power of rho")
    rep = standard_rep(n, (alpha, beta, gamma), j)
    if central_character(rep) != point:
        raise ArithmeticError("constructed representation has the wrong central character")
    return rep


# ---------------------------------------------------------------------------
# semisimple decomposition


def decompose_semisimple(rep: Representation) -> list:
    """One-dimensional summands of a simultaneously diagonal representation.

    Returns ``[(summand, multiplicity, positions)]`` ordered by first position.
    """
    if not all(m.is_diagonal() for m in rep.images):
        raise ValueError("decompose_semisimple needs simultaneously diagonal images")
    F = rep.field
    order = []
    where = {}
    for i in range(rep.dim):
        key = tuple(m.entry(i, i) for m in rep.images)
        if key not in where:
            where[key] = []
            order.append(key)
        where[key].append(i)
    out = []
    for key in order:
        images = tuple(CycMatrix(F, 1, 1, {(0, 0): v}) for v in key)
        label = "(" + ",".join(format_scalar(v) for v in key) + ")"
        summand = Representation(rep.pres, 1, images, rep.grading, label)
        out.append((summand, len(where[key]), tuple(where[key])))
    return out


# ---------------------------------------------------------------------------
# blow-ups and charts


def blowup_rep(ideal: str, n: int, params) -> Representation:
    """Standard representations of the Rees algebras with the degree-0 part acting by 0.

    ideal "xz":  X -> a E1, Z -> b E2^-1 E1^-1, y -> d E2   (params (a, b, d))
    ideal "xyz": X -> a E1, Y -> b E2, Z -> c E2^-1 E1^-1   (params (a, b, c))
    """
    B = blowup_presentation(ideal, n)
    F = B.field
    h = psi(n, 1)
    p = tuple(F(c) for c in params)
    if ideal == "xz":
        a, b, d = p
        images = {"X": h.E1.scale(a), "Z": h.z_block.scale(b), "y": h.E2.scale(d)}
    else:
        a, b, c = p
        images = {"X": h.E1.scale(a), "Y": h.E2.scale(b), "Z": h.z_block.scale(c)}
    label = f"B[{ideal}]({','.join(format_scalar(c) for c in p)})"
    return make_rep(B, images, n, label=label, meta={"params": tuple(format_scalar(c) for c in p)})


CHART_W_POWER = {"line": 2, "origin": 3}


def section_rep(chart: str, n: int, params, *, w_power: int | None = None, check: bool = True) -> Representation:
    """u -> a E1, v -> b E2, w -> c E2^-1 E1^-p on the chart algebra.

    p defaults to 2 on the line chart and 3 on the origin chart, the values
    for which vw = rho^q wv holds with q the chart's middle exponent.
    """
    C = chart_algebra(chart, n)
    F = C.field
    h = psi(n, 1)
    a, b, c = (F(v) for v in params)
    p = CHART_W_POWER[chart] if w_power is None else w_power
    w = (h.E2.inverse() * h.E1 ** (-p)).scale(c)
    images = {"u": h.E1.scale(a), "v": h.E2.scale(b), "w": w}
    label = f"{chart}({format_scalar(a)},{format_scalar(b)},{format_scalar(c)};E1^-{p})"
    return make_rep(C, images, n, label=label, check=check, meta={"w_power": p})


def w_power_for_exponent(q: int, n: int) -> int:
    """p such that v w = rho^q w v when w is proportional to E2^-1 E1^-p."""
    return q % n


def chart_exponent_pattern(rep: Representation) -> tuple:
    """(e_uv, e_vw, e_wu) realised by the images, or None entries where no rho-power works."""
    out = []
    for a, b in (("u", "v"), ("v", "w"), ("w", "u")):
        ab = rep.image(a) * rep.image(b)
        ba = rep.image(b) * rep.image(a)
        found = None
        for e in range(rep.n):
            if ab == ba.scale(rep.field.rho(e)):
                found = e
                break
        out.append(found)
    return tuple(out)


def trace_vanishing_failures(rep: Representation, max_len: int) -> list:
    """Sorted monomials of length <= max_len, non-central exponent pattern, nonzero trace."""
    pres = rep.pres
    n = rep.n
    bad = []
    m = len(pres.generators)
    for exps in product(range(max_len + 1), repeat=m):
        total = sum(exps)
        if total == 0 or total > max_len:
            continue
        if len({e % n for e in exps}) == 1:
            continue
        word = tuple(i for i, e in enumerate(exps) for _ in range(e))
        if rep.word(word).trace():
            bad.append(exps)
    return bad


def to_diagonal_form(rep: Representation) -> Representation:
    """Conjugate a representation with a single nonzero generator to diagonal form.

    The image M must satisfy M^n = c I with an n-th root of c available in
    Q(zeta_n); its eigenvalues are then root * rho^k and eigenvectors are
    found exactly. Representations that are already diagonal are returned as is.
    """
    from .field import rank_kernel

    if all(m.is_diagonal() for m in rep.images):
        return rep
    live = [i for i, m in enumerate(rep.images) if not m.is_zero()]
    if len(live) != 1:
        raise ValueError("diagonalisation is supported for a single nonzero generator")
    M = rep.images[live[0]]
    F = rep.field
    n, d = rep.n, rep.dim
    c = (M ** n).scalar_value()
    if c is None or not c:
        raise ValueError("image is not a scaled root of a scalar matrix")
    root = nth_root(c, n)
    cols = []
    for k in range(n):
        mu = root * F.rho(k)
        _, ker = rank_kernel(M - CycMatrix.scalar(F, d, mu))
        cols.extend(ker)
    if len(cols) != d:
        raise ArithmeticError("image is not diagonalisable over Q(zeta_n)")
    P = CycMatrix(F, d, d, {(i, j): v for j, col in enumerate(cols) for (i, _), v in col.items()})
    Pi = P.inverse()
    images = [Pi * m * P for m in rep.images]
    out = Representation(rep.pres, d, tuple(images), rep.grading, rep.label + " (diagonalised)", dict(rep.meta))
    ok, failed = verify_rep(out)
    if not ok:
        raise ArithmeticError(f"conjugated representation fails {failed}")
    return out
