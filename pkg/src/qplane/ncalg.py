"""Finitely presented graded algebras over Q(zeta_n).

Two flavors of presentation are supported:

* quasi-commutative: every pair of generators satisfies ``g_a g_b = rho^e g_b g_a``;
  words have the normal form ``scalar * g_1^a1 ... g_m^am`` in listing order;
* embedded: a subalgebra of a quasi-commutative ambient algebra, given by the
  images of its generators (this is how the Rees algebras are built).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Mapping

from .field import CycScalar, CyclotomicField, format_scalar, make_field


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int = 1
    cstar_degree: int = 1


class NcPoly:
    """Noncommutative polynomial: ``{word: coefficient}`` with words as index tuples."""

    __slots__ = ("field", "terms")

    def __init__(self, field: CyclotomicField, terms: Mapping | None = None):
        self.field = field
        clean = {}
        for w, c in (terms or {}).items():
            c = field(c)
            if c:
                w = tuple(w)
                clean[w] = clean[w] + c if w in clean else c
                if not clean[w]:
                    del clean[w]
        self.terms = clean

    @classmethod
    def word(cls, field, word, coeff=1):
        return cls(field, {tuple(word): coeff})

    @classmethod
    def one(cls, field):
        return cls(field, {(): 1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return NcPoly(self.field, terms)

    def __neg__(self):
        return NcPoly(self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            terms = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    terms[w] = terms[w] + c if w in terms else c
            return NcPoly(self.field, terms)
        c = self.field(other)
        return NcPoly(self.field, {w: c * v for w, v in self.terms.items()})

    def __rmul__(self, other):
        c = self.field(other)
        return NcPoly(self.field, {w: c * v for w, v in self.terms.items()})

    def __pow__(self, k: int):
        result = NcPoly.one(self.field)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.field is other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_length(self):
        return max((len(w) for w in self.terms), default=0)

    def render(self, names) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            word = "*".join(names[i] for i in w) or "1"
            parts.append(f"({format_scalar(c, 'rho')})*{word}")
        return " + ".join(parts)


@dataclass(frozen=True, eq=False)
class Presentation:
    name: str
    field: CyclotomicField
    generators: tuple
    relations: tuple
    flavor: str  # "quasi" or "embedded"
    exponents: dict = dc_field(default_factory=dict)  # (a, b) -> e with g_a g_b = rho^e g_b g_a
    ambient: "Presentation | None" = None
    images: tuple | None = None

    @property
    def n(self) -> int:
        return self.field.n

    @property
    def names(self) -> tuple:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def gen(self, name: str) -> NcPoly:
        return NcPoly.word(self.field, (self.index(name),))

    def parse_word(self, text: str) -> tuple:
        """``"x*y*z"`` or ``"xyz"`` (single-letter names) into an index word."""
        names = self.names
        if "*" in text or any(len(nm) > 1 for nm in names):
            return tuple(self.index(t) for t in text.split("*") if t)
        return tuple(self.index(ch) for ch in text)

    def monomial(self, text: str, coeff=1) -> NcPoly:
        return NcPoly.word(self.field, self.parse_word(text), coeff)

    def commutation_exponent(self, a: int, b: int):
        """e with g_a g_b = rho^e g_b g_a, or None when the pair is not quasi-commuting."""
        if a == b:
            return 0
        return self.exponents.get((a, b))

    @property
    def pairwise_quasi_commuting(self) -> bool:
        m = len(self.generators)
        return all(self.commutation_exponent(a, b) is not None for a in range(m) for b in range(m))

    def cstar_degrees(self) -> tuple:
        return tuple(g.cstar_degree for g in self.generators)

    def to_json(self) -> dict:
        names = self.names
        doc = {
            "name": self.name,
            "conductor": self.n,
            "flavor": self.flavor,
            "generators": [
                {"name": g.name, "degree": g.degree, "cstar_degree": g.cstar_degree} for g in self.generators
            ],
            "exponents": [
                {"left": names[a], "right": names[b], "e": e}
                for (a, b), e in sorted(self.exponents.items())
                if a < b
            ],
            "relations": [_poly_json(r, names) for r in self.relations],
        }
        if self.flavor == "embedded":
            doc["ambient"] = self.ambient.to_json()
            doc["images"] = {names[i]: _poly_json(p, self.ambient.names) for i, p in enumerate(self.images)}
        return doc


def _poly_json(p: NcPoly, names):
    return [
        [format_scalar(c), [names[i] for i in w]]
        for w, c in sorted(p.terms.items(), key=lambda t: (len(t[0]), t[0]))
    ]


# ---------------------------------------------------------------------------
# quasi-commutative presentations


def quantum_space(
    n: int,
    names: Iterable[str] = ("x", "y", "z"),
    exponents: Mapping | None = None,
    *,
    degrees=None,
    cstar_degrees=None,
    name: str | None = None,
) -> Presentation:
    """Quasi-commutative algebra with relations ``a b = rho^e b a``.

    ``exponents`` maps name pairs ``(a, b)`` to e; pairs not mentioned commute.
    With three generators and no table, the relations are ``xy = rho yx``,
    ``yz = rho zy``, ``zx = rho xz``.
    """
    names = tuple(names)
    if exponents is None:
        exponents = {(names[0], names[1]): 1, (names[1], names[2]): 1, (names[2], names[0]): 1} if len(names) == 3 else {}
    F = make_field(n)
    m = len(names)
    degrees = degrees or (1,) * m
    cstar_degrees = cstar_degrees or tuple(degrees)
    gens = tuple(Generator(nm, d, c) for nm, d, c in zip(names, degrees, cstar_degrees))
    table = {}
    oriented = {}
    for (a, b), e in exponents.items():
        ia, ib = names.index(a), names.index(b)
        table[(ia, ib)] = e % n
        table[(ib, ia)] = (-e) % n
        oriented[frozenset((ia, ib))] = (ia, ib, e % n)
    relations = []
    for a in range(m):
        for b in range(a + 1, m):
            if (a, b) not in table:
                table[(a, b)] = table[(b, a)] = 0
                oriented[frozenset((a, b))] = (a, b, 0)
            i, j, e = oriented[frozenset((a, b))]
            relations.append(NcPoly(F, {(i, j): 1, (j, i): -F.rho(e)}) if (i, j) != (j, i) else None)
    return Presentation(
        name=name or f"Q(zeta_{n})<{','.join(names)}>",
        field=F,
        generators=gens,
        relations=tuple(r for r in relations if r is not None),
        flavor="quasi",
        exponents=table,
    )


def quantum_plane(n: int) -> Presentation:
    """A = C_rho[x,y,z]: xy = rho yx, yz = rho zy, zx = rho xz."""
    return quantum_space(n, ("x", "y", "z"), name="A")


def skew_plane(n: int, q: int = 3) -> Presentation:
    """C_{rho^q}[u,v]: uv = rho^q vu."""
    return quantum_space(n, ("u", "v"), {("u", "v"): q}, name=f"C_rho^{q}[u,v]")


CHART_EXPONENTS = {"line": (1, 2, 1), "origin": (1, 3, 1)}


def chart_algebra(chart: str, n: int) -> Presentation:
    """Section algebra <u,v,w>/(uv - rho vu, vw - rho^q wv, wu - rho uw), q = 2 (line) or 3 (origin)."""
    e_uv, e_vw, e_wu = CHART_EXPONENTS[chart]
    return quantum_space(
        n,
        ("u", "v", "w"),
        {("u", "v"): e_uv, ("v", "w"): e_vw, ("w", "u"): e_wu},
        cstar_degrees=(0, 0, 0),
        name=f"chart-{chart}",
    )


def adjoin_central(pres: Presentation, name: str = "t") -> Presentation:
    """pres[t] with t central (quasi-commutative)."""
    if pres.flavor != "quasi":
        raise ValueError("can only adjoin a central variable to a quasi-commutative presentation")
    names = pres.names + (name,)
    table = {}
    for (a, b), e in pres.exponents.items():
        if a < b:
            table[(names[a], names[b])] = e
    return quantum_space(
        pres.n,
        names,
        table,
        degrees=tuple(g.degree for g in pres.generators) + (0,),
        cstar_degrees=tuple(0 for _ in pres.generators) + (1,),
        name=f"{pres.name}[{name}]",
    )


def sort_word(pres: Presentation, word) -> tuple[int, tuple]:
    """(e, sorted word) with word = rho^e * sorted word, using pairwise quasi-commutation."""
    e = 0
    w = list(word)
    for p in range(len(w)):
        for r in range(p + 1, len(w)):
            a, b = w[p], w[r]
            if a > b:
                ex = pres.commutation_exponent(a, b)
                if ex is None:
                    raise ValueError(f"generators {pres.names[a]}, {pres.names[b]} do not quasi-commute")
                e += ex
    return e % pres.n, tuple(sorted(w))


def normal_form(p: NcPoly, pres: Presentation) -> NcPoly:
    """Sort every word into listing order, accumulating rho-powers."""
    if pres.flavor != "quasi":
        raise ValueError("normal_form needs a quasi-commutative presentation; use embed() first")
    F = pres.field
    terms = {}
    for w, c in p.terms.items():
        e, s = sort_word(pres, w)
        v = c * F.rho(e)
        terms[s] = terms[s] + v if s in terms else v
    return NcPoly(F, terms)


def embed(p: NcPoly, pres: Presentation) -> NcPoly:
    """Image of p in the ambient algebra, in ambient normal form."""
    if pres.flavor == "quasi":
        return normal_form(p, pres)
    amb = pres.ambient
    total = NcPoly(pres.field)
    for w, c in p.terms.items():
        img = NcPoly.one(pres.field)
        for g in w:
            img = img * pres.images[g]
        total = total + img * c
    return normal_form(total, amb)


def is_central(p: NcPoly, pres: Presentation) -> bool:
    for i in range(len(pres.generators)):
        g = NcPoly.word(pres.field, (i,))
        if not embed(p * g - g * p, pres).is_zero():
            return False
    return True


def is_central_exponent(pres: Presentation, exps) -> bool:
    """Whether the sorted monomial with these exponents is central (quasi-commuting generators)."""
    n = pres.n
    m = len(pres.generators)
    for b in range(m):
        total = 0
        for a, k in enumerate(exps):
            if k:
                e = pres.commutation_exponent(a, b)
                total += k * e
        if total % n:
            return False
    return True


def _ratio_rho_power(a: NcPoly, b: NcPoly, field):
    """k with a = rho^k b for single-term polynomials with equal words, else None."""
    if len(a.terms) != 1 or len(b.terms) != 1:
        return None
    (wa, ca), = a.terms.items()
    (wb, cb), = b.terms.items()
    if wa != wb:
        return None
    return (ca / cb).rho_exponent()


# ---------------------------------------------------------------------------
# Rees algebras


IDEALS = {"xz": ("x", "z"), "xyz": ("x", "y", "z")}


def blowup_presentation(ideal: str, n: int) -> Presentation:
    """Rees algebra B = A + I t + I^2 t^2 + ... inside A[t].

    Generators are x, y, z (C*-degree 0) followed by the capitals xt, ... of the
    ideal generators (C*-degree 1). Relations are generated from the embedding:
    one quasi-commutation per generator pair and every exchange relation
    ``g H = c G h`` between an ideal letter g and a capital H = h t.
    """
    if ideal not in IDEALS:
        raise ValueError(f"ideal must be one of {sorted(IDEALS)}")
    A = quantum_plane(n)
    amb = adjoin_central(A, "t")
    F = amb.field
    lower = ("x", "y", "z")
    caps = IDEALS[ideal]
    gens = [Generator(g, 1, 0) for g in lower] + [Generator(g.upper(), 1, 1) for g in caps]
    t = amb.index("t")
    images = [NcPoly.word(F, (amb.index(g),)) for g in lower]
    images += [NcPoly.word(F, (amb.index(g), t)) for g in caps]
    m = len(gens)

    def emb(word):
        img = NcPoly.one(F)
        for g in word:
            img = img * images[g]
        return normal_form(img, amb)

    exponents = {}
    relations = []
    for a in range(m):
        for b in range(a + 1, m):
            k = _ratio_rho_power(emb((a, b)), emb((b, a)), F)
            if k is None:
                raise ArithmeticError("generator images do not quasi-commute")
            exponents[(a, b)] = k
            exponents[(b, a)] = (-k) % n
            relations.append(NcPoly(F, {(a, b): 1, (b, a): -F.rho(k)}))
    names = [g.name for g in gens]
    for g in caps:
        gi, Gi = names.index(g), names.index(g.upper())
        for h in caps:
            if h == g:
                continue
            hi, Hi = names.index(h), names.index(h.upper())
            k = _ratio_rho_power(emb((gi, Hi)), emb((Gi, hi)), F)
            if k is None:
                raise ArithmeticError("exchange relation is not binomial")
            relations.append(NcPoly(F, {(gi, Hi): 1, (Gi, hi): -F.rho(k)}))
    pres = Presentation(
        name=f"B[{ideal}]",
        field=F,
        generators=tuple(gens),
        relations=tuple(relations),
        flavor="embedded",
        exponents=exponents,
        ambient=amb,
        images=tuple(images),
    )
    for r in pres.relations:
        if not embed(r, pres).is_zero():
            raise ArithmeticError(f"generated relation {r.render(pres.names)} does not vanish in A[t]")
    return pres


def contains_relation(pres: Presentation, rel: NcPoly) -> bool:
    """Whether some listed relation is a nonzero scalar multiple of rel."""
    if rel.is_zero():
        return False
    w0 = next(iter(rel.terms))
    for r in pres.relations:
        if set(r.terms) != set(rel.terms):
            continue
        c = r.terms[w0] / rel.terms[w0]
        if all(r.terms[w] == c * rel.terms[w] for w in rel.terms):
            return True
    return False


def certify_relations(pres: Presentation, max_len: int = 4) -> dict:
    """Check that the binomial relations connect all words with equal ambient image.

    Every word of length <= max_len is embedded; words with the same ambient
    monomial form one class. Rewriting with the listed relations (either side
    to the other, at any position) must connect each class.
    """
    m = len(pres.generators)
    rules = []
    for r in pres.relations:
        if len(r.terms) != 2:
            raise ValueError("certification handles binomial relations only")
        (w1, c1), (w2, c2) = r.terms.items()
        rules.append((w1, w2))
        rules.append((w2, w1))
    classes = 0
    words = 0
    for length in range(1, max_len + 1):
        groups = {}
        for w in product(range(m), repeat=length):
            img = embed(NcPoly.word(pres.field, w), pres)
            (mono, _), = img.terms.items()
            groups.setdefault(mono, set()).add(w)
        for mono, members in groups.items():
            start = next(iter(members))
            seen = {start}
            stack = [start]
            while stack:
                w = stack.pop()
                for lhs, rhs in rules:
                    k = len(lhs)
                    for i in range(len(w) - k + 1):
                        if w[i : i + k] == lhs:
                            nw = w[:i] + rhs + w[i + k :]
                            if nw not in seen:
                                seen.add(nw)
                                stack.append(nw)
            if seen != members:
                return {"ok": False, "length": length, "class": [pres.names[i] for i in mono], "max_len": max_len}
            classes += 1
            words += len(members)
    return {"ok": True, "classes": classes, "words": words, "max_len": max_len}
