"""Invariants of G = {(a, b, c) in Z_n^3 : a + b + c = 0} acting diagonally on C[x, y, z]."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True, order=True)
class GroupElement:
    a: int
    b: int
    c: int


@dataclass(frozen=True, order=True)
class Monomial:
    k: int
    l: int
    m: int

    def __post_init__(self):
        if min(self.k, self.l, self.m) < 0:
            raise ValueError("exponents must be non-negative")

    @property
    def degree(self) -> int:
        return self.k + self.l + self.m


@dataclass(frozen=True)
class Decomposition:
    """mon = (xyz)^g * (x^n)^u * (y^n)^v * (z^n)^w."""

    n: int
    g: int
    u: int
    v: int
    w: int

    def expand(self) -> Monomial:
        n = self.n
        return Monomial(self.g + n * self.u, self.g + n * self.v, self.g + n * self.w)

    def __str__(self):
        n = self.n
        parts = [f"({s})^{e}" for s, e in (("xyz", self.g), (f"x^{n}", self.u), (f"y^{n}", self.v), (f"z^{n}", self.w)) if e]
        return "*".join(parts) or "1"


def group_elements(n: int) -> list[GroupElement]:
    if n < 1:
        raise ValueError("n must be positive")
    return [GroupElement(a, b, (-a - b) % n) for a, b in product(range(n), repeat=2)]


def is_invariant(mon: Monomial, n: int) -> bool:
    """Direct check over every group element."""
    return all((g.a * mon.k + g.b * mon.l + g.c * mon.m) % n == 0 for g in group_elements(n))


def is_invariant_closed_form(mon: Monomial, n: int) -> bool:
    return mon.k % n == mon.l % n == mon.m % n


def greedy_decompose(mon: Monomial, n: int) -> Decomposition | None:
    """Divide out xyz as often as possible, then require n | each remaining exponent.

    Returns None when the monomial is not in the subring generated by
    x^n, y^n, z^n, xyz.
    """
    g = min(mon.k, mon.l, mon.m)
    rest = (mon.k - g, mon.l - g, mon.m - g)
    if any(e % n for e in rest):
        return None
    return Decomposition(n, g, *(e // n for e in rest))


def monomials_up_to(degree: int):
    for d in range(degree + 1):
        for k in range(d + 1):
            for l in range(d - k + 1):
                yield Monomial(k, l, d - k - l)


def verify_generation(n: int, degree: int | None = None) -> dict:
    """Exhaustive check of invariance and decomposition up to the given degree (default 3n)."""
    degree = 3 * n if degree is None else degree
    checked = invariant = 0
    failures = []
    for mon in monomials_up_to(degree):
        checked += 1
        inv = is_invariant(mon, n)
        dec = greedy_decompose(mon, n)
        ok = inv == is_invariant_closed_form(mon, n) and (dec is not None) == inv
        if dec is not None and dec.expand() != mon:
            ok = False
        invariant += inv
        if not ok:
            failures.append((mon.k, mon.l, mon.m))
    return {"n": n, "degree": degree, "checked": checked, "invariant": invariant, "failures": failures, "ok": not failures}
