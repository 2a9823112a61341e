"""Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored in the power basis 1, z, ..., z^(phi(n)-1) of
Q[x]/(Phi_n(x)) as an integer numerator vector over a common positive
denominator. Every value is kept in lowest terms, so equality is plain
tuple equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
import re


class ConductorMismatch(ValueError):
    """Raised when scalars or matrices over different Q(zeta_n) are combined."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (coefficient lists, low degree first)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdiv_exact(num, den):
    """Divide integer polynomials when den is monic and divides num."""
    num = _trim(num)
    den = _trim(den)
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    q = [0] * (len(num) - len(den) + 1)
    r = list(num)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + len(den) - 1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                r[k + i] -= c * d
    if any(r):
        raise ArithmeticError("polynomial division left a remainder")
    return q


def _mobius(n):
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Uses the product formula prod_{d | n} (x^d - 1)^mu(n/d).
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    num, den = [1], [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _mobius(n // d)
        if mu == 0:
            continue
        factor = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _pmul(num, factor)
        else:
            den = _pmul(den, factor)
    # den is a product of monic factors up to the sign of its constant term
    if _trim(den)[-1] != 1:
        den = [-c for c in den]
        num = [-c for c in num]
    return tuple(_pdiv_exact(num, den))


# ---------------------------------------------------------------------------
# rational polynomial helpers used by inversion only


def _qtrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_qtrim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
    return q, a


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _qtrim(out)


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------


class CyclotomicField:
    """Q(zeta_n) with zeta the residue class of x modulo Phi_n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("conductor must be positive")
        self.n = n
        self.modulus = cyclotomic_poly(n)
        self.degree = len(self.modulus) - 1
        self._zero = CycScalar._raw(self, (0,) * self.degree, 1)
        self._one = self.from_int(1)
        powers = []
        for k in range(n):
            vec = [0] * (k + 1)
            vec[k] = 1
            powers.append(self._from_poly(vec, 1))
        self._zeta_powers = tuple(powers)

    def __repr__(self):
        return f"CyclotomicField({self.n})"

    def __reduce__(self):
        return (make_field, (self.n,))

    @property
    def zero(self) -> "CycScalar":
        return self._zero

    @property
    def one(self) -> "CycScalar":
        return self._one

    @property
    def zeta(self) -> "CycScalar":
        return self._zeta_powers[1 % self.n]

    def rho(self, k: int = 1) -> "CycScalar":
        """zeta**k, with k read modulo n."""
        return self._zeta_powers[k % self.n]

    def from_int(self, value) -> "CycScalar":
        q = Fraction(value)
        return CycScalar._make(self, [q.numerator] + [0] * (self.degree - 1), q.denominator)

    def from_coeffs(self, coeffs) -> "CycScalar":
        """Build from rational coefficients of 1, z, z^2, ... (any length)."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        return self._from_poly([int(c * den) for c in fr], den)

    def _from_poly(self, num, den) -> "CycScalar":
        num = list(num)
        d = self.degree
        mod = self.modulus
        for k in range(len(num) - 1, d - 1, -1):
            c = num[k]
            if c:
                num[k] = 0
                base = k - d
                for i in range(d):
                    m = mod[i]
                    if m:
                        num[base + i] -= c * m
        num = num[:d] + [0] * (d - len(num))
        return CycScalar._make(self, num, den)

    def __call__(self, value) -> "CycScalar":
        if isinstance(value, CycScalar):
            if value.field is not self:
                raise ConductorMismatch(f"scalar over Q(zeta_{value.field.n}) used in Q(zeta_{self.n})")
            return value
        return self.from_int(value)

    def parse(self, text: str) -> "CycScalar":
        return parse_scalar(text, self)


@lru_cache(maxsize=None)
def make_field(n: int) -> CyclotomicField:
    """Return the (cached, shared) field context for conductor n."""
    return CyclotomicField(n)


class CycScalar:
    """An immutable element of Q(zeta_n)."""

    __slots__ = ("field", "num", "den", "_hash")

    @classmethod
    def _raw(cls, field, num, den):
        self = object.__new__(cls)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, field, num, den):
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(num):
            return cls._raw(field, (0,) * field.degree, 1)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        return cls._raw(field, tuple(num), den)

    # -- basic predicates -------------------------------------------------

    @property
    def conductor(self) -> int:
        return self.field.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def rational(self):
        """The value as a Fraction, or None when it is irrational."""
        if any(self.num[1:]):
            return None
        return Fraction(self.num[0], self.den)

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.field is not self.field:
                raise ConductorMismatch(
                    f"cannot combine Q(zeta_{self.field.n}) with Q(zeta_{other.field.n})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_int(other)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CycScalar._make(self.field, [a + b for a, b in zip(self.num, other.num)], self.den)
        return CycScalar._make(
            self.field,
            [a * other.den + b * self.den for a, b in zip(self.num, other.num)],
            self.den * other.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.field, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.num, other.num
        if not any(a) or not any(b):
            return self.field.zero
        d = self.field.degree
        if d == 1:
            return CycScalar._make(self.field, [a[0] * b[0]], self.den * other.den)
        conv = [0] * (2 * d - 1)
        for i in range(d):
            x = a[i]
            if x:
                for j in range(d):
                    y = b[j]
                    if y:
                        conv[i + j] += x * y
        return self.field._from_poly(conv, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        return _inverse(self.field.n, self.num, self.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison, hashing, display ------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycScalar):
            return self.field is other.field and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return not any(self.num[1:]) and Fraction(self.num[0], self.den) == q
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if any(self.num[1:]):
                self._hash = hash((self.field.n, self.num, self.den))
            else:
                self._hash = hash(Fraction(self.num[0], self.den))
        return self._hash

    def __reduce__(self):
        return (_rebuild_scalar, (self.field.n, self.num, self.den))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"CycScalar({format_scalar(self)!r}, n={self.field.n})"

    def to_complex(self) -> complex:
        """Approximate complex value, for display only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.field.n)
        return sum(float(c) * z**i for i, c in enumerate(self.coeffs))

    def rho_exponent(self):
        """k with self == zeta**k, or None."""
        for k, p in enumerate(self.field._zeta_powers):
            if p == self:
                return k
        return None


def _rebuild_scalar(n, num, den):
    return CycScalar._raw(make_field(n), tuple(num), den)


@lru_cache(maxsize=65536)
def _inverse(n, num, den):
    field = make_field(n)
    mod = [Fraction(c) for c in field.modulus]
    a = _qtrim([Fraction(c, den) for c in num])
    # extended Euclid: track s with s*a = r (mod Phi_n)
    r0, r1 = mod, a
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, _qtrim(r)
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible modulo Phi_n")
    c = r1[0]
    return field.from_coeffs([x / c for x in s1])


# ---------------------------------------------------------------------------
# string rendering / parsing: "a0 + a1*z + a2*z^2"


def format_scalar(s: CycScalar, var: str = "z") -> str:
    parts = []
    for i, c in enumerate(s.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif mag == 1:
            body = var if i == 1 else f"{var}^{i}"
        else:
            body = f"{mag}*{var}" if i == 1 else f"{mag}*{var}^{i}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?:(?P<var>z|rho)(?:\s*(?:\^|\*\*)\s*(?P<exp>-?\d+))?)?$"
)


def parse_scalar(text: str, field: CyclotomicField) -> CycScalar:
    """Parse strings such as ``"1 - 2*z + 1/3*z^4"`` (``rho`` is accepted for ``z``)."""
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty scalar")
    terms = re.findall(r"[+-]?[^+-]+", src)
    if "".join(terms) != src:
        raise ValueError(f"cannot parse scalar {text!r}")
    total = field.zero
    for term in terms:
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse term {term!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        exp = 0
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") else 1
        total = total + field.rho(exp) * (sign * coef)
    return total
