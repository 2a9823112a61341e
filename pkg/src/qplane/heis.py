"""Simple n-dimensional representations of the finite Heisenberg group H_n.

Basis x_0, ..., x_{n-1}; ``e1 . x_i = x_{i-1}`` and ``e2 . x_i = rho^(k i) x_i``
with indices mod n. The group commutator is ``[a, b] = a b a^-1 b^-1``, so
``[E1, E2] = rho^k I``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .field import CycMatrix, commutator_group, make_field


@dataclass(frozen=True)
class HeisRep:
    n: int
    k: int
    E1: CycMatrix
    E2: CycMatrix

    @property
    def field(self):
        return self.E1.field

    def word(self, a: int, b: int) -> CycMatrix:
        """E1^a E2^b."""
        return self.E1 ** (a % self.n) * self.E2 ** (b % self.n)

    @property
    def z_block(self) -> CycMatrix:
        """E2^-1 E1^-1, the matrix carried by z in standard form."""
        return self.E2.inverse() * self.E1.inverse()


@lru_cache(maxsize=None)
def shift_matrix(n: int) -> CycMatrix:
    F = make_field(n)
    return CycMatrix(F, n, n, {((i - 1) % n, i): F.one for i in range(n)})


@lru_cache(maxsize=None)
def psi(n: int, k: int = 1) -> HeisRep:
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(k, n) != 1:
        raise ValueError(f"psi_{k} is not simple for n={n}: gcd({k}, {n}) != 1")
    F = make_field(n)
    E2 = CycMatrix.diag(F, [F.rho(k * i) for i in range(n)])
    return HeisRep(n, k, shift_matrix(n), E2)


def verify_heis_identities(rep: HeisRep) -> dict[str, bool]:
    n, F = rep.n, rep.field
    eye = CycMatrix.identity(F, n)
    comm = commutator_group(rep.E1, rep.E2)
    expected_comm = CycMatrix.scalar(F, n, F.rho(rep.k))
    central = comm * rep.E1 == rep.E1 * comm and comm * rep.E2 == rep.E2 * comm
    power = rep.z_block ** n
    return {
        "E1^n = I": rep.E1 ** n == eye,
        "E2^n = I": rep.E2 ** n == eye,
        "[E1,E2] = rho^k I": comm == expected_comm,
        "[E1,E2] central": central,
        "(E2^-1 E1^-1)^n = rho^(k n(n-1)/2) I": power == CycMatrix.scalar(F, n, F.rho(rep.k * n * (n - 1) // 2)),
    }
