"""Exact arithmetic in Q(zeta_n) and exact linear algebra over it."""

from .cyclotomic import (
    ConductorMismatch,
    CycScalar,
    CyclotomicField,
    cyclotomic_poly,
    euler_phi,
    format_scalar,
    make_field,
    parse_scalar,
)
from .linalg import Echelon, Solution, dot, rank_kernel, row_space, solve
from .matrix import CycMatrix, ShapeError, SingularMatrixError, commutator_group


def arith(op: str, a: CycScalar, b=None) -> CycScalar:
    """Dispatch one of add, sub, mul, inv, pow by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown scalar operation {op!r}")


def mat(op: str, *args):
    """Dispatch one of mul, add, scale, trace, commutator_group by name."""
    if op == "mul":
        return args[0] * args[1]
    if op == "add":
        return args[0] + args[1]
    if op == "scale":
        return args[0].scale(args[1])
    if op == "trace":
        return args[0].trace()
    if op == "commutator_group":
        return commutator_group(args[0], args[1])
    raise ValueError(f"unknown matrix operation {op!r}")


__all__ = [
    "ConductorMismatch",
    "CycMatrix",
    "CycScalar",
    "CyclotomicField",
    "Echelon",
    "ShapeError",
    "SingularMatrixError",
    "Solution",
    "arith",
    "commutator_group",
    "cyclotomic_poly",
    "dot",
    "euler_phi",
    "format_scalar",
    "make_field",
    "mat",
    "parse_scalar",
    "rank_kernel",
    "row_space",
    "solve",
]
