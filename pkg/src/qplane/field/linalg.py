"""Exact sparse Gauss-Jordan elimination over Q(zeta_n).

Vectors are plain dicts ``{column: CycScalar}`` holding nonzero entries only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclotomic import CycScalar, CyclotomicField
from .matrix import CycMatrix


def _axpy(row, c, other):
    """row <- row - c*other, in place."""
    for k, v in other.items():
        if k in row:
            nv = row[k] - c * v
            if nv:
                row[k] = nv
            else:
                del row[k]
        else:
            row[k] = -(c * v)


def _weight(s: CycScalar):
    # pivot preference: few nonzero coefficients and small integers
    return (sum(1 for c in s.num if c), s.den, max(abs(c) for c in s.num))


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Every stored row has pivot entry 1 and zeros in all other pivot columns.
    """

    def __init__(self, field: CyclotomicField, ncols: int, pivot_limit: int | None = None):
        self.field = field
        self.ncols = ncols
        # columns >= pivot_limit become pivots only when nothing else is left
        self.pivot_limit = ncols if pivot_limit is None else pivot_limit
        self.pivots: dict[int, dict[int, CycScalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec) -> dict:
        """Residual of vec modulo the row space (a new dict)."""
        row = dict(vec)
        for col in [c for c in row if c in self.pivots]:
            c = row.get(col)
            if c:
                _axpy(row, c, self.pivots[col])
        return row

    def add(self, vec) -> bool:
        """Insert a row; returns True when it enlarged the row space."""
        row = self.reduce(vec)
        if not row:
            return False
        cands = [k for k in row if k < self.pivot_limit] or list(row)
        col = min(cands, key=lambda k: (_weight(row[k]), k))
        inv = row[col].inverse()
        row = {k: v * inv for k, v in row.items()}
        row[col] = self.field.one
        for prow in self.pivots.values():
            c = prow.get(col)
            if c:
                _axpy(prow, c, row)
        self.pivots[col] = row
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def kernel(self) -> list[dict]:
        """Basis of {v : row . v = 0 for all rows}, one vector per free column."""
        free = [c for c in range(self.ncols) if c not in self.pivots]
        pivot_cols_by_free = {f: [] for f in free}
        for pc, prow in self.pivots.items():
            for k, v in prow.items():
                if k != pc:
                    pivot_cols_by_free[k].append((pc, v))
        basis = []
        for f in free:
            vec = {f: self.field.one}
            for pc, v in pivot_cols_by_free[f]:
                vec[pc] = -v
            basis.append(vec)
        return basis


def row_space(field, ncols, rows) -> Echelon:
    ech = Echelon(field, ncols)
    for r in rows:
        ech.add(r)
    return ech


def dot(u: dict, v: dict, field: CyclotomicField) -> CycScalar:
    if len(u) > len(v):
        u, v = v, u
    total = field.zero
    for k, a in u.items():
        b = v.get(k)
        if b is not None:
            total = total + a * b
    return total


# ---------------------------------------------------------------------------
# CycMatrix-level interface


def _matrix_rows(M: CycMatrix):
    rows = [dict() for _ in range(M.rows)]
    for (i, j), v in M.items():
        rows[i][j] = v
    return rows


def rank_kernel(M: CycMatrix):
    """(rank, kernel basis as column matrices) of M."""
    ech = row_space(M.field, M.cols, _matrix_rows(M))
    kernel = []
    for vec in ech.kernel():
        kernel.append(CycMatrix(M.field, M.cols, 1, {(k, 0): v for k, v in vec.items()}))
    return ech.rank, kernel


@dataclass(frozen=True)
class Solution:
    particular: CycMatrix
    kernel: tuple

    @property
    def unique(self) -> bool:
        return not self.kernel


def solve(M: CycMatrix, b: CycMatrix):
    """One exact solution of M x = b plus a kernel basis, or None if inconsistent."""
    if b.rows != M.rows or b.cols != 1:
        from .matrix import ShapeError

        raise ShapeError(f"right-hand side {b.shape} does not fit {M.shape}")
    field = M.field
    aug = M.cols
    rows = _matrix_rows(M)
    for (i, _), v in b.items():
        rows[i][aug] = v
    ech = Echelon(field, aug + 1, pivot_limit=aug)
    for r in rows:
        ech.add(r)
    if aug in ech.pivots:
        return None
    data = {}
    for pc, prow in ech.pivots.items():
        c = prow.get(aug)
        if c:
            data[(pc, 0)] = c
    particular = CycMatrix(field, M.cols, 1, data)
    _, kernel = rank_kernel(M)
    return Solution(particular, tuple(kernel))
