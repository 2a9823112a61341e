"""Dense-shaped, sparsely stored matrices over Q(zeta_n)."""

from __future__ import annotations

from .cyclotomic import ConductorMismatch, CycScalar, CyclotomicField


class ShapeError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class CycMatrix:
    """Immutable rows x cols matrix; only nonzero entries are stored."""

    __slots__ = ("field", "rows", "cols", "_data", "_by_row", "_hash")

    def __init__(self, field: CyclotomicField, rows: int, cols: int, data=None):
        if rows < 0 or cols < 0:
            raise ShapeError("negative shape")
        self.field = field
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (data or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i},{j}) outside {rows}x{cols}")
            v = field(v)
            if v:
                clean[(i, j)] = v
        self._data = clean
        self._by_row = None
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, field, rows, cols=None):
        return cls(field, rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, {(i, i): field.one for i in range(n)})

    @classmethod
    def scalar(cls, field, n, value):
        value = field(value)
        return cls(field, n, n, {(i, i): value for i in range(n)})

    @classmethod
    def diag(cls, field, values):
        values = list(values)
        return cls(field, len(values), len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_rows(cls, field, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        data = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ShapeError("ragged rows")
            for j, v in enumerate(r):
                data[(i, j)] = v
        return cls(field, len(rows), ncols, data)

    @classmethod
    def column(cls, field, values):
        values = list(values)
        return cls(field, len(values), 1, {(i, 0): v for i, v in enumerate(values)})

    @classmethod
    def matrix_unit(cls, field, n, i, j):
        return cls(field, n, n, {(i, j): field.one})

    # -- access -----------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def conductor(self):
        return self.field.n

    def entry(self, i, j) -> CycScalar:
        return self._data.get((i, j), self.field.zero)

    def __getitem__(self, ij):
        return self.entry(*ij)

    def items(self):
        """Nonzero entries as ((i, j), value), in row-major order."""
        return sorted(self._data.items())

    def nnz(self):
        return len(self._data)

    def to_rows(self):
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def column_values(self, j=0):
        return [self.entry(i, j) for i in range(self.rows)]

    def _rows_index(self):
        if self._by_row is None:
            by_row = {}
            for (i, j), v in self._data.items():
                by_row.setdefault(i, []).append((j, v))
            self._by_row = by_row
        return self._by_row

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self._data

    def is_square(self):
        return self.rows == self.cols

    def is_diagonal(self):
        return all(i == j for i, j in self._data)

    def scalar_value(self):
        """c if self == c*I, else None."""
        if not self.is_square():
            return None
        if not self._data:
            return self.field.zero
        if not self.is_diagonal() or len(self._data) != self.rows:
            return None
        vals = set(self._data.values())
        return next(iter(vals)) if len(vals) == 1 else None

    def is_monomial(self):
        """At most one nonzero per row and per column."""
        rows = {i for i, _ in self._data}
        cols = {j for _, j in self._data}
        return len(rows) == len(cols) == len(self._data)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if other.field is not self.field:
            raise ConductorMismatch(
                f"matrix over Q(zeta_{self.field.n}) combined with Q(zeta_{other.field.n})"
            )

    def __add__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        data = dict(self._data)
        for k, v in other._data.items():
            data[k] = data[k] + v if k in data else v
        return CycMatrix(self.field, self.rows, self.cols, data)

    def __neg__(self):
        return CycMatrix(self.field, self.rows, self.cols, {k: -v for k, v in self._data.items()})

    def __sub__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = self.field(c)
        if not c:
            return CycMatrix(self.field, self.rows, self.cols)
        return CycMatrix(self.field, self.rows, self.cols, {k: c * v for k, v in self._data.items()})

    def __mul__(self, other):
        if isinstance(other, CycMatrix):
            self._check(other)
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            right = other._rows_index()
            acc = {}
            for (i, k), a in self._data.items():
                for j, b in right.get(k, ()):
                    key = (i, j)
                    p = a * b
                    acc[key] = acc[key] + p if key in acc else p
            return CycMatrix(self.field, self.rows, other.cols, acc)
        if isinstance(other, (CycScalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (CycScalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = CycMatrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def trace(self) -> CycScalar:
        if not self.is_square():
            raise ShapeError("trace of a non-square matrix")
        total = self.field.zero
        for (i, j), v in self._data.items():
            if i == j:
                total = total + v
        return total

    def transpose(self):
        return CycMatrix(self.field, self.cols, self.rows, {(j, i): v for (i, j), v in self._data.items()})

    def inverse(self):
        if not self.is_square():
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        if self.is_monomial() and len(self._data) == n:
            return CycMatrix(self.field, n, n, {(j, i): v.inverse() for (i, j), v in self._data.items()})
        from .linalg import solve

        cols = []
        for j in range(n):
            e = CycMatrix.column(self.field, [self.field.one if i == j else 0 for i in range(n)])
            sol = solve(self, e)
            if sol is None or sol.kernel:
                raise SingularMatrixError("matrix is singular")
            cols.append(sol.particular)
        data = {}
        for j, col in enumerate(cols):
            for (i, _), v in col._data.items():
                data[(i, j)] = v
        return CycMatrix(self.field, n, n, data)

    # -- comparison / display -------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.field is other.field and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.n, self.shape, frozenset(self._data.items())))
        return self._hash

    def __reduce__(self):
        return (_rebuild_matrix, (self.field, self.rows, self.cols, self._data))

    def to_strings(self):
        return [[str(v) for v in row] for row in self.to_rows()]

    def __repr__(self):
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"CycMatrix[{self.rows}x{self.cols}]({body})"


def _rebuild_matrix(field, rows, cols, data):
    return CycMatrix(field, rows, cols, data)


def commutator_group(a: CycMatrix, b: CycMatrix) -> CycMatrix:
    """The group commutator a b a^-1 b^-1 of invertible matrices."""
    return a * b * a.inverse() * b.inverse()
