"""Dense exact matrices with fraction-free (Bareiss) elimination.

Shapes stay small (at most ~50 on a side) so everything is plain row-major
lists.  The elimination is the one-step Bareiss scheme: intermediate entries
are minors of the input, which keeps numerators and denominators from
exploding on the d x d systems the rest of the package builds.
"""

from __future__ import annotations

from .errors import ShapeError, SingularMatrix
from .scalars import ONE, ZERO, is_unit


class Matrix:
    """Immutable-by-convention dense matrix over an exact scalar ring."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [list(row) for row in data]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.cols:
                raise ShapeError("ragged rows")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, rows, cols, flat):
        if len(flat) != rows * cols:
            raise ShapeError("flat length does not match shape")
        it = iter(flat)
        return cls([[next(it) for _ in range(cols)] for _ in range(rows)])

    @classmethod
    def column(cls, entries):
        return cls([[e] for e in entries])

    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def entry_set(self, i, j, value):
        """Copy with one entry replaced."""
        data = [list(row) for row in self.data]
        data[i][j] = value
        return Matrix(data)

    def flat(self):
        return [x for row in self.data for x in row]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [row[j] for row in self.data]

    def block(self, r0, r1, c0, c1):
        return Matrix([row[c0:c1] for row in self.data[r0:r1]])

    @classmethod
    def hstack(cls, a, b):
        if a.rows != b.rows:
            raise ShapeError("hstack row mismatch")
        return cls([ra + rb for ra, rb in zip(a.data, b.data)])

    @classmethod
    def vstack(cls, a, b):
        if a.cols != b.cols:
            raise ShapeError("vstack column mismatch")
        return cls(a.data + b.data)

    @classmethod
    def block4(cls, tl, tr, bl, br):
        return cls.vstack(cls.hstack(tl, tr), cls.hstack(bl, br))

    def __add__(self, other):
        self._check_shape(other)
        return Matrix(
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __sub__(self, other):
        self._check_shape(other)
        return Matrix(
            [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def _check_shape(self, other):
        if self.shape() != other.shape():
            raise ShapeError(f"shape mismatch {self.shape()} vs {other.shape()}")

    def __neg__(self):
        return Matrix([[-x for x in row] for row in self.data])

    def scale(self, s):
        return Matrix([[s * x for x in row] for row in self.data])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape()} by {other.shape()}")
        cols = list(zip(*other.data))
        return Matrix([[_dot(row, col) for col in cols] for row in self.data])

    def __rmul__(self, s):
        return self.scale(s)

    def transpose(self):
        if self.rows == 0:
            return Matrix([[] for _ in range(self.cols)]) if self.cols else Matrix([])
        return Matrix([list(col) for col in zip(*self.data)])

    def trace(self):
        if self.rows != self.cols:
            raise ShapeError("trace of a non-square matrix")
        total = ZERO
        for i in range(self.rows):
            total = total + self.data[i][i]
        return total

    def is_zero(self):
        return all(not x for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape() == other.shape() and all(
            x == y for ra, rb in zip(self.data, other.data) for x, y in zip(ra, rb)
        )

    def __repr__(self):
        return f"Matrix({self.data!r})"


def _dot(xs, ys):
    total = ZERO
    for x, y in zip(xs, ys):
        if x and y:
            total = total + x * y
    return total


def _echelon(rows, ncols):
    """In-place fraction-free echelon.  Returns (pivot positions, swap parity)."""
    m = len(rows)
    pivots = []
    parity = 1
    prev = ONE
    r = 0
    for c in range(ncols):
        if r == m:
            break
        pr = None
        for i in range(r, m):
            if is_unit(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
            parity = -parity
        piv = rows[r][c]
        rescale = piv / prev
        for i in range(r + 1, m):
            fac = rows[i][c]
            row_i = rows[i]
            if fac:
                row_r = rows[r]
                for j in range(c, ncols):
                    row_i[j] = (piv * row_i[j] - fac * row_r[j]) / prev
            elif rescale != 1:
                # zero multiplier still needs the Bareiss rescale to keep
                # every entry a minor of the input
                for j in range(c, ncols):
                    if row_i[j]:
                        row_i[j] = row_i[j] * rescale
        pivots.append((r, c))
        prev = piv
        r += 1
    return pivots, parity


def rank(m: Matrix) -> int:
    """Row rank over the scalar field."""
    rows = [list(r) for r in m.data]
    pivots, _ = _echelon(rows, m.cols)
    return len(pivots)


def _back_substitute(rows, pivots, nunknowns, rhs_col):
    x = [ZERO] * nunknowns
    for r, c in reversed(pivots):
        acc = rows[r][rhs_col] if rhs_col is not None else ZERO
        row_r = rows[r]
        for j in range(c + 1, nunknowns):
            if row_r[j] and x[j]:
                acc = acc - row_r[j] * x[j]
        x[c] = acc / row_r[c]
    return x


def solve(a: Matrix, b: Matrix):
    """Exact solution X of a * X = b, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise ShapeError("solve: row mismatch")
    rows = [ra + rb for ra, rb in zip(a.data, b.data)]
    total = a.cols + b.cols
    pivots, _ = _echelon(rows, total)
    for _, c in pivots:
        if c >= a.cols:
            return None
    cols = [_back_substitute(rows, pivots, a.cols, a.cols + k) for k in range(b.cols)]
    return Matrix(cols).transpose()


def kernel(m: Matrix) -> Matrix:
    """Basis of the right null space, one column per basis vector."""
    rows = [list(r) for r in m.data]
    pivots, _ = _echelon(rows, m.cols)
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(m.cols) if c not in pivot_cols]
    basis = []
    for f in free:
        x = [ZERO] * m.cols
        x[f] = ONE
        for r, c in reversed(pivots):
            acc = ZERO
            row_r = rows[r]
            for j in range(c + 1, m.cols):
                if row_r[j] and x[j]:
                    acc = acc + row_r[j] * x[j]
            x[c] = -acc / row_r[c]
        basis.append(x)
    if not basis:
        return Matrix([[] for _ in range(m.cols)]) if m.cols else Matrix([])
    return Matrix(basis).transpose()


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ShapeError("inverse of a non-square matrix")
    inv = solve(m, Matrix.identity(m.rows))
    if inv is None:
        raise SingularMatrix(f"{m.rows}x{m.cols} matrix is singular")
    return inv


def det(m: Matrix):
    """Exact determinant (last Bareiss pivot, adjusted for row swaps)."""
    if m.rows != m.cols:
        raise ShapeError("determinant of a non-square matrix")
    if m.rows == 0:
        return ONE
    rows = [list(r) for r in m.data]
    pivots, parity = _echelon(rows, m.cols)
    if len(pivots) < m.rows:
        return ZERO
    value = rows[m.rows - 1][m.cols - 1]
    return -value if parity < 0 else value


class RowSpace:
    """Incrementally built row space with exact membership tests.

    Stored rows are swept in insertion order; each row is reduced against all
    earlier ones, so a sweep never reintroduces a cleared pivot column.
    """

    def __init__(self, ncols, rows=()):
        self.ncols = ncols
        self._ech = []
        self._piv = []
        self.dim = 0
        for row in rows:
            self.add(row)

    def _residual(self, row):
        work = list(row)
        for erow, pc in zip(self._ech, self._piv):
            if work[pc]:
                f1, f2 = erow[pc], work[pc]
                work = [f1 * w - f2 * e for w, e in zip(work, erow)]
        return work

    def contains(self, row) -> bool:
        return not any(self._residual(row))

    def add(self, row) -> bool:
        """Insert the row; True when it enlarged the space."""
        work = self._residual(row)
        lead = next((j for j in range(self.ncols) if work[j]), None)
        if lead is None:
            return False
        self._ech.append(work)
        self._piv.append(lead)
        self.dim += 1
        return True


def independent_rows(rows_in, ncols):
    """Subset of the input rows forming a basis of their span (order kept)."""
    space = RowSpace(ncols)
    return [list(row) for row in rows_in if space.add(row)]
