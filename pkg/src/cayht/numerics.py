"""Exact dense linear algebra over arbitrary-precision rationals.

Every verification path in this package ultimately reduces to matrix
arithmetic done here.  The default scalar is `fractions.Fraction`, so
products, solves and inversions are exact; a binary64 instantiation of the
same matrices is available as an opt-in fast path for timing experiments,
never for verification.

Matrix indices in the public API are 1-based, matching the usual
mathematical (i, j) convention of the formulas being audited.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

Rational = Fraction
Scalar = Union[Fraction, float]

# Detailed discrepancy lists are capped; the total count is always exact.
MAX_REPORT_ENTRIES = 100

ZERO = Fraction(0)
ONE = Fraction(1)


class LinearAlgebraError(ValueError):
    """Base class for errors raised by this module."""


class DimensionMismatch(LinearAlgebraError):
    pass


class SingularMatrixError(LinearAlgebraError):
    """Raised when elimination finds no usable pivot.

    `column` is the 1-based index of the offending pivot column.
    """

    def __init__(self, column: int):
        self.column = column
        super().__init__(f"singular matrix: no nonzero pivot in column {column}")


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable row-major dense matrix over Fraction or float scalars."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "DenseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged row lengths")
        return cls(nrows, ncols, tuple(x for r in rows for x in r))

    @classmethod
    def build(cls, rows: int, cols: int, fn: Callable[[int, int], Scalar]) -> "DenseMatrix":
        """Construct from a function of 1-based (i, j)."""
        return cls(rows, cols, tuple(fn(i, j) for i in range(1, rows + 1) for j in range(1, cols + 1)))

    @classmethod
    def identity(cls, n: int) -> "DenseMatrix":
        return cls.build(n, n, lambda i, j: ONE if i == j else ZERO)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "DenseMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    def at(self, i: int, j: int) -> Scalar:
        """Entry at 1-based (i, j)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"index ({i},{j}) outside {self.rows}x{self.cols} matrix")
        return self.entries[(i - 1) * self.cols + (j - 1)]

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return self.at(i, j)

    def row(self, i: int) -> tuple:
        if not 1 <= i <= self.rows:
            raise IndexError(f"row {i} outside matrix")
        return self.entries[(i - 1) * self.cols : i * self.cols]

    def column(self, j: int) -> tuple:
        if not 1 <= j <= self.cols:
            raise IndexError(f"column {j} outside matrix")
        return self.entries[j - 1 :: self.cols]

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix.build(self.cols, self.rows, lambda i, j: self.at(j, i))

    def is_float(self) -> bool:
        return any(isinstance(x, float) for x in self.entries)

    def to_float(self) -> "DenseMatrix":
        """Binary64 copy (the opt-in fast path)."""
        return DenseMatrix(self.rows, self.cols, tuple(float(x) for x in self.entries))

    def with_entry(self, i: int, j: int, value: Scalar) -> "DenseMatrix":
        """Copy with one entry replaced; used by sensitivity checks."""
        self.at(i, j)  # bounds check
        k = (i - 1) * self.cols + (j - 1)
        return DenseMatrix(self.rows, self.cols, self.entries[:k] + (value,) + self.entries[k + 1 :])


@dataclass(frozen=True)
class Discrepancy:
    i: int
    j: int
    expected: Scalar
    actual: Scalar


@dataclass(frozen=True)
class DiscrepancyReport:
    """Entrywise audit result: where and how two matrices disagree.

    An empty report (total_mismatches == 0) means exact agreement.  At most
    MAX_REPORT_ENTRIES individual entries are retained; total_mismatches is
    always the full count.
    """

    context: str
    entries: tuple
    total_mismatches: int
    truncated: bool

    @property
    def ok(self) -> bool:
        return self.total_mismatches == 0

    def to_json_dict(self) -> dict:
        return {
            "context": self.context,
            "total_mismatches": self.total_mismatches,
            "truncated": self.truncated,
            "entries": [
                {
                    "i": e.i,
                    "j": e.j,
                    "expected": _scalar_str(e.expected),
                    "actual": _scalar_str(e.actual),
                }
                for e in self.entries
            ],
        }


def _scalar_str(x: Scalar) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return repr(x)


def _check_same_field(a: DenseMatrix, b: DenseMatrix):
    if a.is_float() != b.is_float():
        raise DimensionMismatch("mixed scalar fields (Fraction vs float)")


def mat_mul(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Matrix product, exact in the rational instantiation."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    _check_same_field(a, b)
    n, m, k = a.rows, b.cols, a.cols
    arows = [a.row(i) for i in range(1, n + 1)]
    bcols = [b.column(j) for j in range(1, m + 1)]
    out = []
    for i in range(n):
        ra = arows[i]
        for j in range(m):
            cb = bcols[j]
            acc = ra[0] * cb[0]
            for t in range(1, k):
                acc += ra[t] * cb[t]
            out.append(acc)
    return DenseMatrix(n, m, tuple(out))


def mat_mul3(a: DenseMatrix, b: DenseMatrix, c: DenseMatrix) -> DenseMatrix:
    return mat_mul(mat_mul(a, b), c)


def _pivot_row(rows_, col, start, exact):
    # Exact field: first nonzero suffices (no stability concern).
    # Float field: partial pivoting by largest magnitude.
    if exact:
        for r in range(start, len(rows_)):
            if rows_[r][col] != 0:
                return r
        return None
    best, best_mag = None, 0.0
    for r in range(start, len(rows_)):
        mag = abs(rows_[r][col])
        if mag > best_mag:
            best, best_mag = r, mag
    return best


def gauss_solve(a: DenseMatrix, b: Sequence[Scalar]) -> tuple:
    """Solve a·x = b by Gaussian elimination.

    Exact over Fraction entries (pivot = first nonzero); partial pivoting in
    the float instantiation.  Raises SingularMatrixError with the failing
    1-based column index when no pivot exists.
    """
    if a.rows != a.cols:
        raise DimensionMismatch(f"matrix is {a.rows}x{a.cols}, not square")
    if len(b) != a.rows:
        raise DimensionMismatch(f"rhs length {len(b)} != {a.rows}")
    n = a.rows
    exact = not a.is_float()
    rows_ = [list(a.row(i)) + [b[i - 1]] for i in range(1, n + 1)]

    for col in range(n):
        piv = _pivot_row(rows_, col, col, exact)
        if piv is None or rows_[piv][col] == 0:
            raise SingularMatrixError(col + 1)
        if piv != col:
            rows_[col], rows_[piv] = rows_[piv], rows_[col]
        pivot = rows_[col][col]
        prow = rows_[col]
        for r in range(col + 1, n):
            factor = rows_[r][col]
            if factor == 0:
                continue
            factor = factor / pivot
            rrow = rows_[r]
            for c in range(col, n + 1):
                rrow[c] -= factor * prow[c]

    x = [None] * n
    for i in range(n - 1, -1, -1):
        acc = rows_[i][n]
        for j in range(i + 1, n):
            acc -= rows_[i][j] * x[j]
        x[i] = acc / rows_[i][i]
    return tuple(x)


def invert(a: DenseMatrix) -> DenseMatrix:
    """Inverse by Gauss-Jordan elimination; a·invert(a) = I exactly over Fraction."""
    if a.rows != a.cols:
        raise DimensionMismatch(f"matrix is {a.rows}x{a.cols}, not square")
    n = a.rows
    exact = not a.is_float()
    one = ONE if exact else 1.0
    zero = ZERO if exact else 0.0
    rows_ = [
        list(a.row(i)) + [one if i == j else zero for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]

    for col in range(n):
        piv = _pivot_row(rows_, col, col, exact)
        if piv is None or rows_[piv][col] == 0:
            raise SingularMatrixError(col + 1)
        if piv != col:
            rows_[col], rows_[piv] = rows_[piv], rows_[col]
        pivot = rows_[col][col]
        prow = rows_[col]
        for c in range(col, 2 * n):
            prow[c] = prow[c] / pivot
        for r in range(n):
            if r == col:
                continue
            factor = rows_[r][col]
            if factor == 0:
                continue
            rrow = rows_[r]
            for c in range(col, 2 * n):
                rrow[c] -= factor * prow[c]

    return DenseMatrix(n, n, tuple(rows_[i][n + j] for i in range(n) for j in range(n)))


def compare(a: DenseMatrix, b: DenseMatrix, tol: Scalar = ZERO, context: str = "") -> DiscrepancyReport:
    """Entrywise comparison; reports every (i, j) with |a(i,j) - b(i,j)| > tol.

    tol = 0 is the rational-field contract (exact equality).  An empty
    report means the matrices agree everywhere.
    """
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DimensionMismatch(
            f"cannot compare {a.rows}x{a.cols} with {b.rows}x{b.cols}"
        )
    hits = []
    total = 0
    for i in range(1, a.rows + 1):
        ra, rb = a.row(i), b.row(i)
        for j in range(1, a.cols + 1):
            x, y = ra[j - 1], rb[j - 1]
            if abs(x - y) > tol:
                total += 1
                if len(hits) < MAX_REPORT_ENTRIES:
                    # convention: `a` is the value under test, `b` the reference
                    hits.append(Discrepancy(i=i, j=j, expected=y, actual=x))
    return DiscrepancyReport(
        context=context,
        entries=tuple(hits),
        total_mismatches=total,
        truncated=total > len(hits),
    )
