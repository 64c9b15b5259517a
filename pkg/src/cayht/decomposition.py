"""Structured matrices behind the closed forms, and their printed inverses.

Two factorizations are materialized and checked entrywise in exact
arithmetic:

* the block system of the alternating-weight cycle factors through an
  all-ones upper-triangular matrix U and a dense core R
  (H = U^-1 R (U^-1)^T), and
* the forward-walk system of the two-step directed cycle factors as a
  row-swap times lower times upper triangular product (H = P L U).

Every closed-form inverse table is transcribed verbatim, case guards in
their source order, with no algebraic simplification: the point of this
module is auditing the printed text against exact numeric inverses.
Discrepancies are returned as DiscrepancyReport values, never raised.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import GraphParameterError
from .hitting import build_H_pm1, build_H_plus12
from .numerics import (
    DenseMatrix,
    DiscrepancyReport,
    ONE,
    ZERO,
    compare,
    invert,
    mat_mul,
    mat_mul3,
)

__all__ = [
    "build_U2n",
    "build_R2n",
    "r2n_inverse_closed",
    "verify_pm1_decomposition",
    "h2n_inverse_closed",
    "build_PN",
    "build_LN",
    "build_UN",
    "ln_inverse_closed",
    "un_inverse_closed",
    "verify_plus12_lu",
    "hn_inverse_closed",
    "DiscrepancyReport",
]


def _check_p_open(p: Fraction):
    if not 0 < p < 1:
        raise GraphParameterError(f"p must satisfy 0 < p < 1, got {p}")


def _check_p_half_open(p: Fraction):
    # The triangular factors divide by p, so p = 0 is not representable.
    if not 0 < p <= 1:
        raise GraphParameterError(f"p must satisfy 0 < p <= 1, got {p}")


# ---------------------------------------------------------------------------
# Alternating-weight cycle: U, R and the printed inverse tables
# ---------------------------------------------------------------------------


def build_U2n(n: int) -> DenseMatrix:
    """Upper-triangular all-ones matrix of size 2(2n-1)."""
    if n < 2:
        raise GraphParameterError("need n >= 2")
    m = 2 * (2 * n - 1)
    return DenseMatrix.build(m, m, lambda i, j: ONE if j >= i else ZERO)


def build_R2n(n: int, p) -> DenseMatrix:
    """Core factor of the block decomposition; seven cases as printed."""
    p = Fraction(p)
    _check_p_open(p)
    if n < 2:
        raise GraphParameterError("need n >= 2")
    m = 2 * (2 * n - 1)
    two_n = 2 * n

    def entry(i, j):
        if i == j and i % 2 == 1 and 1 <= i < two_n:
            return Fraction(2)
        if i == j and i % 2 == 0 and 1 <= i < two_n:
            return 3 - 2 * p
        if i == j and i % 2 == 1 and two_n <= i <= m:
            return 2 * p
        if i != j and 1 <= i < two_n and 1 <= j < two_n:
            return 2 - p
        if i != j and (two_n < i <= m or two_n < j <= m):
            return p
        return ONE

    return DenseMatrix.build(m, m, entry)


def r2n_inverse_closed(n: int, p) -> DenseMatrix:
    """Printed inverse of the core factor; nine cases, scaled by 1/n."""
    p = Fraction(p)
    _check_p_open(p)
    if n < 2:
        raise GraphParameterError("need n >= 2")
    m = 2 * (2 * n - 1)
    two_n = 2 * n
    scale = Fraction(1, n)

    def entry(i, j):
        if i == j and i % 2 == 1:
            return scale * (n - (1 - p)) / p
        if i == j and i % 2 == 0 and i != two_n:
            return scale * (n - p) / (1 - p)
        if i == j == two_n:
            return scale * 2 * (n - p) / (1 - p)
        if i % 2 == 1 and j % 2 == 1 and (i < two_n < j or j < two_n < i):
            return scale * -(1 - p) / p
        if i % 2 == 0 and j % 2 == 0 and i != j and (i <= two_n <= j or j <= two_n <= i):
            return scale * -p / (1 - p)
        if i % 2 != j % 2 and (i <= two_n <= j or j <= two_n <= i):
            return scale * Fraction(-1)
        return ZERO

    return DenseMatrix.build(m, m, entry)


def verify_pm1_decomposition(n: int, p) -> DiscrepancyReport:
    """Exact entrywise check of H = U^-1 R (U^-1)^T for the block system."""
    p = Fraction(p)
    h, _ = build_H_pm1(n, p)
    u_inv = invert(build_U2n(n))
    product = mat_mul3(u_inv, build_R2n(n, p), u_inv.transpose())
    return compare(product, h, context=f"pm1 block decomposition n={n} p={p}")


def h2n_inverse_closed(n: int, p) -> DenseMatrix:
    """Printed inverse of the block system matrix; seventeen cases.

    Scaled by 1/(4np(1-p)).  Transcribed verbatim; the audit decides which
    entries match the exact inverse.
    """
    p = Fraction(p)
    _check_p_open(p)
    if n < 2:
        raise GraphParameterError("need n >= 2")
    m = 2 * (2 * n - 1)
    two_n = 2 * n
    four_n = 4 * n
    scale = 1 / (4 * n * p * (1 - p))

    def entry(i, j):
        io, jo = i % 2 == 1, j % 2 == 1
        if 1 <= j <= i <= two_n - 1:
            if io and jo:
                return scale * (two_n - i - 1 + 2 * p) * (j + 1 - 2 * p)
            if not io and jo:
                return scale * (two_n - i) * (j + 1 - 2 * p)
            if io and not jo:
                return scale * (two_n - i - 1 + 2 * p) * j
            return scale * (two_n - i) * j
        if 1 <= i < j <= two_n - 1:
            if io and jo:
                return scale * (two_n - j - 1 + 2 * p) * (i + 1 - 2 * p)
            if not io and jo:
                return scale * (two_n - j) * (i + 1 - 2 * p)
            if io and not jo:
                return scale * (two_n - j - 1 + 2 * p) * i
            return scale * (two_n - j) * i
        if two_n <= j <= i <= m:
            if io and jo:
                return scale * (two_n - four_n + i + 2 * p) * (four_n - j - 2 * p)
            if not io and jo:
                return scale * (two_n - four_n + i + 1) * (four_n - j - 2 * p)
            if io and not jo:
                return scale * (two_n - four_n + i + 2 * p) * (four_n - j - 1)
            return scale * (two_n - four_n + i + 1) * (four_n - j - 1)
        if two_n <= i < j <= m:
            if io and jo:
                return scale * (two_n - j - 1 + 2 * p) * (four_n - i - 2 * p)
            if not io and jo:
                return scale * (two_n - four_n + j + 1) * (four_n - i - 2 * p)
            if io and not jo:
                return scale * (two_n - four_n + j + 2 * p) * (four_n - i - 1)
            return scale * (two_n - four_n + j + 1) * (four_n - i - 1)
        return ZERO

    return DenseMatrix.build(m, m, entry)


# ---------------------------------------------------------------------------
# Two-step directed cycle: P, L, U and the printed inverse tables
# ---------------------------------------------------------------------------


def _check_lu_size(N: int):
    # Below N = 6 the special first rows/columns of the displayed patterns
    # would overlap the trailing band; only the oracle path covers 3 <= N < 6.
    if N < 6:
        raise GraphParameterError("triangular factor patterns are defined for N >= 6")


def build_PN(N: int) -> DenseMatrix:
    """Permutation matrix of size N-1 swapping coordinates 1 and 2."""
    _check_lu_size(N)
    m = N - 1

    def entry(i, j):
        if i in (1, 2):
            return ONE if j == 3 - i else ZERO
        return ONE if i == j else ZERO

    return DenseMatrix.build(m, m, entry)


def build_LN(N: int, p) -> DenseMatrix:
    """Unit lower-triangular factor as displayed (N >= 6)."""
    p = Fraction(p)
    _check_p_half_open(p)
    _check_lu_size(N)
    m = N - 1

    def entry(i, j):
        if i == j:
            return ONE
        if (i, j) == (2, 1):
            return -1 / p
        if (i, j) == (3, 1):
            return -(-1 + p) / p
        if (i, j) == (3, 2):
            return -1 + p - p * p
        if (i, j) == (4, 2):
            return p * (-1 + p)
        if i - j == 1 and 4 <= i <= m:
            return -p
        if i - j == 2 and 5 <= i <= m:
            return -1 + p
        return ZERO

    return DenseMatrix.build(m, m, entry)


def ln_inverse_closed(N: int, p) -> DenseMatrix:
    """Printed inverse of the lower factor."""
    p = Fraction(p)
    _check_p_half_open(p)
    _check_lu_size(N)
    m = N - 1
    pm1 = p - 1

    def entry(i, j):
        if i == j:
            return ONE
        if (i, j) == (2, 1):
            return 1 / p
        if j == 1 and i >= 3:
            return (pm1 ** (i - 1) - 1) / (p - 2)
        if j == 2 and i >= 3:
            return (pm1**i - 1) / (p - 2)
        if 3 <= j < i:
            return (pm1 ** (i - j + 1) - 1) / (p - 2)
        return ZERO

    return DenseMatrix.build(m, m, entry)


def build_UN(N: int, p) -> DenseMatrix:
    """Upper-triangular factor as displayed (N >= 6)."""
    p = Fraction(p)
    _check_p_half_open(p)
    _check_lu_size(N)
    m = N - 1
    pm1 = p - 1

    def entry(i, j):
        if (i, j) == (1, 1):
            return -p
        if (i, j) == (1, 2):
            return ONE
        if (i, j) == (2, 2):
            return 1 / p
        if i == 2 and j == m:
            return -1 + p
        if i == j == m:
            return (pm1**N - 1) / (p - 2)
        if 3 <= i <= m - 1 and j == m:
            return (pm1 ** (i + 1) - p + 1) / (p - 2)
        if i == j and 3 <= i <= m - 1:
            return ONE
        return ZERO

    return DenseMatrix.build(m, m, entry)


def un_inverse_closed(N: int, p) -> DenseMatrix:
    """Printed inverse of the upper factor."""
    p = Fraction(p)
    _check_p_half_open(p)
    _check_lu_size(N)
    m = N - 1
    pm1 = p - 1
    den = 1 - pm1**N
    if den == 0:
        raise GraphParameterError(f"degenerate denominator at p={p}, N={N}")

    def entry(i, j):
        if (i, j) == (1, 1):
            return -1 / p
        if (i, j) == (1, 2):
            return ONE
        if i == 1 and j == m:
            return (pm1**2 - p + 1) / den
        if (i, j) == (2, 2):
            return p
        if i == 2 and j == m:
            return (pm1**3 - p + 1) / den
        if i == j == m:
            return (p - 2) / (pm1**N - 1)
        if 3 <= i <= m - 1 and j == m:
            return (pm1 ** (i + 1) - p + 1) / den
        if i == j and 3 <= i <= m - 1:
            return ONE
        return ZERO

    return DenseMatrix.build(m, m, entry)


def verify_plus12_lu(N: int, p) -> DiscrepancyReport:
    """Exact entrywise check of H = P L U for the forward-walk system."""
    p = Fraction(p)
    h = build_H_plus12(N, p)
    product = mat_mul3(build_PN(N), build_LN(N, p), build_UN(N, p))
    return compare(product, h, context=f"plus12 LU decomposition N={N} p={p}")


def hn_inverse_closed(N: int, p) -> DenseMatrix:
    """Printed inverse of the forward-walk system matrix; eleven cases.

    Scaled by 1/((p-2)((p-1)^N - 1)).  Transcribed verbatim; one case uses
    a negative power of (p-1), so p = 1 is a degenerate denominator here
    even though the system itself is fine there.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GraphParameterError(f"p must satisfy 0 <= p <= 1, got {p}")
    _check_lu_size(N)
    m = N - 1
    pm1 = p - 1
    den = (p - 2) * (pm1**N - 1)
    if den == 0 or pm1 == 0:
        raise GraphParameterError(f"degenerate denominator at p={p}, N={N}")
    scale = 1 / den

    def entry(i, j):
        if i == j == 1:
            return scale * (p - 2) ** 2
        if i == j == 2:
            return scale * (p - 2) * (pm1**N - p * pm1 ** (N - 1) + p * p - p - 1)
        if (i, j) == (1, 2):
            return scale * -(p - 2) * (pm1 ** (N - 1) - p + 1)
        if (i, j) == (2, 1):
            return scale * p * (p - 2) ** 2
        if i == 1 and 3 <= j <= m:
            return scale * -(p - 2) * (pm1 ** (N - j + 1) - p + 1)
        if i == 2 and 3 <= j <= m:
            return scale * -p * (p - 2) * (pm1 ** (N - j + 1) - p + 1)
        if 3 <= i <= N - 2 and j == 1:
            return scale * (p - 2) * (pm1**i - 1)
        if 3 <= i <= N - 2 and j == 2:
            return scale * (p - 2) * (p * pm1 ** (i - 1) - pm1 ** (N - 1) - 1)
        if 3 <= i < j <= m:
            return scale * -(pm1**i - 1) * (pm1 ** (N - j + 1) - p + 1)
        if 3 <= j <= i <= N - 2:
            return scale * ((p - 2) * (pm1**i - 1) + (pm1 ** (-j + 1) - 1) * (pm1**N - pm1**i))
        if i == m:
            return scale * (p - 2) * (pm1 ** (N - j) - 1)
        raise AssertionError(f"uncovered index ({i},{j})")

    return DenseMatrix.build(m, m, entry)
