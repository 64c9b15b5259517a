"""Average hitting times: first-step oracle, structured systems, closed forms.

Three independent routes to the same quantity live here:

1. ``oracle_hitting`` -- exact first-step analysis on an arbitrary weighted
   digraph.  This is the ground truth every other route is audited against.
2. ``build_H_pm1`` / ``build_H_plus12`` -- the structured linear systems for
   the two weighted families (solved with the exact Gaussian solver).
3. Closed-form evaluations (``ht_pm1_closed``, ``ht_plus12_closed``) and the
   two unweighted baseline formulas, transcribed exactly as printed in their
   sources and never silently corrected: where a printed formula disagrees
   with the oracle, the disagreement is the finding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .graph import (
    GraphParameterError,
    UnreachableVertexError,
    WeightedDigraph,
    build_graph,
    laplacian,
    minor_drop_first,
    minor_drop_last,
    pm1_alternating,
    plus_one_two,
    reachable_set,
    reverse,
    transition_matrix,
)
from .numerics import DenseMatrix, Rational, ZERO, ONE, gauss_solve


@dataclass(frozen=True)
class HittingVector:
    """Hitting times out of one start vertex: values[t] = h(start, t)."""

    start: int
    values: Dict[int, Rational]


def oracle_hitting(g: WeightedDigraph, target: int) -> Dict[int, Rational]:
    """h(u, target) for every start u, by exact first-step analysis.

    Solves h(target) = 0, h(u) = 1 + sum_v P(u,v) h(v) for u != target in
    the rational field.  Raises UnreachableVertexError (naming the offending
    start vertices) when some vertex cannot reach the target.
    """
    n = g.vertex_count
    if not 0 <= target < n:
        raise GraphParameterError(f"target {target} outside graph")
    can_reach = reachable_set(reverse(g), target)
    if len(can_reach) != n:
        stuck = sorted(set(range(n)) - can_reach)
        raise UnreachableVertexError(
            f"infinite hitting time: vertices {stuck} cannot reach target {target}",
            vertices=stuck,
        )
    p = transition_matrix(g)
    others = [u for u in range(n) if u != target]
    pos = {u: k for k, u in enumerate(others)}
    a = DenseMatrix.build(
        n - 1,
        n - 1,
        lambda i, j: (ONE if i == j else ZERO) - p.at(others[i - 1] + 1, others[j - 1] + 1),
    )
    x = gauss_solve(a, [ONE] * (n - 1))
    out = {target: ZERO}
    for u in others:
        out[u] = x[pos[u]]
    return out


def hitting_from(g: WeightedDigraph, start: int) -> HittingVector:
    """h(start, t) for every target t; one oracle solve per target."""
    values = {start: ZERO}
    for t in range(g.vertex_count):
        if t != start:
            values[t] = oracle_hitting(g, t)[start]
    return HittingVector(start=start, values=values)


# ---------------------------------------------------------------------------
# Alternating-weight cycle family (2n vertices, weights p and q = 1-p)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexMap2n:
    """Bijection between positions of the stacked hitting vector and pairs.

    The vector of length 2(2n-1) interleaves hitting times from the two
    essentially distinct start vertices.  Position i (1-based) holds:

    * i odd,  1 <= i <= 2n-1:        h(1, 2n-i+1)
    * i even, 1 <= i <= 2n-1:        h(0, 2n-i)
    * i odd,  2n <= i <= 2(2n-1):    h(1, 4n-i)
    * i even, 2n <= i <= 2(2n-1):    h(0, 4n-i-1)

    Odd positions carry start 1, even positions start 0, in both halves.
    The second coordinate is kept in its source parameterization, where a
    target of 2n denotes vertex 0 (targets are read mod 2n).
    """

    n: int

    @property
    def size(self) -> int:
        return 2 * (2 * self.n - 1)

    def pair(self, i: int) -> Tuple[int, int]:
        """(start, target) for position i; target in 1..2n."""
        n = self.n
        if not 1 <= i <= self.size:
            raise GraphParameterError(f"position {i} outside 1..{self.size}")
        if i <= 2 * n - 1:
            return (1, 2 * n - i + 1) if i % 2 == 1 else (0, 2 * n - i)
        return (1, 4 * n - i) if i % 2 == 1 else (0, 4 * n - i - 1)

    def vertex_pair(self, i: int) -> Tuple[int, int]:
        """(start, target) with the target reduced to an actual vertex label."""
        s, ell = self.pair(i)
        return s, ell % (2 * self.n)

    def position(self, start: int, ell: int) -> int:
        """Inverse map; ell in the source parameterization (1..2n)."""
        n = self.n
        if start == 0:
            if 1 <= ell <= 2 * n - 1 and ell % 2 == 0:
                return 2 * n - ell
            if 1 <= ell <= 2 * n - 1 and ell % 2 == 1:
                return 4 * n - ell - 1
        elif start == 1:
            if 2 <= ell <= 2 * n and ell % 2 == 0:
                return 2 * n - ell + 1
            if 3 <= ell <= 2 * n - 1 and ell % 2 == 1:
                return 4 * n - ell
        raise GraphParameterError(f"pair (start={start}, target={ell}) not in the index map")


def _check_p_open_interval(p: Fraction):
    if not 0 < p < 1:
        raise GraphParameterError(f"p must satisfy 0 < p < 1, got {p}")


def build_H_pm1(n: int, p) -> Tuple[DenseMatrix, IndexMap2n]:
    """Block-diagonal coefficient matrix of the stacked hitting-time system.

    The two diagonal blocks are the Laplacian minors dropping the first and
    the last row/column; solving H h = 1 and mapping positions through the
    returned IndexMap2n reproduces the oracle hitting times.
    """
    p = Fraction(p)
    _check_p_open_interval(p)
    lap = laplacian(build_graph(pm1_alternating(n, p)))
    lp = minor_drop_first(lap)
    lpp = minor_drop_last(lap)
    m = 2 * n - 1

    def entry(i, j):
        if i <= m and j <= m:
            return lp.at(i, j)
        if i > m and j > m:
            return lpp.at(i - m, j - m)
        return ZERO

    return DenseMatrix.build(2 * m, 2 * m, entry), IndexMap2n(n)


def solve_h_vector_pm1(n: int, p) -> tuple:
    """Exact solution of the stacked system (positions per IndexMap2n)."""
    h, _ = build_H_pm1(n, p)
    return gauss_solve(h, [ONE] * h.rows)


def hprime_closed(n: int, p, ell: int) -> Rational:
    """Closed form for the consecutive-difference vector, as printed.

    Five cases over 1 <= ell <= 2(2n-1); prefix sums of these values
    rebuild the hitting times.
    """
    p = Fraction(p)
    _check_p_open_interval(p)
    if not 1 <= ell <= 2 * (2 * n - 1):
        raise GraphParameterError(f"index {ell} outside 1..{2 * (2 * n - 1)}")
    if ell == 2 * n:
        return ZERO
    if ell <= 2 * n - 1:
        num = Fraction(n - ell) + p
    else:
        num = Fraction(3 * n - ell) - p
    return num / p if ell % 2 == 1 else num / (1 - p)


def ht_pm1_closed(n: int, p, start: int, ell: int) -> Rational:
    """Closed-form hitting time on the alternating-weight cycle, as printed.

    For start 0 this is h(0, ell); for start 1 it is h(1, ell+1) in the
    source parameterization (use ht_pm1 for absolute vertex targets).
    Valid for 1 <= ell <= 2n-1 and 0 < p < 1.
    """
    p = Fraction(p)
    _check_p_open_interval(p)
    if start not in (0, 1):
        raise GraphParameterError("start must be 0 or 1")
    if not 1 <= ell <= 2 * n - 1:
        raise GraphParameterError(f"target index {ell} outside 1..{2 * n - 1}")
    if ell % 2 == 0:
        num = Fraction(ell * (2 * n - ell))
    elif start == 0:
        num = (ell - 1) * (2 * n - ell + 1) + 4 * (1 - p) * (n - ell + p)
    else:
        num = (ell - 1) * (2 * n - ell + 1) + 4 * p * (n - ell + 1 - p)
    return num / (4 * p * (1 - p))


def ht_pm1(n: int, p, start: int, target: int) -> Rational:
    """Closed form with an absolute vertex target (0..2n-1, != start)."""
    two_n = 2 * n
    if not 0 <= target < two_n:
        raise GraphParameterError(f"target {target} outside graph")
    if start not in (0, 1):
        raise GraphParameterError("start must be 0 or 1")
    if target == start:
        return ZERO
    if start == 0:
        return ht_pm1_closed(n, p, 0, target)
    ell_plus_1 = target if target >= 2 else target + two_n  # vertex 0 -> 2n
    return ht_pm1_closed(n, p, 1, ell_plus_1 - 1)


def pm1_reduce(start: int, target: int, n: int) -> Tuple[int, int]:
    """Shift (start, target) to an equivalent pair with start in {0, 1}.

    Uses the even-shift symmetry h(v, t) = h(v - 2k, t - 2k) of the
    alternating-weight cycle.
    """
    two_n = 2 * n
    shift = start - (start % 2)
    return start % 2, (target - shift) % two_n


def closed_h_vector_pm1(n: int, p) -> tuple:
    """Assemble the closed-form stacked vector in IndexMap2n position order.

    Feeding this through the system matrix should give exactly the all-ones
    vector; the residual audit checks that entrywise.
    """
    im = IndexMap2n(n)
    out = []
    for i in range(1, im.size + 1):
        s, ell = im.pair(i)
        if s == 0:
            out.append(ht_pm1_closed(n, p, 0, ell))
        else:
            out.append(ht_pm1_closed(n, p, 1, ell - 1))
    return tuple(out)


def build_H_plus12(N: int, p) -> DenseMatrix:
    """Coefficient matrix of the forward-walk recurrence system.

    Transpose of the Laplacian minor dropping the last row/column; solving
    H h = 1 yields h(0, 1..N-1) for the two-step directed cycle.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GraphParameterError(f"p must satisfy 0 <= p <= 1, got {p}")
    if N < 3:
        raise GraphParameterError("need N >= 3")
    lap = laplacian(build_graph(plus_one_two(N, p)))
    return minor_drop_last(lap).transpose()


def solve_h_plus12(N: int, p) -> tuple:
    """Exact solution h(0, 1..N-1) of the forward-walk system."""
    h = build_H_plus12(N, p)
    return gauss_solve(h, [ONE] * h.rows)


def ht_plus12_closed(N: int, p, ell: int) -> Rational:
    """Closed-form hitting time h(0, ell) on the two-step directed cycle."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GraphParameterError(f"p must satisfy 0 <= p <= 1, got {p}")
    if N < 3:
        raise GraphParameterError("need N >= 3")
    if not 1 <= ell <= N - 1:
        raise GraphParameterError(f"target {ell} outside 1..{N - 1}")
    pm1 = p - 1
    den = (p - 2) * (pm1**N - 1)
    if den == 0:
        raise UnreachableVertexError(
            f"closed form undefined at p={p}, N={N}: the two-step walk "
            "cannot reach odd residues"
        )
    num = N * pm1 * (pm1**ell - 1) - ell * (pm1**N - 1)
    return num / den


def plus12_reduce(start: int, target: int, N: int) -> Tuple[int, int]:
    """Shift (start, target) to (0, ell) via rotational symmetry."""
    return 0, (target - start) % N


# ---------------------------------------------------------------------------
# Unweighted baselines
# ---------------------------------------------------------------------------


def fibonacci(i: int) -> int:
    if i < 0:
        raise GraphParameterError("index must be nonnegative")
    a, b = 0, 1
    for _ in range(i):
        a, b = b, a + b
    return a


def jacobsthal(i: int) -> int:
    if i < 0:
        raise GraphParameterError("index must be nonnegative")
    a, b = 0, 1
    for _ in range(i):
        a, b = b, b + 2 * a
    return a


def ht_pm1pm2_baseline(N: int, ell: int) -> Rational:
    """Printed Fibonacci formula for the unweighted {+-1, +-2} cycle."""
    if N < 5:
        raise GraphParameterError("need N >= 5")
    if not 1 <= ell <= N - 1:
        raise GraphParameterError(f"target {ell} outside 1..{N - 1}")
    f_ratio = Fraction(fibonacci(ell) * fibonacci(N - ell), fibonacci(N))
    return Fraction(2, 5) * (ell * (N - ell) + 2 * N * f_ratio)


def ht_plus12_baseline(N: int, ell: int) -> Rational:
    """Printed Jacobsthal formula for the unweighted {+1, +2} cycle.

    Transcribed exactly as printed.  Known to disagree with the first-step
    oracle at some (N, ell): the verification harness reports both values.
    """
    if N < 3:
        raise GraphParameterError("need N >= 3")
    if not 1 <= ell <= N - 1:
        raise GraphParameterError(f"target {ell} outside 1..{N - 1}")
    j = jacobsthal
    num = 2 * j(ell - 1) * (3 * ell * j(N - ell - 1) + 2 * ell * j(N - ell)) + j(ell) * (
        (N + ell + 3) * j(N - ell - 1) + (N + 3 * ell + 1) * j(N - ell)
    )
    return Fraction(num, 3 * j(N))
