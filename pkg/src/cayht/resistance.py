"""Effective resistance via the hitting-time identity, and Kirchhoff indices.

Effective resistance between u and v is computed as
(h(u,v) + h(v,u)) / (total ordered-pair weight): the classical identity
relating commute times to resistances.  For the directed family this is
taken as the *definition* of the reported quantity, with no claim of an
electrical-network interpretation.

The Kirchhoff index Kf is the sum of effective resistances over unordered
vertex pairs.  Closed forms for both weighted families are transcribed as
printed; the directed family's closed form is audited against two
independent routes (the sum of per-target closed-form hitting times, and
the all-pairs oracle) because the final printed simplification does not
match its own derivation at all parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import (
    GraphFamily,
    GraphParameterError,
    PM1,
    WeightedDigraph,
    reachable_set,
)
from .hitting import oracle_hitting
from .numerics import Rational, ZERO


@dataclass(frozen=True)
class ResistanceValue:
    u: int
    v: int
    value: Rational


def total_weight(g: WeightedDigraph) -> Rational:
    """Sum of w over all ordered pairs; undirected edges count twice."""
    return g.total_weight()


def effective_resistance(g: WeightedDigraph, u: int, v: int) -> ResistanceValue:
    """(h(u,v) + h(v,u)) / total_weight, exactly; zero iff u == v."""
    if u == v:
        return ResistanceValue(u, v, ZERO)
    huv = oracle_hitting(g, v)[u]
    hvu = oracle_hitting(g, u)[v]
    return ResistanceValue(u, v, (huv + hvu) / total_weight(g))


def _check_strongly_connected(g: WeightedDigraph):
    n = g.vertex_count
    if len(reachable_set(g, 0)) != n:
        raise GraphParameterError("graph is not strongly connected")
    # reachability *to* 0 is checked inside oracle_hitting


def kirchhoff_from_hitting(g: WeightedDigraph, family: Optional[GraphFamily] = None) -> Rational:
    """Kf = sum over unordered pairs of effective resistances, exactly.

    Passing the generating family enables the rotational shortcut: all
    pairs collapse onto hitting times out of vertex 0 (and vertex 1 for
    the alternating-weight cycle).  Without it, one oracle solve per
    target covers all pairs.
    """
    _check_strongly_connected(g)
    if family is not None:
        return _kf_pm1_symmetric(g) if family.tag == PM1 else _kf_rotational(g)
    n = g.vertex_count
    acc = ZERO
    for t in range(n):
        ht = oracle_hitting(g, t)
        acc += sum((ht[u] for u in range(n) if u != t), ZERO)
    return acc / total_weight(g)


def _kf_rotational(g: WeightedDigraph) -> Rational:
    # shift symmetry v -> v+1: every ordered pair reduces to (0, ell)
    n = g.vertex_count
    total = ZERO
    for t in range(1, n):
        total += oracle_hitting(g, t)[0]
    return n * total / total_weight(g)


def _kf_pm1_symmetric(g: WeightedDigraph) -> Rational:
    # shift symmetry v -> v+2: starts 0 and 1 cover everything
    n2 = g.vertex_count
    total = ZERO
    for t in range(n2):
        ht = oracle_hitting(g, t)
        if t != 0:
            total += ht[0]
        if t != 1:
            total += ht[1]
    return (n2 // 2) * total / total_weight(g)


def kf_pm1_closed(n: int, p) -> Rational:
    """Printed Kirchhoff index of the alternating-weight cycle."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise GraphParameterError(f"p must satisfy 0 < p < 1, got {p}")
    if n < 2:
        raise GraphParameterError("need n >= 2")
    return n * ((n - 1) * (n + 1) + 3 * p * (1 - p)) / (3 * p * (1 - p))


def kf_plus12_closed(N: int, p) -> Rational:
    """Printed Kirchhoff index of the two-step directed cycle, verbatim.

    Known not to match the oracle at all parameters; audit via
    kf_plus12_proof_sum and kirchhoff_from_hitting.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GraphParameterError(f"p must satisfy 0 <= p <= 1, got {p}")
    if N < 3:
        raise GraphParameterError("need N >= 3")
    pm1 = p - 1
    den = 2 * (p - 2) ** 2 * (pm1**N - 1)
    if den == 0:
        raise GraphParameterError(f"degenerate denominator at p={p}, N={N}")
    num = N * (8 + (pm1**N + 2 * p - 9) * p - N * (p - 2) * (pm1**N + 2 * p - 3))
    return num / den


def kf_plus12_proof_sum(N: int, p) -> Rational:
    """The derivation's summation step, evaluated correctly.

    Sum over targets of the closed-form hitting times, with the geometric
    series substituted at its true value; serves as the third column in the
    Kirchhoff audit.  The printed closed form corresponds to dropping a
    factor of (p-1) from the geometric series at this exact step, which is
    why it only agrees where that factor is immaterial.
    """
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise GraphParameterError(f"p must satisfy 0 <= p <= 1, got {p}")
    if N < 3:
        raise GraphParameterError("need N >= 3")
    pm1 = p - 1
    den = (p - 2) * (pm1**N - 1)
    if den == 0:
        raise GraphParameterError(f"degenerate denominator at p={p}, N={N}")
    geo = pm1 * (1 - pm1 ** (N - 1)) / (1 - pm1)
    num = N * pm1 * (geo - N + 1) - (pm1**N - 1) * Fraction(N * (N - 1), 2)
    return num / den
