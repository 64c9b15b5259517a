"""Weighted circulant graph families, their Laplacians and transition matrices.

Four families are supported, all on cyclic groups with canonical vertex
labels 0..size-1 (vertex v is the residue class v):

* ``pm1``        -- undirected 2n-cycle with alternating edge weights:
                    edge {2k, 2k+1} has weight p, edge {2k+1, 2k+2} has
                    weight q (indices mod 2n).
* ``plus12``     -- directed cycle with two forward generators: edge
                    i -> i+1 has weight p and i -> i+2 has weight q (mod N).
* ``pm1pm2``     -- unweighted undirected graph with steps {+-1, +-2}.
* ``plus12base`` -- unweighted version of ``plus12``.

The walk dynamics follow the forward convention: a generator s moves the
walker from vertex i to vertex i+s.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numerics import DenseMatrix, Rational, ZERO

PM1 = "pm1"
PLUS12 = "plus12"
PM1PM2 = "pm1pm2"
PLUS12BASE = "plus12base"

FAMILY_TAGS = (PM1, PLUS12, PM1PM2, PLUS12BASE)

_MIN_SIZE = {PM1: 2, PLUS12: 3, PM1PM2: 5, PLUS12BASE: 3}


class GraphParameterError(ValueError):
    pass


class UnreachableVertexError(ValueError):
    """A required vertex cannot be reached with positive probability."""

    def __init__(self, message: str, vertices=()):
        self.vertices = tuple(vertices)
        super().__init__(message)


@dataclass(frozen=True)
class GraphFamily:
    """Tagged description of one graph family instance.

    ``size`` is n for the ``pm1`` family (2n vertices) and N otherwise.
    The unweighted families carry p = q = 1 (the trivial weight).
    """

    tag: str
    size: int
    p: Rational
    q: Rational

    def __post_init__(self):
        if self.tag not in FAMILY_TAGS:
            raise GraphParameterError(f"unknown family tag {self.tag!r}")
        if self.size < _MIN_SIZE[self.tag]:
            raise GraphParameterError(
                f"family {self.tag} needs size >= {_MIN_SIZE[self.tag]}, got {self.size}"
            )
        if self.p < 0 or self.q < 0:
            raise GraphParameterError("weights p, q must be nonnegative")
        if self.p + self.q <= 0:
            raise GraphParameterError("need p + q > 0")

    @property
    def vertex_count(self) -> int:
        return 2 * self.size if self.tag == PM1 else self.size

    @property
    def weighted(self) -> bool:
        return self.tag in (PM1, PLUS12)

    def normalized(self) -> "GraphFamily":
        """Same family with p + q scaled to 1; hitting times only see p/(p+q)."""
        s = self.p + self.q
        return GraphFamily(self.tag, self.size, self.p / s, self.q / s)


def pm1_alternating(n: int, p, q=None) -> GraphFamily:
    p = Fraction(p)
    q = 1 - p if q is None else Fraction(q)
    return GraphFamily(PM1, n, p, q)


def plus_one_two(N: int, p, q=None) -> GraphFamily:
    p = Fraction(p)
    q = 1 - p if q is None else Fraction(q)
    return GraphFamily(PLUS12, N, p, q)


def pm1pm2_unweighted(N: int) -> GraphFamily:
    return GraphFamily(PM1PM2, N, Fraction(1), Fraction(1))


def plus12_unweighted(N: int) -> GraphFamily:
    return GraphFamily(PLUS12BASE, N, Fraction(1), Fraction(1))


@dataclass(frozen=True)
class WeightedDigraph:
    """Explicit vertex count plus nonnegative weight matrix.

    ``weights[u][v]`` is the weight of the directed edge u -> v (0 when
    absent).  Undirected graphs are stored symmetrically.  Every vertex
    must have positive total out-weight.
    """

    vertex_count: int
    weights: tuple

    def __post_init__(self):
        n = self.vertex_count
        if len(self.weights) != n or any(len(r) != n for r in self.weights):
            raise GraphParameterError("weight matrix shape mismatch")
        for u in range(n):
            if any(w < 0 for w in self.weights[u]):
                raise GraphParameterError(f"negative weight out of vertex {u}")
            if sum(self.weights[u]) <= 0:
                raise GraphParameterError(f"vertex {u} has zero out-weight")

    def weight(self, u: int, v: int) -> Rational:
        return self.weights[u][v]

    def out_weight(self, u: int) -> Rational:
        """W(u): total weight leaving u."""
        return sum(self.weights[u], ZERO)

    def neighbors(self, u: int) -> list:
        return [(v, w) for v, w in enumerate(self.weights[u]) if w > 0]

    def total_weight(self) -> Rational:
        """Sum over all ordered pairs; undirected edges count twice."""
        return sum((self.out_weight(u) for u in range(self.vertex_count)), ZERO)


def build_graph(family: GraphFamily) -> WeightedDigraph:
    """Materialize a family instance as an explicit weight matrix."""
    n = family.vertex_count
    w = [[ZERO] * n for _ in range(n)]
    if family.tag == PM1:
        for i in range(n):
            weight = family.p if i % 2 == 0 else family.q
            j = (i + 1) % n
            w[i][j] += weight
            w[j][i] += weight
    elif family.tag == PLUS12:
        for i in range(n):
            w[i][(i + 1) % n] += family.p
            w[i][(i + 2) % n] += family.q
    elif family.tag == PLUS12BASE:
        for i in range(n):
            w[i][(i + 1) % n] += Fraction(1)
            w[i][(i + 2) % n] += Fraction(1)
    else:  # PM1PM2
        for i in range(n):
            for s in (1, -1, 2, -2):
                w[i][(i + s) % n] = Fraction(1)
    return WeightedDigraph(n, tuple(tuple(r) for r in w))


def scale(g: WeightedDigraph, c) -> WeightedDigraph:
    """Uniform conductance scaling; transition probabilities are unchanged."""
    c = Fraction(c)
    if c <= 0:
        raise GraphParameterError("scale factor must be positive")
    return WeightedDigraph(
        g.vertex_count, tuple(tuple(c * x for x in row) for row in g.weights)
    )


def reverse(g: WeightedDigraph) -> WeightedDigraph:
    return WeightedDigraph(
        g.vertex_count,
        tuple(tuple(g.weights[v][u] for v in range(g.vertex_count)) for u in range(g.vertex_count)),
    )


def laplacian(g: WeightedDigraph) -> DenseMatrix:
    """L(i,i) = W(i), L(i,j) = -w(i,j); all row sums are exactly zero.

    Matrix row/column i (1-based) corresponds to vertex i-1.
    """
    n = g.vertex_count
    return DenseMatrix.build(
        n,
        n,
        lambda i, j: g.out_weight(i - 1) if i == j else -g.weight(i - 1, j - 1),
    )


def minor_drop_first(m: DenseMatrix) -> DenseMatrix:
    """Delete the first row and column."""
    if m.rows != m.cols or m.rows < 2:
        raise GraphParameterError("minor needs a square matrix of size >= 2")
    return DenseMatrix.build(m.rows - 1, m.cols - 1, lambda i, j: m.at(i + 1, j + 1))


def minor_drop_last(m: DenseMatrix) -> DenseMatrix:
    """Delete the last row and column."""
    if m.rows != m.cols or m.rows < 2:
        raise GraphParameterError("minor needs a square matrix of size >= 2")
    return DenseMatrix.build(m.rows - 1, m.cols - 1, lambda i, j: m.at(i, j))


def transition_matrix(g: WeightedDigraph) -> DenseMatrix:
    """Row-stochastic matrix P(u,v) = w(u,v)/W(u); rows sum to exactly 1."""
    n = g.vertex_count
    inv_w = [1 / g.out_weight(u) for u in range(n)]
    return DenseMatrix.build(n, n, lambda i, j: g.weight(i - 1, j - 1) * inv_w[i - 1])


def reachable_set(g: WeightedDigraph, start: int) -> frozenset:
    """Vertices reachable from ``start`` along positive-weight directed paths."""
    if not 0 <= start < g.vertex_count:
        raise GraphParameterError(f"vertex {start} outside graph")
    seen = {start}
    frontier = [start]
    while frontier:
        u = frontier.pop()
        for v, _ in g.neighbors(u):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return frozenset(seen)
