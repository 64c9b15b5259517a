"""Exact hitting times, resistances and formula audits for circulant walks.

The package computes average hitting times of weighted random walks on
four circulant graph families by three independent routes (closed forms,
structured linear systems, first-step oracle) plus seeded Monte Carlo,
entirely in exact rational arithmetic, and reports every entrywise
disagreement between printed closed-form tables and the exact results.
"""

from .graph import (
    GraphFamily,
    GraphParameterError,
    UnreachableVertexError,
    WeightedDigraph,
    build_graph,
    laplacian,
    minor_drop_first,
    minor_drop_last,
    pm1_alternating,
    pm1pm2_unweighted,
    plus12_unweighted,
    plus_one_two,
    reachable_set,
    scale,
    transition_matrix,
)
from .hitting import (
    HittingVector,
    IndexMap2n,
    build_H_plus12,
    build_H_pm1,
    fibonacci,
    hitting_from,
    hprime_closed,
    ht_plus12_baseline,
    ht_plus12_closed,
    ht_pm1,
    ht_pm1_closed,
    ht_pm1pm2_baseline,
    jacobsthal,
    oracle_hitting,
    solve_h_plus12,
    solve_h_vector_pm1,
)
from .montecarlo import SimConfig, SimStats, StepCapExceededError, simulate_hit
from .numerics import (
    DenseMatrix,
    DimensionMismatch,
    Discrepancy,
    DiscrepancyReport,
    Rational,
    SingularMatrixError,
    compare,
    gauss_solve,
    invert,
    mat_mul,
    mat_mul3,
)
from .resistance import (
    ResistanceValue,
    effective_resistance,
    kf_plus12_closed,
    kf_plus12_proof_sum,
    kf_pm1_closed,
    kirchhoff_from_hitting,
    total_weight,
)

__version__ = "0.1.0"
