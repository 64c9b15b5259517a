"""Seeded Monte Carlo simulation of the weighted walks.

A third, model-independent estimate of every hitting time.  The generator
is a counter-based splittable 64-bit mixer (splitmix64): trial t draws
from a stream derived purely from (master_seed, t), so results do not
depend on execution order, and aggregation uses exact integer totals.

Each step compares one uniform 64-bit draw against precomputed integer
thresholds ceil(2^64 * cumulative_probability), keeping per-step sampling
bias below 2^-64 without ever converting the exact edge weights to float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import UnreachableVertexError, WeightedDigraph, reachable_set

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO64 = 1 << 64


class StepCapExceededError(RuntimeError):
    """A trial ran past the configured step cap (near-degenerate setup)."""


@dataclass(frozen=True)
class SimConfig:
    graph: WeightedDigraph
    start: int
    target: int
    trials: int
    master_seed: int
    step_cap: int = 2**40

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.step_cap < 1:
            raise ValueError("step cap must be positive")


@dataclass(frozen=True)
class SimStats:
    """Aggregate of independent trials; reproducible given the config."""

    trials: int
    total_steps: int
    total_squared_steps: int
    min_steps: int
    max_steps: int
    seed: int

    @property
    def mean_steps(self) -> float:
        return float(Fraction(self.total_steps, self.trials))

    @property
    def exact_mean(self) -> Fraction:
        return Fraction(self.total_steps, self.trials)

    @property
    def sample_variance(self) -> float:
        if self.trials < 2:
            return 0.0
        num = Fraction(self.total_squared_steps) - Fraction(self.total_steps**2, self.trials)
        return float(num / (self.trials - 1))

    @property
    def standard_error(self) -> float:
        return math.sqrt(self.sample_variance / self.trials)


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def trial_seed(master_seed: int, trial: int) -> int:
    """Derived stream seed for one trial; pure function of its arguments."""
    return _mix64((master_seed + (trial + 1) * _GAMMA) & _MASK)


def _threshold_table(g: WeightedDigraph):
    """Per-vertex neighbor lists and integer cumulative thresholds."""
    thresholds, successors = [], []
    for u in range(g.vertex_count):
        nbrs = g.neighbors(u)
        w_total = g.out_weight(u)
        acc = Fraction(0)
        ts, vs = [], []
        for v, w in nbrs:
            acc += w
            frac = _TWO64 * acc / w_total
            ts.append(-((-frac.numerator) // frac.denominator))  # exact ceil
            vs.append(v)
        ts[-1] = _TWO64  # cumulative probability is exactly 1
        thresholds.append(tuple(ts))
        successors.append(tuple(vs))
    return thresholds, successors


def trial_steps(config: SimConfig, trial: int) -> int:
    """Step count of a single trial; simulate_hit aggregates exactly these."""
    thresholds, successors = _threshold_table(config.graph)
    return _walk(
        trial_seed(config.master_seed, trial),
        config.start,
        config.target,
        thresholds,
        successors,
        config.step_cap,
    )


def _walk(state, start, target, thresholds, successors, cap):
    v = start
    steps = 0
    while v != target:
        state = (state + _GAMMA) & _MASK
        z = ((state ^ (state >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        u64 = z ^ (z >> 31)
        ts = thresholds[v]
        k = 0
        while u64 >= ts[k]:
            k += 1
        v = successors[v][k]
        steps += 1
        if steps > cap:
            raise StepCapExceededError(
                f"trial exceeded step cap {cap} before reaching {target}"
            )
    return steps


def simulate_hit(config: SimConfig) -> SimStats:
    """Run all trials and aggregate exact integer step counts.

    Pre-checks that the target is reachable from the start; the step cap
    only guards pathological parameter choices after that.
    """
    g = config.graph
    if not 0 <= config.start < g.vertex_count or not 0 <= config.target < g.vertex_count:
        raise ValueError("start/target outside graph")
    if config.target not in reachable_set(g, config.start):
        raise UnreachableVertexError(
            f"target {config.target} unreachable from start {config.start}",
            vertices=(config.start,),
        )
    thresholds, successors = _threshold_table(g)
    total = 0
    total_sq = 0
    lo, hi = None, None
    master = config.master_seed & _MASK
    for t in range(config.trials):
        steps = _walk(
            trial_seed(master, t),
            config.start,
            config.target,
            thresholds,
            successors,
            config.step_cap,
        )
        total += steps
        total_sq += steps * steps
        if lo is None or steps < lo:
            lo = steps
        if hi is None or steps > hi:
            hi = steps
    return SimStats(
        trials=config.trials,
        total_steps=total,
        total_squared_steps=total_sq,
        min_steps=lo,
        max_steps=hi,
        seed=config.master_seed,
    )
