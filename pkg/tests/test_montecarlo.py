"""Seeded walk simulation: determinism, exact aggregation, statistics."""

from fractions import Fraction as F

import pytest

from cayht.graph import UnreachableVertexError, build_graph, pm1_alternating, plus_one_two
from cayht.hitting import oracle_hitting
from cayht.montecarlo import (
    SimConfig,
    StepCapExceededError,
    simulate_hit,
    trial_seed,
    trial_steps,
)


def make_config(**kw):
    defaults = dict(
        graph=build_graph(plus_one_two(3, F(1, 2))),
        start=0,
        target=1,
        trials=2000,
        master_seed=42,
    )
    defaults.update(kw)
    return SimConfig(**defaults)


class TestDeterminism:
    def test_identical_config_identical_stats(self):
        a = simulate_hit(make_config())
        b = simulate_hit(make_config())
        assert a == b

    def test_different_seed_different_stream(self):
        a = simulate_hit(make_config(master_seed=1))
        b = simulate_hit(make_config(master_seed=2))
        assert a.total_steps != b.total_steps

    def test_trial_seed_pure(self):
        assert trial_seed(42, 7) == trial_seed(42, 7)
        assert trial_seed(42, 7) != trial_seed(42, 8)

    def test_aggregate_matches_per_trial_recompute(self):
        cfg = make_config(trials=300)
        stats = simulate_hit(cfg)
        per = [trial_steps(cfg, t) for t in range(cfg.trials)]
        assert stats.total_steps == sum(per)
        assert stats.total_squared_steps == sum(x * x for x in per)
        assert stats.min_steps == min(per) and stats.max_steps == max(per)
        # order independence: sums over any permutation are the same sums
        assert sum(reversed(per)) == stats.total_steps


class TestDeterministicWalks:
    def test_forward_walk_has_zero_variance(self):
        g = build_graph(plus_one_two(5, F(1), F(0)))
        stats = simulate_hit(make_config(graph=g, start=0, target=3, trials=500))
        assert stats.min_steps == stats.max_steps == 3
        assert stats.mean_steps == 3.0
        assert stats.sample_variance == 0.0
        assert stats.exact_mean == F(3)

    def test_two_step_walk(self):
        g = build_graph(plus_one_two(5, F(0), F(1)))
        stats = simulate_hit(make_config(graph=g, start=0, target=3, trials=100))
        assert stats.min_steps == stats.max_steps == 4  # 0->2->4->1->3


class TestGuards:
    def test_unreachable_precheck(self):
        g = build_graph(plus_one_two(4, F(0), F(1)))
        with pytest.raises(UnreachableVertexError):
            simulate_hit(make_config(graph=g, start=0, target=1, trials=10))

    def test_step_cap(self):
        with pytest.raises(StepCapExceededError):
            simulate_hit(make_config(trials=50, step_cap=1, master_seed=9))

    def test_trials_positive(self):
        with pytest.raises(ValueError):
            make_config(trials=0)


class TestStatisticalAgreement:
    @pytest.mark.parametrize(
        "family,start,target",
        [
            (plus_one_two(3, F(1, 2)), 0, 1),
            (pm1_alternating(2, F(1, 2)), 0, 2),
            (pm1_alternating(3, F(1, 3)), 1, 4),
        ],
    )
    def test_mean_within_four_standard_errors(self, family, start, target):
        g = build_graph(family)
        exact = oracle_hitting(g, target)[start]
        stats = simulate_hit(
            SimConfig(graph=g, start=start, target=target, trials=100_000, master_seed=42)
        )
        assert abs(stats.mean_steps - float(exact)) <= 4 * stats.standard_error

    def test_exact_mean_is_total_over_trials(self):
        stats = simulate_hit(make_config(trials=321))
        assert stats.exact_mean == F(stats.total_steps, 321)
