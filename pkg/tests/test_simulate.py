import math

import numpy as np
import pytest

from ftnet import (
    FailureModel,
    FunctionalTopology,
    QuerySpec,
    Strategy,
    find_fts,
    ft_survives,
    run_simulation,
    select_redundant_pair,
    select_static_ft,
)
from ftnet.graph import canonical_key, ft_delay


@pytest.fixture
def diamond_catalog(diamond):
    return find_fts(diamond, QuerySpec.for_network(diamond, ["x"], "y", 2))


@pytest.fixture
def triangle_catalog(triangle):
    return find_fts(triangle, QuerySpec.for_network(triangle, ["x"], "y", 2))


class TestFtSurvives:
    def setup_method(self):
        self.ft = FunctionalTopology(edges=frozenset([("x", "a"), ("a", "y")]), root="y")

    def test_no_failures(self):
        assert ft_survives(self.ft, [], [])

    def test_dead_edge(self):
        assert not ft_survives(self.ft, [], [("a", "x")])

    def test_dead_node(self):
        assert not ft_survives(self.ft, ["a"], [])

    def test_irrelevant_failure(self):
        assert ft_survives(self.ft, ["zzz"], [("b", "c")])


class TestSelection:
    def test_static_prefers_min_delay(self, triangle_catalog):
        assert select_static_ft(triangle_catalog, "delay").edges == {("x", "y")}

    def test_tie_broken_by_key(self, diamond_catalog):
        chosen = select_static_ft(diamond_catalog, "delay")
        keys = sorted(canonical_key(ft) for ft in diamond_catalog)
        assert canonical_key(chosen) == keys[0]

    def test_single_ft_catalog(self, star2):
        catalog = find_fts(star2, QuerySpec.for_network(star2, ["x1", "x2"], "y", 2))
        assert select_static_ft(catalog) is list(catalog)[0]

    def test_redundant_pair_on_diamond(self, diamond_catalog):
        pair = select_redundant_pair(diamond_catalog)
        assert pair is not None
        a, b = pair
        assert a.nodes & b.nodes == {"x", "y"}

    def test_no_pair_in_single_ft_catalog(self, star2):
        catalog = find_fts(star2, QuerySpec.for_network(star2, ["x1", "x2"], "y", 2))
        assert select_redundant_pair(catalog) is None


class TestRunSimulation:
    STRATS = [
        Strategy(kind="static-single"),
        Strategy(kind="degenerate-fallback"),
        Strategy(kind="redundant-pair"),
    ]

    def test_no_failures_all_succeed(self, diamond, diamond_catalog):
        model = FailureModel(seed=1)
        report = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=500)
        assert all(s.success_rate == 1.0 for s in report.strategies)

    def test_certain_edge_failure(self, diamond, diamond_catalog):
        model = FailureModel(edge_fail_prob=1.0, seed=1)
        report = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=500)
        assert all(s.success_rate == 0.0 for s in report.strategies)

    def test_diamond_rates_match_exact(self, diamond, diamond_catalog):
        model = FailureModel(node_fail_prob=0.3, seed=42)
        rounds = 100_000
        report = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=rounds)
        by_kind = {s.kind: s for s in report.strategies}
        assert by_kind["static-single"].exact_probability == pytest.approx(0.7)
        assert by_kind["degenerate-fallback"].exact_probability == pytest.approx(0.91)
        for s in report.strategies:
            sigma = math.sqrt(s.exact_probability * (1 - s.exact_probability) / rounds)
            assert abs(s.success_rate - s.exact_probability) <= 3 * sigma

    def test_pool_dominance_per_pattern(self, diamond, diamond_catalog):
        model = FailureModel(node_fail_prob=0.4, edge_fail_prob=0.1, seed=7)
        _, per_round = run_simulation(
            diamond, diamond_catalog, model, self.STRATS, rounds=20_000, return_per_round=True
        )
        static = per_round["static-single"]
        fallback = per_round["degenerate-fallback"]
        assert not np.any(static & ~fallback)

    def test_reproducible(self, diamond, diamond_catalog):
        model = FailureModel(node_fail_prob=0.2, edge_fail_prob=0.1, seed=123)
        a = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=5000)
        b = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=5000)
        assert a.to_json_dict() == b.to_json_dict()

    def test_threads_equal_single_thread(self, diamond, diamond_catalog):
        model = FailureModel(node_fail_prob=0.2, edge_fail_prob=0.1, seed=123)
        a = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=30_000, threads=1)
        b = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=30_000, threads=4)
        assert a.to_json_dict() == b.to_json_dict()

    def test_constraint_filter_respected(self, triangle, triangle_catalog):
        strategy = Strategy(kind="degenerate-fallback", max_delay=1)
        pool = strategy.filter_pool(triangle_catalog)
        assert [ft_delay(ft) for ft in pool] == [1]
        model = FailureModel(seed=1)
        report = run_simulation(triangle, triangle_catalog, model, [strategy], rounds=100)
        assert report.strategies[0].pool_size == 1

    def test_empty_pool_warns_with_zero_rate(self, triangle, triangle_catalog):
        strategy = Strategy(kind="degenerate-fallback", max_energy=0)
        model = FailureModel(seed=1)
        report = run_simulation(triangle, triangle_catalog, model, [strategy], rounds=100)
        result = report.strategies[0]
        assert result.success_rate == 0.0
        assert result.warning is not None

    def test_zero_rounds_rejected(self, diamond, diamond_catalog):
        with pytest.raises(ValueError):
            run_simulation(diamond, diamond_catalog, FailureModel(seed=1), self.STRATS, rounds=0)

    def test_invalid_probability_rejected(self):
        with pytest.raises(ValueError):
            FailureModel(node_fail_prob=1.5)

    def test_report_serialization(self, diamond, diamond_catalog):
        model = FailureModel(node_fail_prob=0.3, seed=42)
        report = run_simulation(diamond, diamond_catalog, model, self.STRATS, rounds=1000)
        payload = report.to_json_dict()
        assert payload["seed"] == 42
        assert payload["catalog_size"] == 2
        rows = report.to_csv_rows()
        assert rows[0] == ("strategy", "rounds", "successes", "rate", "ci", "exact")
        assert len(rows) == 4
