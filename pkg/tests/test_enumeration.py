import random

import pytest

from ftnet import (
    EnumerationError,
    QuerySpec,
    canonical_key,
    find_fts,
    ft_delay,
    iter_fts,
    oracle_enumerate_fts,
    validate_network,
)
from ftnet.enumeration import prune_non_input_leaves, union_combination
from ftnet.graph import undirected

from conftest import all_small_queries, random_connected_network


class TestUnionCombination:
    def test_single_path(self):
        nodes, edges = union_combination((("x", "y"),))
        assert nodes == {"x", "y"}
        assert edges == {("x", "y")}

    def test_two_paths_through_relay(self):
        nodes, edges = union_combination((("x1", "m", "y"), ("x2", "m", "y")))
        assert len(nodes) == 4 and len(edges) == 3

    def test_cyclic_union(self):
        combo = (("x1", "a", "x2", "y"), ("x2", "a", "y"))
        nodes, edges = union_combination(combo)
        assert {undirected("a", "x2"), undirected("a", "y"), undirected("x2", "y")} <= edges
        assert len(edges) == len(nodes)  # one cycle


class TestPrune:
    def q(self, net, xs, y, d):
        return QuerySpec.for_network(net, xs, y, d)

    def test_orients_chain_without_pruning(self, diamond):
        nodes = frozenset({"x", "a", "y"})
        edges = frozenset({("a", "x"), ("a", "y")})
        query = QuerySpec(inputs=frozenset({"x"}), sink="y", d_max=2)
        ft = prune_non_input_leaves(nodes, edges, query)
        assert ft.edges == {("x", "a"), ("a", "y")}

    def test_removes_dangling_leaf(self):
        nodes = frozenset({"x", "y", "b"})
        edges = frozenset({("x", "y"), ("b", "y")})
        query = QuerySpec(inputs=frozenset({"x"}), sink="y", d_max=1)
        ft = prune_non_input_leaves(nodes, edges, query)
        assert ft.edges == {("x", "y")}

    def test_removes_chain_of_non_inputs_iteratively(self):
        # c-b-a hangs off y; all three must go
        nodes = frozenset({"x", "y", "a", "b", "c"})
        edges = frozenset({("x", "y"), ("a", "y"), ("a", "b"), ("b", "c")})
        query = QuerySpec(inputs=frozenset({"x"}), sink="y", d_max=3)
        ft = prune_non_input_leaves(nodes, edges, query)
        assert ft.nodes == {"x", "y"}

    def test_rejects_over_budget_after_pruning(self):
        nodes = frozenset({"x", "a", "y"})
        edges = frozenset({("a", "x"), ("a", "y")})
        query = QuerySpec(inputs=frozenset({"x"}), sink="y", d_max=1)
        assert prune_non_input_leaves(nodes, edges, query) is None


class TestFindFts:
    def test_triangle_single_input(self, triangle):
        catalog = find_fts(triangle, QuerySpec.for_network(triangle, ["x"], "y", 2))
        by_delay = {ft_delay(ft): ft for ft in catalog}
        assert set(by_delay) == {1, 2}
        assert by_delay[1].edges == {("x", "y")}
        assert by_delay[2].edges == {("x", "a"), ("a", "y")}

    def test_star_two_inputs(self, star2):
        catalog = find_fts(star2, QuerySpec.for_network(star2, ["x1", "x2"], "y", 2))
        assert len(catalog) == 1
        (only,) = list(catalog)
        assert only.edges == {("x1", "m"), ("x2", "m"), ("m", "y")}

    def test_diamond_two_routes(self, diamond):
        catalog = find_fts(diamond, QuerySpec.for_network(diamond, ["x"], "y", 2))
        assert len(catalog) == 2

    def test_every_ft_contains_inputs_and_only_input_leaves(self, diamond):
        query = QuerySpec.for_network(diamond, ["x", "a"], "y")
        for ft in find_fts(diamond, query):
            assert query.inputs <= ft.nodes
            assert ft.leaves <= query.inputs
            assert ft_delay(ft) <= query.d_max

    def test_disconnected_network_rejected(self):
        net = validate_network(["x", "y", "z"], [("x", "y")])
        with pytest.raises(EnumerationError, match="disconnected"):
            find_fts(net, QuerySpec(inputs=frozenset({"x"}), sink="y", d_max=1))

    def test_unreachable_input_reported(self):
        net = validate_network(["x", "a", "b", "y"], [("x", "a"), ("a", "b"), ("b", "y")])
        query = QuerySpec.for_network(net, ["x"], "y", 2)
        with pytest.raises(EnumerationError, match=r"\['x'\]"):
            find_fts(net, query)

    def test_single_input_adjacent_sink(self):
        net = validate_network(["x", "y"], [("x", "y")])
        catalog = find_fts(net, QuerySpec.for_network(net, ["x"], "y", 1))
        assert [ft.edges for ft in catalog] == [frozenset({("x", "y")})]


class TestDeterminismAndMonotonicity:
    def test_repeated_runs_identical(self, diamond):
        query = QuerySpec.for_network(diamond, ["x"], "y", 2)
        first = find_fts(diamond, query)
        second = find_fts(diamond, query)
        assert first.keys() == second.keys()

    def test_iter_matches_catalog_order(self, diamond):
        query = QuerySpec.for_network(diamond, ["x"], "y", 2)
        assert [canonical_key(ft) for ft in iter_fts(diamond, query)] == find_fts(
            diamond, query
        ).keys()

    def test_threads_match_single_thread(self):
        rng = random.Random(3)
        for _ in range(5):
            net = random_connected_network(rng, 6)
            for query in list(all_small_queries(net))[:6]:
                assert (
                    find_fts(net, query, threads=4).keys()
                    == find_fts(net, query, threads=1).keys()
                )

    def test_budget_monotonicity(self):
        rng = random.Random(17)
        for _ in range(10):
            net = random_connected_network(rng, rng.randrange(4, 7))
            for query in list(all_small_queries(net))[:4]:
                smaller = set(find_fts(net, query).keys())
                bigger_query = QuerySpec(
                    inputs=query.inputs, sink=query.sink, d_max=query.d_max + 1
                )
                bigger = set(find_fts(net, bigger_query).keys())
                assert smaller <= bigger

    def test_matches_oracle_on_random_instances(self):
        rng = random.Random(5)
        for _ in range(10):
            net = random_connected_network(rng, rng.randrange(4, 7))
            for query in all_small_queries(net):
                assert set(find_fts(net, query).keys()) == set(
                    oracle_enumerate_fts(net, query).keys()
                )

    def test_progress_callback_reaches_total(self, diamond):
        query = QuerySpec.for_network(diamond, ["x"], "y", 2)
        calls = []
        list(iter_fts(diamond, query, progress=lambda done, total: calls.append((done, total))))
        assert calls[-1][0] == calls[-1][1] == len(calls)
