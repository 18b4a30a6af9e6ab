import itertools
import random

from ftnet import matrix_tree_count
from ftnet.spanning import all_spanning_trees, is_tree

from conftest import random_connected_network


def cycle(n):
    nodes = [str(i) for i in range(n)]
    edges = [(str(i), str((i + 1) % n)) for i in range(n)]
    return nodes, [tuple(sorted(e)) for e in edges]


def test_is_tree():
    assert is_tree(["a", "b"], [("a", "b")])
    nodes, edges = cycle(3)
    assert not is_tree(nodes, edges)


def test_tree_input_is_idempotent():
    edges = [("a", "b"), ("b", "c"), ("b", "d")]
    trees = list(all_spanning_trees(["a", "b", "c", "d"], edges))
    assert trees == [frozenset(edges)]


def test_triangle_has_three():
    nodes, edges = cycle(3)
    assert len(list(all_spanning_trees(nodes, edges))) == 3


def test_four_cycle_has_four():
    nodes, edges = cycle(4)
    trees = list(all_spanning_trees(nodes, edges))
    assert len(trees) == 4
    assert len(set(trees)) == 4
    assert matrix_tree_count(nodes, edges) == 4


def test_k4_has_sixteen():
    nodes = ["a", "b", "c", "d"]
    edges = list(itertools.combinations(nodes, 2))
    assert len(list(all_spanning_trees(nodes, edges))) == 16


def test_every_result_is_a_spanning_tree():
    nodes = ["a", "b", "c", "d", "e"]
    edges = list(itertools.combinations(nodes, 2))[:8]
    for tree in all_spanning_trees(nodes, edges):
        assert len(tree) == len(nodes) - 1
        assert tree <= set(edges)


def test_counts_match_matrix_tree_on_random_graphs():
    rng = random.Random(11)
    for _ in range(30):
        net = random_connected_network(rng, rng.randrange(3, 8))
        count = sum(1 for _ in all_spanning_trees(net.nodes, net.edges))
        assert count == matrix_tree_count(net.nodes, net.edges)
