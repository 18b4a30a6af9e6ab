import itertools
import random

import pytest

from ftnet import PhysicalNetwork, QuerySpec, validate_network
from ftnet.graph import undirected


@pytest.fixture
def triangle() -> PhysicalNetwork:
    return validate_network(["x", "a", "y"], [("x", "a"), ("a", "y"), ("x", "y")])


@pytest.fixture
def diamond() -> PhysicalNetwork:
    return validate_network(
        ["x", "a", "b", "y"], [("x", "a"), ("x", "b"), ("a", "y"), ("b", "y")]
    )


@pytest.fixture
def star2() -> PhysicalNetwork:
    """Two inputs funneling through one relay into the sink."""
    return validate_network(
        ["x1", "x2", "m", "y"], [("x1", "m"), ("x2", "m"), ("m", "y")]
    )


def random_connected_network(rng: random.Random, n: int) -> PhysicalNetwork:
    """Random spanning tree plus a random number of extra edges."""
    nodes = [str(i) for i in range(n)]
    order = nodes[:]
    rng.shuffle(order)
    edges = [(order[i], order[rng.randrange(0, i)]) for i in range(1, n)]
    present = {undirected(*e) for e in edges}
    extra = [e for e in itertools.combinations(nodes, 2) if undirected(*e) not in present]
    rng.shuffle(extra)
    edges += extra[: rng.randrange(0, len(extra) + 1)]
    return validate_network(nodes, edges)


def all_small_queries(net: PhysicalNetwork, max_inputs: int = 2):
    """Every QuerySpec with 1..max_inputs inputs, d_max = sink eccentricity."""
    for sink in net.sorted_nodes:
        others = [v for v in net.sorted_nodes if v != sink]
        for k in range(1, max_inputs + 1):
            for xs in itertools.combinations(others, k):
                yield QuerySpec.for_network(net, xs, sink)
