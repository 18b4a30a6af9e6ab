"""Independent brute-force references for validating enumeration and
simulation on small instances. Shares only the data types with the main
path, never its algorithms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .graph import (
    CanonicalFtKey,
    Edge,
    FunctionalTopology,
    GraphError,
    NodeId,
    PhysicalNetwork,
    QuerySpec,
    canonical_key,
    ft_delay,
    undirected,
)

DEFAULT_NODE_CAP = 10
DEFAULT_FT_CAP = 20


class OracleCapExceeded(RuntimeError):
    """Instance too large for exhaustive reference computation."""


@dataclass
class OracleCatalog:
    """Reference FT set with the same shape as FtCatalog."""

    query: QuerySpec
    fts: dict[CanonicalFtKey, FunctionalTopology] = field(default_factory=dict)
    provenance: str = "oracle"

    def __len__(self) -> int:
        return len(self.fts)

    def __iter__(self):
        return iter(self.fts.values())

    def keys(self) -> list[CanonicalFtKey]:
        return list(self.fts)


def _spanning_trees_brute(nodes: frozenset[NodeId], edges: list[Edge]) -> list[frozenset[Edge]]:
    """Every spanning tree by trying all (n-1)-subsets of the edge set."""
    n = len(nodes)
    trees = []
    for subset in itertools.combinations(edges, n - 1):
        adj: dict[NodeId, list[NodeId]] = {v: [] for v in nodes}
        for u, v in subset:
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(nodes))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == n:
            trees.append(frozenset(subset))
    return trees


def _orient_toward(tree_edges: frozenset[Edge], nodes: frozenset[NodeId], root: NodeId):
    adj: dict[NodeId, list[NodeId]] = {v: [] for v in nodes}
    for u, v in tree_edges:
        adj[u].append(v)
        adj[v].append(u)
    directed = set()
    depth = {root: 0}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in depth:
                depth[w] = depth[v] + 1
                directed.add((w, v))
                stack.append(w)
    return frozenset(directed)


def oracle_enumerate_fts(
    net: PhysicalNetwork, query: QuerySpec, node_cap: int = DEFAULT_NODE_CAP
) -> OracleCatalog:
    """Ground-truth FT enumeration by exhausting node subsets.

    For every subset of nodes containing X ∪ {Y}, enumerate all spanning
    trees of the induced subgraph, orient them toward the sink, and keep
    those whose leaves are all inputs and whose delay fits the budget.
    """
    if len(net.nodes) > node_cap:
        raise OracleCapExceeded(f"{len(net.nodes)} nodes exceeds cap {node_cap}")
    catalog = OracleCatalog(query=query)
    terminals = query.terminals
    optional = sorted(net.nodes - terminals)
    for r in range(len(optional) + 1):
        for extra in itertools.combinations(optional, r):
            subset = frozenset(terminals | set(extra))
            induced = [e for e in net.sorted_edges if e[0] in subset and e[1] in subset]
            if len(induced) < len(subset) - 1:
                continue
            for tree_edges in _spanning_trees_brute(subset, induced):
                directed = _orient_toward(tree_edges, subset, query.sink)
                if not directed:
                    continue
                ft = FunctionalTopology(edges=directed, root=query.sink)
                if not ft.leaves <= query.inputs:
                    continue
                if ft_delay(ft) > query.d_max:
                    continue
                catalog.fts.setdefault(canonical_key(ft), ft)
    catalog.fts = dict(sorted(catalog.fts.items()))
    return catalog


def matrix_tree_count(nodes: Iterable[NodeId], edges: Iterable[Edge]) -> int:
    """Spanning-tree count via the Kirchhoff determinant.

    Any cofactor of the Laplacian works; we drop the first row/column and
    evaluate the determinant with fraction-free (Bareiss) elimination so the
    result is an exact integer.
    """
    order = sorted(set(nodes))
    if not order:
        raise GraphError("empty graph")
    n = len(order)
    if n == 1:
        return 1
    index = {v: i for i, v in enumerate(order)}
    lap = [[0] * n for _ in range(n)]
    for u, v in set(edges):
        i, j = index[u], index[v]
        lap[i][j] -= 1
        lap[j][i] -= 1
        lap[i][i] += 1
        lap[j][j] += 1
    m = [row[1:] for row in lap[1:]]
    size = n - 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, size):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


def exact_success_probability(
    fts: Iterable[FunctionalTopology],
    node_fail_prob: float,
    edge_fail_prob: float,
    terminals: frozenset[NodeId],
    ft_cap: int = DEFAULT_FT_CAP,
) -> float:
    """P(at least one FT fully alive) by inclusion-exclusion over FT subsets.

    Non-terminal nodes fail independently with node_fail_prob, physical links
    with edge_fail_prob; inputs and the sink never fail.
    """
    ft_list = list(fts)
    if len(ft_list) > ft_cap:
        raise OracleCapExceeded(f"{len(ft_list)} FTs exceeds cap {ft_cap}")
    elements = [
        (
            frozenset(ft.nodes - terminals),
            frozenset(undirected(u, v) for u, v in ft.edges),
        )
        for ft in ft_list
    ]
    p_node = 1.0 - node_fail_prob
    p_edge = 1.0 - edge_fail_prob
    total = 0.0
    for r in range(1, len(ft_list) + 1):
        for subset in itertools.combinations(elements, r):
            nodes: frozenset[NodeId] = frozenset().union(*(s[0] for s in subset))
            links: frozenset[Edge] = frozenset().union(*(s[1] for s in subset))
            prob = p_node ** len(nodes) * p_edge ** len(links)
            total += prob if r % 2 == 1 else -prob
    return total
