"""Exhaustive spanning-tree enumeration over small connected subgraphs."""

from __future__ import annotations

from typing import Iterable, Iterator

from .graph import Edge, NodeId


def is_tree(nodes: Iterable[NodeId], edges: Iterable[Edge]) -> bool:
    """For a connected subgraph: tree iff edge count = node count - 1."""
    nodes = set(nodes)
    edges = set(edges)
    return len(edges) == len(nodes) - 1


def _connected(nodes: frozenset[NodeId], edges: Iterable[Edge]) -> bool:
    adj: dict[NodeId, list[NodeId]] = {v: [] for v in nodes}
    for u, v in edges:
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
    return len(seen) == len(nodes)


def all_spanning_trees(
    nodes: Iterable[NodeId], edges: Iterable[Edge]
) -> Iterator[frozenset[Edge]]:
    """Yield every spanning tree of a connected subgraph exactly once.

    Include/exclude backtracking over a sorted edge list. An edge may only be
    included if it closes no cycle among the chosen edges, and may only be
    excluded if the chosen edges plus the not-yet-decided edges still connect
    the graph (i.e. it is not a bridge there). Every tree is a distinct edge
    subset, so the enumeration is duplicate-free by construction.
    """
    node_set = frozenset(nodes)
    edge_list = sorted(set(edges))
    if len(node_set) == 1:
        yield frozenset()
        return

    chosen: list[Edge] = []

    def rec(idx: int, comp: dict[NodeId, int]) -> Iterator[frozenset[Edge]]:
        if len(set(comp.values())) == 1:
            yield frozenset(chosen)
            return
        if idx == len(edge_list):
            return
        u, v = edge_list[idx]
        cu, cv = comp[u], comp[v]
        if cu != cv:
            merged = {w: (cu if c == cv else c) for w, c in comp.items()}
            chosen.append((u, v))
            yield from rec(idx + 1, merged)
            chosen.pop()
        if _connected(node_set, chosen + edge_list[idx + 1 :]):
            yield from rec(idx + 1, comp)

    yield from rec(0, {w: i for i, w in enumerate(node_set)})
