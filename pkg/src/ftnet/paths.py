"""Bounded simple-path enumeration between an input and the sink."""

from __future__ import annotations

from .graph import GraphError, NodeId, PhysicalNetwork

SimplePath = tuple[NodeId, ...]


def enumerate_simple_paths(
    net: PhysicalNetwork, x: NodeId, y: NodeId, d_max: int
) -> list[SimplePath]:
    """All simple paths from x to y with at most d_max edges.

    Depth-first with an on-path visited set; neighbors are explored in sorted
    label order, so the output is lexicographic by node sequence.
    """
    if x not in net.nodes or y not in net.nodes:
        missing = x if x not in net.nodes else y
        raise GraphError(f"unknown node {missing!r}")
    if x == y:
        raise GraphError("path endpoints must differ")

    adjacency = net.adjacency
    paths: list[SimplePath] = []
    path = [x]
    on_path = {x}

    def walk(v: NodeId) -> None:
        remaining = d_max - (len(path) - 1)
        if remaining <= 0:
            return
        for w in adjacency[v]:
            if w == y:
                paths.append(tuple(path) + (y,))
            elif w not in on_path:
                path.append(w)
                on_path.add(w)
                walk(w)
                on_path.discard(w)
                path.pop()

    walk(x)
    paths.sort()
    return paths
