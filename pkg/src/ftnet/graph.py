"""Physical network, query, and functional topology data model.

A functional topology (FT) is a directed in-tree rooted at the sink: every
edge points toward the root, every leaf is an input node, and the undirected
projection of its edges is a subgraph of the physical network.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

NodeId = str
Edge = tuple[NodeId, NodeId]          # undirected, endpoints sorted
DirectedEdge = tuple[NodeId, NodeId]  # (child, parent), pointing toward root


class GraphError(ValueError):
    """Invalid graph, query, or topology structure."""


def undirected(u: NodeId, v: NodeId) -> Edge:
    """Normalize an undirected edge to sorted endpoint order."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class PhysicalNetwork:
    """Simple undirected graph of physical nodes and links."""

    nodes: frozenset[NodeId]
    edges: frozenset[Edge]

    @cached_property
    def adjacency(self) -> dict[NodeId, tuple[NodeId, ...]]:
        """Neighbor lists in sorted label order."""
        adj: dict[NodeId, list[NodeId]] = {v: [] for v in self.nodes}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    @cached_property
    def sorted_nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(self.nodes))

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def is_connected(self) -> bool:
        if not self.nodes:
            return False
        start = next(iter(self.nodes))
        seen = {start}
        stack = [start]
        while stack:
            for w in self.adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.nodes)


def validate_network(raw_nodes: Iterable, raw_edges: Iterable) -> PhysicalNetwork:
    """Build a PhysicalNetwork from raw labels and edge pairs.

    Labels are coerced to strings so that a total order always exists.
    Edges are deduplicated after normalizing endpoint order.
    """
    nodes = frozenset(str(n) for n in raw_nodes)
    if not nodes:
        raise GraphError("network must contain at least one node")
    edges = set()
    for pair in raw_edges:
        u, v = (str(p) for p in pair)
        if u == v:
            raise GraphError(f"self-edge on node {u!r} is not allowed")
        if u not in nodes or v not in nodes:
            missing = u if u not in nodes else v
            raise GraphError(f"edge ({u!r}, {v!r}) references unknown node {missing!r}")
        edges.add(undirected(u, v))
    return PhysicalNetwork(nodes=nodes, edges=frozenset(edges))


def bfs_distances(net: PhysicalNetwork, source: NodeId) -> dict[NodeId, int]:
    """Hop distances from source to every reachable node."""
    if source not in net.nodes:
        raise GraphError(f"unknown node {source!r}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in net.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def eccentricity(net: PhysicalNetwork, y: NodeId) -> int:
    """Maximum shortest-path hop distance from any node to y."""
    dist = bfs_distances(net, y)
    if len(dist) != len(net.nodes):
        raise GraphError("network is disconnected")
    return max(dist.values())


@dataclass(frozen=True)
class QuerySpec:
    """Input set, sink, and delay budget for an enumeration run."""

    inputs: frozenset[NodeId]
    sink: NodeId
    d_max: int

    def __post_init__(self) -> None:
        if not self.inputs:
            raise GraphError("input set must be nonempty")
        if self.sink in self.inputs:
            raise GraphError(f"sink {self.sink!r} cannot also be an input")
        if self.d_max < 1:
            raise GraphError("delay budget d_max must be at least 1")

    @classmethod
    def for_network(
        cls,
        net: PhysicalNetwork,
        inputs: Iterable,
        sink,
        d_max: Optional[int] = None,
    ) -> "QuerySpec":
        """Validate membership against net; default d_max to the sink eccentricity."""
        sink = str(sink)
        input_set = frozenset(str(x) for x in inputs)
        unknown = (input_set | {sink}) - net.nodes
        if unknown:
            raise GraphError(f"query references unknown nodes: {sorted(unknown)}")
        if d_max is None:
            d_max = eccentricity(net, sink)
        return cls(inputs=input_set, sink=sink, d_max=d_max)

    @property
    def terminals(self) -> frozenset[NodeId]:
        return self.inputs | {self.sink}


CanonicalFtKey = tuple[DirectedEdge, ...]


@dataclass(frozen=True)
class FunctionalTopology:
    """Directed in-tree computing a function toward its root (the sink)."""

    edges: frozenset[DirectedEdge]
    root: NodeId

    def __post_init__(self) -> None:
        if not self.edges:
            raise GraphError("a functional topology needs at least one edge")
        out_deg: dict[NodeId, int] = {}
        children: dict[NodeId, list[NodeId]] = {}
        nodes = set()
        for child, parent in self.edges:
            nodes.add(child)
            nodes.add(parent)
            out_deg[child] = out_deg.get(child, 0) + 1
            children.setdefault(parent, []).append(child)
        if out_deg.get(self.root, 0) != 0:
            raise GraphError("root must have out-degree 0")
        for v in nodes:
            if v != self.root and out_deg.get(v, 0) != 1:
                raise GraphError(f"non-root node {v!r} must have out-degree 1")
        if len(self.edges) != len(nodes) - 1:
            raise GraphError("edge count must be node count - 1")
        # reachability of every node from the root via child links rules out cycles
        seen = {self.root}
        stack = [self.root]
        while stack:
            for c in children.get(stack.pop(), ()):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        if seen != nodes:
            raise GraphError("not every node reaches the root")

    @cached_property
    def nodes(self) -> frozenset[NodeId]:
        out = set()
        for child, parent in self.edges:
            out.add(child)
            out.add(parent)
        return frozenset(out)

    @cached_property
    def children(self) -> dict[NodeId, tuple[NodeId, ...]]:
        """Map parent -> children in sorted label order."""
        ch: dict[NodeId, list[NodeId]] = {v: [] for v in self.nodes}
        for child, parent in self.edges:
            ch[parent].append(child)
        return {v: tuple(sorted(cs)) for v, cs in ch.items()}

    @cached_property
    def leaves(self) -> frozenset[NodeId]:
        """Nodes with in-degree 0 (the data sources)."""
        return frozenset(v for v, cs in self.children.items() if not cs)

    @cached_property
    def depths(self) -> dict[NodeId, int]:
        """Hop distance from each node down to the root."""
        depth = {self.root: 0}
        queue = deque([self.root])
        while queue:
            v = queue.popleft()
            for c in self.children[v]:
                depth[c] = depth[v] + 1
                queue.append(c)
        return depth

    @cached_property
    def undirected_edges(self) -> frozenset[Edge]:
        return frozenset(undirected(u, v) for u, v in self.edges)


def canonical_key(ft: FunctionalTopology) -> CanonicalFtKey:
    """Deterministic key: sorted directed edge list (determines nodes and root)."""
    return tuple(sorted(ft.edges))


def ft_delay(ft: FunctionalTopology) -> int:
    """Maximum hop distance from any node to the root."""
    return max(ft.depths.values())


def ft_energy(ft: FunctionalTopology) -> int:
    """Edge count, the energy macrostate proxy."""
    return len(ft.edges)


def ft_throughput(ft: FunctionalTopology) -> Fraction:
    """Function evaluations per unit delay, read as 1/delay."""
    return Fraction(1, ft_delay(ft))
