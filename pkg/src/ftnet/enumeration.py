"""End-to-end FT enumeration: path combination, spanning-tree expansion,
leaf pruning, and deduplication."""

from __future__ import annotations

import itertools
import threading
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Iterator, Optional, Sequence

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
from .paths import SimplePath, enumerate_simple_paths
from .spanning import all_spanning_trees, is_tree

PathCombination = tuple[SimplePath, ...]
ProgressCallback = Callable[[int, int], None]


class EnumerationError(GraphError):
    """The query cannot be enumerated on this network."""


def union_combination(combo: PathCombination) -> tuple[frozenset[NodeId], frozenset[Edge]]:
    """Union of nodes and undirected edges across one path per input."""
    nodes: set[NodeId] = set()
    edges: set[Edge] = set()
    for path in combo:
        nodes.update(path)
        for u, v in zip(path, path[1:]):
            edges.add(undirected(u, v))
    return frozenset(nodes), frozenset(edges)


def prune_non_input_leaves(
    tree_nodes: frozenset[NodeId],
    tree_edges: frozenset[Edge],
    query: QuerySpec,
) -> Optional[FunctionalTopology]:
    """Strip non-input leaves, orient toward the sink, enforce the budget.

    Leaves outside X ∪ {Y} are removed iteratively until every leaf is an
    input (the sink may remain a leaf; it is never pruned). Returns None when
    the resulting in-tree's delay exceeds d_max.
    """
    keep = query.terminals
    degree: dict[NodeId, int] = {v: 0 for v in tree_nodes}
    adj: dict[NodeId, set[NodeId]] = {v: set() for v in tree_nodes}
    for u, v in tree_edges:
        adj[u].add(v)
        adj[v].add(u)
        degree[u] += 1
        degree[v] += 1

    removable = deque(v for v in tree_nodes if degree[v] == 1 and v not in keep)
    alive = set(tree_nodes)
    while removable:
        v = removable.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        (neighbor,) = adj[v]
        adj[neighbor].discard(v)
        degree[neighbor] -= 1
        adj[v] = set()
        if degree[neighbor] == 1 and neighbor not in keep:
            removable.append(neighbor)

    # orient every remaining edge toward the sink
    directed: set[tuple[NodeId, NodeId]] = set()
    depth = {query.sink: 0}
    queue = deque([query.sink])
    max_depth = 0
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in depth:
                depth[w] = depth[v] + 1
                max_depth = max(max_depth, depth[w])
                directed.add((w, v))
                queue.append(w)

    if max_depth > query.d_max:
        return None
    return FunctionalTopology(edges=frozenset(directed), root=query.sink)


def _paths_per_input(net: PhysicalNetwork, query: QuerySpec) -> list[list[SimplePath]]:
    if not net.is_connected():
        raise EnumerationError("network is disconnected")
    per_input: list[list[SimplePath]] = []
    unreachable: list[NodeId] = []
    for x in sorted(query.inputs):
        paths = enumerate_simple_paths(net, x, query.sink, query.d_max)
        if not paths:
            unreachable.append(x)
        per_input.append(paths)
    if unreachable:
        raise EnumerationError(
            f"no path within d_max={query.d_max} from inputs: {unreachable}"
        )
    return per_input


def _fts_of_combination(combo: PathCombination, query: QuerySpec) -> list[FunctionalTopology]:
    """Paper procedure for one combination: union, spanning trees if cyclic, prune."""
    nodes, edges = union_combination(combo)
    out = []
    if is_tree(nodes, edges):
        candidates: Iterator[frozenset[Edge]] = iter([edges])
    else:
        candidates = all_spanning_trees(nodes, edges)
    for tree_edges in candidates:
        ft = prune_non_input_leaves(nodes, tree_edges, query)
        if ft is not None:
            out.append(ft)
    return out


def iter_fts(
    net: PhysicalNetwork,
    query: QuerySpec,
    progress: Optional[ProgressCallback] = None,
) -> Iterator[FunctionalTopology]:
    """Yield distinct FTs in deterministic first-discovery order.

    Combinations stream lazily; deduplication is incremental via canonical
    keys, so memory stays bounded by the key set.
    """
    per_input = _paths_per_input(net, query)
    total = prod(len(p) for p in per_input)
    seen: set[CanonicalFtKey] = set()
    for done, combo in enumerate(itertools.product(*per_input), start=1):
        for ft in _fts_of_combination(combo, query):
            key = canonical_key(ft)
            if key not in seen:
                seen.add(key)
                yield ft
        if progress is not None:
            progress(done, total)


@dataclass
class FtCatalog:
    """Deduplicated FT set for one query, in deterministic discovery order."""

    query: QuerySpec
    fts: dict[CanonicalFtKey, FunctionalTopology] = field(default_factory=dict)

    def add(self, ft: FunctionalTopology) -> bool:
        key = canonical_key(ft)
        if key in self.fts:
            return False
        self.fts[key] = ft
        return True

    def __len__(self) -> int:
        return len(self.fts)

    def __iter__(self) -> Iterator[FunctionalTopology]:
        return iter(self.fts.values())

    def keys(self) -> list[CanonicalFtKey]:
        return list(self.fts)

    @property
    def delay_index(self) -> dict[int, list[FunctionalTopology]]:
        index: dict[int, list[FunctionalTopology]] = {}
        for ft in self.fts.values():
            index.setdefault(ft_delay(ft), []).append(ft)
        return dict(sorted(index.items()))


def find_fts(
    net: PhysicalNetwork,
    query: QuerySpec,
    threads: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> FtCatalog:
    """Enumerate all FTs of the network for the query.

    With threads > 1 the combination space is split into contiguous slices of
    the first input's path list; per-slice results are merged in slice order,
    so the catalog is identical to the single-threaded one.
    """
    catalog = FtCatalog(query=query)
    if threads <= 1:
        for ft in iter_fts(net, query, progress):
            catalog.add(ft)
        return catalog

    per_input = _paths_per_input(net, query)
    head, rest = per_input[0], per_input[1:]
    total = prod(len(p) for p in per_input)
    done = 0
    lock = threading.Lock()

    def work(slice_paths: Sequence[SimplePath]) -> dict[CanonicalFtKey, FunctionalTopology]:
        nonlocal done
        local: dict[CanonicalFtKey, FunctionalTopology] = {}
        for combo in itertools.product(slice_paths, *rest):
            for ft in _fts_of_combination(combo, query):
                local.setdefault(canonical_key(ft), ft)
            if progress is not None:
                with lock:
                    done += 1
                    progress(done, total)
        return local

    chunk = max(1, -(-len(head) // threads))
    slices = [head[i : i + chunk] for i in range(0, len(head), chunk)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for local in pool.map(work, slices):
            for key, ft in local.items():
                if key not in catalog.fts:
                    catalog.fts[key] = ft
    return catalog
