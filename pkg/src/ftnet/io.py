"""Network ingestion and FT export formats.

Networks load from JSON ({"nodes": [...], "edges": [[a,b], ...]}) or a plain
edge list (one "a b" pair per line, '#' starts a comment). FTs export to DOT
digraphs (edges directed toward the root) and to JSON.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .graph import FunctionalTopology, GraphError, PhysicalNetwork, validate_network


def parse_network_json(obj: dict) -> PhysicalNetwork:
    if not isinstance(obj, dict) or "nodes" not in obj or "edges" not in obj:
        raise GraphError('network JSON must be an object with "nodes" and "edges"')
    return validate_network(obj["nodes"], obj["edges"])


def parse_edge_list(text: str) -> PhysicalNetwork:
    """Edge-list format: one 'a b' pair per line; nodes are inferred."""
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            nodes.append(parts[0])  # isolated node declaration
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'a b', got {line!r}")
        edges.append((parts[0], parts[1]))
        nodes.extend(parts)
    return validate_network(nodes, edges)


def load_network(path: Union[str, Path]) -> PhysicalNetwork:
    """Load a network file; JSON if it parses as JSON, else edge list."""
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return parse_edge_list(text)
    return parse_network_json(obj)


def network_to_json_dict(net: PhysicalNetwork) -> dict:
    return {
        "nodes": list(net.sorted_nodes),
        "edges": [list(e) for e in net.sorted_edges],
    }


def ft_to_json_dict(ft: FunctionalTopology) -> dict:
    return {
        "root": ft.root,
        "edges": [list(e) for e in sorted(ft.edges)],
    }


def ft_from_json_dict(obj: dict) -> FunctionalTopology:
    edges = frozenset((str(u), str(v)) for u, v in obj["edges"])
    return FunctionalTopology(edges=edges, root=str(obj["root"]))


def ft_to_dot(ft: FunctionalTopology, name: str = "ft") -> str:
    lines = [f"digraph {name} {{"]
    lines.append(f'  "{ft.root}" [shape=doublecircle];')
    for child, parent in sorted(ft.edges):
        lines.append(f'  "{child}" -> "{parent}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
