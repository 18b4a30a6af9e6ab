"""Degeneracy counts, Bell numbers, redundancy, and in-network evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .enumeration import EnumerationError, FtCatalog, find_fts
from .graph import (
    FunctionalTopology,
    GraphError,
    NodeId,
    PhysicalNetwork,
    QuerySpec,
    canonical_key,
    ft_delay,
)

FUNCTION_KINDS = ("sum", "max", "min", "count")


@dataclass(frozen=True)
class FunctionSpec:
    """A symmetric, divisible aggregate: sum, max, min, or count."""

    kind: str

    def __post_init__(self) -> None:
        if self.kind not in FUNCTION_KINDS:
            raise ValueError(f"unknown function kind {self.kind!r}")

    def source_value(self, value):
        """Contribution of a single input node."""
        return 1 if self.kind == "count" else value

    def combine(self, parts: Sequence):
        """Fold partial results; associative and commutative."""
        if self.kind in ("sum", "count"):
            return sum(parts)
        if self.kind == "max":
            return max(parts)
        return min(parts)

    def direct(self, values: Mapping[NodeId, float], inputs: Iterable[NodeId]):
        """The function applied centrally to all input values at once."""
        return self.combine([self.source_value(values[x]) for x in inputs])


def evaluate_ft(
    ft: FunctionalTopology, f: FunctionSpec, values: Mapping[NodeId, float], query: QuerySpec
) -> float:
    """Simulate in-network evaluation over the FT, returning the root result.

    Each node folds its children's partial results together with its own
    measurement when it is an input; children are visited in canonical label
    order. Must equal the direct function value for any divisible f.
    """
    missing = [x for x in sorted(query.inputs) if x not in values]
    if missing:
        raise GraphError(f"missing values for inputs: {missing}")

    def value_at(v: NodeId):
        parts = [value_at(c) for c in ft.children[v]]
        if v in query.inputs:
            parts.append(f.source_value(values[v]))
        return f.combine(parts)

    return value_at(ft.root)


def weak_degeneracy(catalog: FtCatalog, d: int) -> int:
    """Number of FTs whose delay is exactly d."""
    return sum(1 for ft in catalog if ft_delay(ft) == d)


def weak_degeneracy_cumulative(catalog: FtCatalog, d: int) -> int:
    """Number of FTs whose delay is at most d."""
    return sum(1 for ft in catalog if ft_delay(ft) <= d)


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    """Bell number B_n via B_{n+1} = sum_k C(n,k) B_k, B_0 = B_1 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return 1
    return sum(comb(n - 1, k) * bell_number(k) for k in range(n))


def pairwise_redundancy(
    a: FunctionalTopology, b: FunctionalTopology, query: QuerySpec, strict: bool = False
) -> int:
    """1 iff the FTs' node sets intersect in exactly X ∪ {Y}.

    The strict variant additionally requires the FTs to share no edge, which
    can differ when both route an input straight to the sink.
    """
    if (a.nodes & b.nodes) != query.terminals:
        return 0
    if strict and (a.undirected_edges & b.undirected_edges):
        return 0
    return 1


@dataclass
class DegeneracyReport:
    """Per-delay FT multiplicity next to the input-partition Bell bound."""

    query: QuerySpec
    per_delay: dict[int, int]
    total: int
    bell_bound: int

    @classmethod
    def from_catalog(cls, catalog: FtCatalog) -> "DegeneracyReport":
        per_delay: dict[int, int] = {}
        for ft in catalog:
            d = ft_delay(ft)
            per_delay[d] = per_delay.get(d, 0) + 1
        return cls(
            query=catalog.query,
            per_delay=dict(sorted(per_delay.items())),
            total=len(catalog),
            bell_bound=bell_number(len(catalog.query.inputs)),
        )

    def to_json_dict(self) -> dict:
        return {
            "inputs": sorted(self.query.inputs),
            "sink": self.query.sink,
            "d_max": self.query.d_max,
            "per_delay": {str(d): c for d, c in self.per_delay.items()},
            "total": self.total,
            "bell_bound": self.bell_bound,
        }

    def to_csv_rows(self) -> list[tuple]:
        return [("delay", "count")] + [(d, c) for d, c in self.per_delay.items()]


@dataclass
class RedundancyReport:
    """Pairwise redundancy indicators and the averaged R value."""

    sink: NodeId
    input_family: list[frozenset[NodeId]]
    per_set: list[dict] = field(default_factory=list)
    average: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "sink": self.sink,
            "input_family": [sorted(xs) for xs in self.input_family],
            "per_set": self.per_set,
            "average_redundancy": self.average,
        }

    def to_csv_rows(self) -> list[tuple]:
        rows: list[tuple] = [("input_set", "i", "j", "r")]
        for entry in self.per_set:
            label = ",".join(entry["inputs"])
            for i, j, r in entry["pairs"]:
                rows.append((label, i, j, r))
        return rows


def redundancy_for_catalog(catalog: FtCatalog, strict: bool = False) -> dict:
    """Inner term of the average: sum of r over ordered pairs, divided by N_X."""
    fts = list(catalog)
    n = len(fts)
    pairs: list[tuple[int, int, int]] = []
    partner_counts = [0] * n
    total = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            r = pairwise_redundancy(fts[i], fts[j], catalog.query, strict=strict)
            pairs.append((i, j, r))
            if r:
                partner_counts[i] += 1
                total += r
    return {
        "inputs": sorted(catalog.query.inputs),
        "n_fts": n,
        "pairs": pairs,
        "partner_counts": partner_counts,
        "value": (total / n) if n else 0.0,
    }


def average_redundancy(
    net: PhysicalNetwork,
    y: NodeId,
    input_family: Sequence[Iterable[NodeId]],
    d_max: Optional[int] = None,
    strict: bool = False,
) -> RedundancyReport:
    """Mean redundancy over an input-set family.

    Per input set X: build the catalog, sum r(H_i, H_j) over ordered pairs
    i != j, divide by the FT count N_X; input sets with no FT contribute 0.
    The family average divides by the family size.
    """
    if not input_family:
        raise ValueError("input-set family must be nonempty")
    family = [frozenset(str(x) for x in xs) for xs in input_family]
    report = RedundancyReport(sink=str(y), input_family=family)
    for xs in family:
        query = QuerySpec.for_network(net, xs, y, d_max)
        try:
            catalog = find_fts(net, query)
        except EnumerationError:
            catalog = FtCatalog(query=query)
        report.per_set.append(redundancy_for_catalog(catalog, strict=strict))
    report.average = sum(e["value"] for e in report.per_set) / len(family)
    return report


def partner_keys(catalog: FtCatalog, strict: bool = False) -> dict:
    """Map each FT key to the keys of its redundant partners."""
    fts = list(catalog)
    out: dict = {}
    for a in fts:
        partners = [
            canonical_key(b)
            for b in fts
            if b is not a and pairwise_redundancy(a, b, catalog.query, strict=strict)
        ]
        out[canonical_key(a)] = partners
    return out
