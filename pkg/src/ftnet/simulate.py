"""Monte Carlo failure simulation over FT catalogs.

Failure patterns are drawn per round with a counter-based Philox generator
(numpy), keyed by the user seed and a fixed-size chunk index, so results are
bit-identical across runs and across worker counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .enumeration import FtCatalog
from .graph import (
    Edge,
    FunctionalTopology,
    GraphError,
    NodeId,
    PhysicalNetwork,
    canonical_key,
    ft_delay,
    ft_energy,
    undirected,
)
from .metrics import pairwise_redundancy
from .oracle import OracleCapExceeded, exact_success_probability

CHUNK_ROUNDS = 8192

STRATEGY_KINDS = ("static-single", "degenerate-fallback", "redundant-pair")


@dataclass(frozen=True)
class FailureModel:
    """Independent per-element failures; inputs and sink never fail."""

    node_fail_prob: float = 0.0
    edge_fail_prob: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        for p in (self.node_fail_prob, self.edge_fail_prob):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"failure probability {p} outside [0, 1]")


@dataclass(frozen=True)
class Strategy:
    """How the network picks an FT when elements fail.

    static-single commits to one FT; degenerate-fallback may use any FT in
    the (constraint-filtered) catalog; redundant-pair pre-selects a node-
    disjoint pair when one exists.
    """

    kind: str
    max_delay: Optional[int] = None
    max_energy: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")

    def filter_pool(self, catalog: FtCatalog) -> list[FunctionalTopology]:
        pool = []
        for ft in catalog:
            if self.max_delay is not None and ft_delay(ft) > self.max_delay:
                continue
            if self.max_energy is not None and ft_energy(ft) > self.max_energy:
                continue
            pool.append(ft)
        return pool


@dataclass
class StrategyResult:
    kind: str
    pool_size: int
    rounds: int
    successes: int
    success_rate: float
    ci_halfwidth: float
    exact_probability: Optional[float] = None
    selected_keys: list = field(default_factory=list)
    warning: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "pool_size": self.pool_size,
            "rounds": self.rounds,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "ci_halfwidth": self.ci_halfwidth,
            "exact_probability": self.exact_probability,
            "selected_fts": [[list(e) for e in key] for key in self.selected_keys],
            "warning": self.warning,
        }


@dataclass
class SimulationReport:
    seed: int
    rounds: int
    node_fail_prob: float
    edge_fail_prob: float
    catalog_size: int
    per_delay: dict[int, int]
    strategies: list[StrategyResult]
    note: str = (
        "strategies assume an omniscient selector: any surviving FT in the "
        "pool is found at no coordination cost"
    )

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "rounds": self.rounds,
            "node_fail_prob": self.node_fail_prob,
            "edge_fail_prob": self.edge_fail_prob,
            "catalog_size": self.catalog_size,
            "per_delay": {str(d): c for d, c in self.per_delay.items()},
            "strategies": [s.to_json_dict() for s in self.strategies],
            "note": self.note,
        }

    def to_csv_rows(self) -> list[tuple]:
        rows: list[tuple] = [("strategy", "rounds", "successes", "rate", "ci", "exact")]
        for s in self.strategies:
            exact = "" if s.exact_probability is None else s.exact_probability
            rows.append((s.kind, s.rounds, s.successes, s.success_rate, s.ci_halfwidth, exact))
        return rows


def ft_survives(
    ft: FunctionalTopology, dead_nodes: Iterable[NodeId], dead_edges: Iterable[Edge]
) -> bool:
    """True iff every node and every link of the FT is alive."""
    dead_nodes = set(dead_nodes)
    dead_edges = set(dead_edges)
    if ft.nodes & dead_nodes:
        return False
    return not any(undirected(u, v) in dead_edges for u, v in ft.edges)


def select_static_ft(catalog: FtCatalog, objective: str = "delay") -> FunctionalTopology:
    """Baseline designated FT: minimize delay or energy, ties by key order."""
    if objective not in ("delay", "energy"):
        raise ValueError(f"unknown objective {objective!r}")
    if len(catalog) == 0:
        raise GraphError("empty catalog")
    measure = ft_delay if objective == "delay" else ft_energy
    return min(catalog, key=lambda ft: (measure(ft), canonical_key(ft)))


def select_redundant_pair(catalog: FtCatalog):
    """First canonically-ordered pair with redundancy 1, or None."""
    fts = sorted(catalog, key=canonical_key)
    for i, a in enumerate(fts):
        for b in fts[i + 1 :]:
            if pairwise_redundancy(a, b, catalog.query):
                return a, b
    return None


def _ft_masks(
    fts: Sequence[FunctionalTopology],
    node_order: Sequence[NodeId],
    edge_order: Sequence[Edge],
) -> np.ndarray:
    """Boolean element-membership matrix, FTs x (nodes then edges)."""
    node_pos = {v: i for i, v in enumerate(node_order)}
    edge_pos = {e: len(node_order) + i for i, e in enumerate(edge_order)}
    masks = np.zeros((len(fts), len(node_order) + len(edge_order)), dtype=bool)
    for row, ft in enumerate(fts):
        for v in ft.nodes:
            if v in node_pos:
                masks[row, node_pos[v]] = True
        for u, v in ft.edges:
            masks[row, edge_pos[undirected(u, v)]] = True
    return masks


def simulate_survival(
    net: PhysicalNetwork,
    catalog: FtCatalog,
    model: FailureModel,
    rounds: int,
    threads: int = 1,
) -> np.ndarray:
    """Per-round survival matrix (rounds x FTs) for every FT in the catalog.

    Each round draws one failure pattern over all non-terminal network nodes
    and all network links; all FTs (hence all strategies) are evaluated on
    the same patterns. Rounds are generated in fixed-size chunks, each with
    its own Philox stream keyed by (seed, chunk index), so the result does
    not depend on the worker count.
    """
    if rounds <= 0:
        raise ValueError("rounds must be positive")
    terminals = catalog.query.terminals
    node_order = [v for v in net.sorted_nodes if v not in terminals]
    edge_order = list(net.sorted_edges)
    fts = list(catalog)
    masks = _ft_masks(fts, node_order, edge_order)
    fail_probs = np.concatenate(
        [
            np.full(len(node_order), model.node_fail_prob),
            np.full(len(edge_order), model.edge_fail_prob),
        ]
    )

    n_chunks = -(-rounds // CHUNK_ROUNDS)

    def run_chunk(ci: int) -> np.ndarray:
        size = min(CHUNK_ROUNDS, rounds - ci * CHUNK_ROUNDS)
        seq = np.random.SeedSequence(entropy=model.seed, spawn_key=(ci,))
        rng = np.random.Generator(np.random.Philox(seq))
        alive = rng.random((size, len(fail_probs))) >= fail_probs
        # FT survives iff every element it uses is alive
        return ~((~alive)[:, None, :] & masks[None, :, :]).any(axis=2)

    if threads <= 1:
        parts = [run_chunk(ci) for ci in range(n_chunks)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run_chunk, range(n_chunks)))
    return np.concatenate(parts, axis=0)


def run_simulation(
    net: PhysicalNetwork,
    catalog: FtCatalog,
    model: FailureModel,
    strategies: Sequence[Strategy],
    rounds: int,
    threads: int = 1,
    oracle_ft_cap: int = 20,
    return_per_round: bool = False,
):
    """Evaluate every strategy on shared per-round failure patterns."""
    survival = simulate_survival(net, catalog, model, rounds, threads=threads)
    fts = list(catalog)
    index_of = {canonical_key(ft): i for i, ft in enumerate(fts)}

    results: list[StrategyResult] = []
    per_round: dict[str, np.ndarray] = {}
    for strategy in strategies:
        pool = strategy.filter_pool(catalog)
        selected: list[FunctionalTopology] = []
        warning = None
        if not pool:
            warning = "empty FT pool after constraint filtering"
        elif strategy.kind == "static-single":
            sub = FtCatalog(query=catalog.query)
            for ft in pool:
                sub.add(ft)
            selected = [select_static_ft(sub)]
        elif strategy.kind == "redundant-pair":
            sub = FtCatalog(query=catalog.query)
            for ft in pool:
                sub.add(ft)
            pair = select_redundant_pair(sub)
            if pair is None:
                warning = "no redundant pair exists in the pool"
            else:
                selected = list(pair)
        else:
            selected = pool

        if selected:
            cols = [index_of[canonical_key(ft)] for ft in selected]
            wins = survival[:, cols].any(axis=1)
            successes = int(wins.sum())
        else:
            wins = np.zeros(rounds, dtype=bool)
            successes = 0
        rate = successes / rounds
        ci = 1.96 * math.sqrt(rate * (1.0 - rate) / rounds)
        exact = None
        if selected:
            try:
                exact = exact_success_probability(
                    selected,
                    model.node_fail_prob,
                    model.edge_fail_prob,
                    catalog.query.terminals,
                    ft_cap=oracle_ft_cap,
                )
            except OracleCapExceeded:
                exact = None
        results.append(
            StrategyResult(
                kind=strategy.kind,
                pool_size=len(pool),
                rounds=rounds,
                successes=successes,
                success_rate=rate,
                ci_halfwidth=ci,
                exact_probability=exact,
                selected_keys=[canonical_key(ft) for ft in selected],
                warning=warning,
            )
        )
        per_round[strategy.kind] = wins

    report = SimulationReport(
        seed=model.seed,
        rounds=rounds,
        node_fail_prob=model.node_fail_prob,
        edge_fail_prob=model.edge_fail_prob,
        catalog_size=len(catalog),
        per_delay={d: len(v) for d, v in catalog.delay_index.items()},
        strategies=results,
    )
    if return_per_round:
        return report, per_round
    return report
