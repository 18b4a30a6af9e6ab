"""Estimator-style wrappers so enumeration and simulation compose with
scikit-learn tooling (get_params/set_params, clone, pipelines of graph
transforms). The fitted state lives in trailing-underscore attributes."""

from __future__ import annotations

from typing import Optional, Sequence

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .enumeration import FtCatalog, find_fts
from .graph import PhysicalNetwork, QuerySpec
from .metrics import DegeneracyReport
from .simulate import FailureModel, Strategy, run_simulation


class FtEnumerator(BaseEstimator):
    """Enumerates all functional topologies of a physical network.

    Parameters mirror the query: input node labels, sink label, and an
    optional delay budget (defaults to the sink's eccentricity at fit time).
    """

    def __init__(
        self,
        inputs: Optional[Sequence[str]] = None,
        sink: Optional[str] = None,
        d_max: Optional[int] = None,
        threads: int = 1,
    ):
        self.inputs = inputs
        self.sink = sink
        self.d_max = d_max
        self.threads = threads

    def fit(self, X: PhysicalNetwork, y=None) -> "FtEnumerator":
        if self.inputs is None or self.sink is None:
            raise ValueError("inputs and sink must be set before fitting")
        self.query_ = QuerySpec.for_network(X, self.inputs, self.sink, self.d_max)
        self.catalog_ = find_fts(X, self.query_, threads=self.threads)
        self.n_fts_ = len(self.catalog_)
        return self

    def transform(self, X: PhysicalNetwork) -> FtCatalog:
        """Return the catalog; X must be the network the estimator was fit on."""
        check_is_fitted(self, "catalog_")
        return self.catalog_

    def fit_transform(self, X: PhysicalNetwork, y=None) -> FtCatalog:
        return self.fit(X, y).transform(X)

    def degeneracy_report(self) -> DegeneracyReport:
        check_is_fitted(self, "catalog_")
        return DegeneracyReport.from_catalog(self.catalog_)


class ResilienceSimulator(BaseEstimator):
    """Monte Carlo failure simulation over a fitted catalog."""

    def __init__(
        self,
        node_fail_prob: float = 0.0,
        edge_fail_prob: float = 0.0,
        rounds: int = 10_000,
        seed: int = 0,
        strategy_kinds: Sequence[str] = ("static-single", "degenerate-fallback"),
        max_delay: Optional[int] = None,
        max_energy: Optional[int] = None,
        threads: int = 1,
    ):
        self.node_fail_prob = node_fail_prob
        self.edge_fail_prob = edge_fail_prob
        self.rounds = rounds
        self.seed = seed
        self.strategy_kinds = strategy_kinds
        self.max_delay = max_delay
        self.max_energy = max_energy
        self.threads = threads

    def fit(self, X: PhysicalNetwork, y: FtCatalog = None) -> "ResilienceSimulator":
        if y is None:
            raise ValueError("a fitted FtCatalog must be passed as y")
        model = FailureModel(
            node_fail_prob=self.node_fail_prob,
            edge_fail_prob=self.edge_fail_prob,
            seed=self.seed,
        )
        strategies = [
            Strategy(kind=k, max_delay=self.max_delay, max_energy=self.max_energy)
            for k in self.strategy_kinds
        ]
        self.report_ = run_simulation(
            X, y, model, strategies, rounds=self.rounds, threads=self.threads
        )
        return self

    def predict(self, X: PhysicalNetwork = None) -> dict[str, float]:
        """Per-strategy success rates from the last fit."""
        check_is_fitted(self, "report_")
        return {s.kind: s.success_rate for s in self.report_.strategies}
