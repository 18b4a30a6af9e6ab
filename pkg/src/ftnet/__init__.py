"""ftnet: enumerate delay-bounded in-network computation trees, measure
their degeneracy and redundancy, and quantify resilience under failures."""

__version__ = "0.1.0"

from .graph import (
    FunctionalTopology,
    GraphError,
    PhysicalNetwork,
    QuerySpec,
    canonical_key,
    eccentricity,
    ft_delay,
    ft_energy,
    ft_throughput,
    validate_network,
)
from .enumeration import EnumerationError, FtCatalog, find_fts, iter_fts
from .metrics import (
    DegeneracyReport,
    FunctionSpec,
    RedundancyReport,
    average_redundancy,
    bell_number,
    evaluate_ft,
    pairwise_redundancy,
    weak_degeneracy,
    weak_degeneracy_cumulative,
)
from .oracle import (
    OracleCapExceeded,
    exact_success_probability,
    matrix_tree_count,
    oracle_enumerate_fts,
)
from .simulate import (
    FailureModel,
    SimulationReport,
    Strategy,
    ft_survives,
    run_simulation,
    select_redundant_pair,
    select_static_ft,
)
from .estimators import FtEnumerator, ResilienceSimulator

__all__ = [
    "__version__",
    "FunctionalTopology",
    "GraphError",
    "PhysicalNetwork",
    "QuerySpec",
    "canonical_key",
    "eccentricity",
    "ft_delay",
    "ft_energy",
    "ft_throughput",
    "validate_network",
    "EnumerationError",
    "FtCatalog",
    "find_fts",
    "iter_fts",
    "DegeneracyReport",
    "FunctionSpec",
    "RedundancyReport",
    "average_redundancy",
    "bell_number",
    "evaluate_ft",
    "pairwise_redundancy",
    "weak_degeneracy",
    "weak_degeneracy_cumulative",
    "OracleCapExceeded",
    "exact_success_probability",
    "matrix_tree_count",
    "oracle_enumerate_fts",
    "FailureModel",
    "SimulationReport",
    "Strategy",
    "ft_survives",
    "run_simulation",
    "select_redundant_pair",
    "select_static_ft",
    "FtEnumerator",
    "ResilienceSimulator",
]
