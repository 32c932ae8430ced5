"""Consistent path systems and how closely metrics can realize them."""

from .core import Graph, PairWeights, PathSystem, path_cost, subpath, validate_system
from .delta import (MetricCertificate, build_invariant_metric_lp, build_metric_lp, delta_bisect,
                    exact_threshold, is_metric, verify_certificate)
from .groups import (WordTable, build_from_words, cayley_construction, paley_system,
                     petersen_system, sample_X)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Graph", "MetricCertificate", "PairWeights", "PathSystem", "WordTable",
    "build_from_words", "build_invariant_metric_lp", "build_metric_lp", "cayley_construction",
    "delta_bisect", "exact_threshold", "is_metric", "paley_system", "path_cost",
    "petersen_system", "sample_X", "subpath", "validate_system", "verify_certificate",
]
