"""Ksi-centrality, its distribution, and random-graph sweeps."""

from .centrality import (
    KsiScores,
    average_normalized_ksi,
    boundary_edge_count,
    boundary_edge_counts,
    ksi_all,
    ksi_all_dense_oracle,
)
from .distribution import (
    FitReport,
    Histogram,
    classify,
    fit_exponential,
    fit_gaussian_log,
    fit_report,
    histogram,
    log_fit_deviation,
)
from .generators import GeneratorSpec, generate
from .graph import Graph, from_edges, largest_connected_component, load_edge_list, write_edge_list

__version__ = "0.1.0"
