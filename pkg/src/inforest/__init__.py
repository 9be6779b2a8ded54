"""Laplacian analysis of weighted digraphs for consensus problems.

Ranks and in-forest dimensions from strongly connected components, Laplacian
spectra, the matrix of maximal in-forests computed by enumeration, by the
eigenprojector and by Perron-matrix limits, and the consensus dynamics those
limits govern.
"""
from .digraph import (
    Digraph,
    build_digraph,
    format_edge_list,
    laplacian,
    max_out_degree,
    parse_edge_list,
    perron_matrix,
    read_edge_list,
)
from .dynamics import (
    LongRunResult,
    PerronProperties,
    Trajectory,
    cesaro_limit,
    perron_properties,
    power_limit,
    simulate_continuous,
    simulate_discrete,
)
from .forests import ForestSummary, InForest, enumerate_in_forests, maximal_forest_matrix
from .scc import (
    RankReport,
    SccDecomposition,
    has_spanning_converging_tree,
    in_forest_dimension,
    rank_report,
    scc_decompose,
)
from .spectral import (
    Eigenprojector,
    SpectralReport,
    eigenprojector_at_zero,
    eigenvalues,
    numerical_rank,
    spectral_report,
)

__version__ = "0.1.0"
