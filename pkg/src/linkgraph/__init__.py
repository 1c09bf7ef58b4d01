"""Structural analysis of large directed link graphs.

The package covers five areas: graph ingest and storage, bow-tie
connectivity decomposition, heavy-tailed degree statistics, directed
and reciprocal degree correlations, and a crawl-bias simulator.
"""
from .components import BowTieClass, BowTiePartition, bowtie_decompose
from .correlations import (
    CorrelationProfile,
    KnnVariant,
    avg_out_given_in,
    crossed_one_point,
    directed_knn,
    knn_undirected,
)
from .crawl_sim import (
    BiasReport,
    CrawlConfig,
    CrawlOutcome,
    CrawlProto,
    CrawlStrategy,
    ExplicitDegreeLaw,
    FrontierMode,
    GenerationReport,
    GeneratorConfig,
    PoissonDegreeLaw,
    ZetaDegreeLaw,
    bias_report,
    generate,
    generate_decomposed,
    graph_statistics,
    law_mean,
    run_ensemble,
    simulate_crawl,
)
from .degree_stats import (
    CumulativeCurve,
    DegreeHistogram,
    DegreeSummary,
    Direction,
    PowerLawFit,
    crossed_heterogeneity,
    cumulative,
    degree_histogram,
    mle_powerlaw,
    sample_zeta,
    select_fit_range,
    summarize,
)
from .errors import (
    CacheFormatError,
    EdgeListParseError,
    FitConvergenceError,
    GenerationError,
    LinkGraphError,
    PowerLawFitError,
    ProvenanceError,
    UndefinedStatisticError,
)
from .graph import (
    DirectedGraph,
    IngestReport,
    UndirectedGraph,
    build_from_edge_list,
    degrees,
    induced_subgraph,
    load_cache,
    save_cache,
    undirected_view,
)
from .reciprocity import (
    ReciprocalDecomposition,
    ReciprocalKnnVariant,
    avg_clustering_by_degree,
    clustering,
    conditional_means_nr,
    crossed_one_point_nr,
    decompose,
    r_degree_stats,
    reciprocal_knn,
    reciprocal_scatter,
    reciprocal_subgraph,
)

__version__ = "0.1.0"

__all__ = [
    "BiasReport",
    "BowTieClass",
    "BowTiePartition",
    "CacheFormatError",
    "CorrelationProfile",
    "CrawlConfig",
    "CrawlOutcome",
    "CrawlProto",
    "CrawlStrategy",
    "CumulativeCurve",
    "DegreeHistogram",
    "DegreeSummary",
    "DirectedGraph",
    "Direction",
    "EdgeListParseError",
    "ExplicitDegreeLaw",
    "FitConvergenceError",
    "FrontierMode",
    "GenerationError",
    "GenerationReport",
    "GeneratorConfig",
    "IngestReport",
    "KnnVariant",
    "LinkGraphError",
    "PoissonDegreeLaw",
    "PowerLawFit",
    "PowerLawFitError",
    "ProvenanceError",
    "ReciprocalDecomposition",
    "ReciprocalKnnVariant",
    "UndefinedStatisticError",
    "UndirectedGraph",
    "ZetaDegreeLaw",
    "avg_clustering_by_degree",
    "avg_out_given_in",
    "bias_report",
    "bowtie_decompose",
    "build_from_edge_list",
    "clustering",
    "conditional_means_nr",
    "crossed_heterogeneity",
    "crossed_one_point",
    "crossed_one_point_nr",
    "cumulative",
    "decompose",
    "degree_histogram",
    "degrees",
    "directed_knn",
    "generate",
    "generate_decomposed",
    "graph_statistics",
    "law_mean",
    "induced_subgraph",
    "knn_undirected",
    "load_cache",
    "mle_powerlaw",
    "r_degree_stats",
    "reciprocal_knn",
    "reciprocal_scatter",
    "reciprocal_subgraph",
    "run_ensemble",
    "sample_zeta",
    "save_cache",
    "select_fit_range",
    "simulate_crawl",
    "summarize",
    "undirected_view",
]
