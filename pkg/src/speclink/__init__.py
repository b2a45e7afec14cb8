"""Scalable link prediction with the resistance distance embedding."""

from .closest_pairs import PairDistanceResult, k_closest_pairs, k_closest_pairs_excluding
from .datasets import (
    EdgeRecord,
    FormatSpec,
    LinkPredictionInstance,
    SplitSpec,
    build_instance,
    downsample_top_degree,
    largest_connected_component,
    parse_edge_list,
    split_by_cutoff,
    split_two_snapshot,
)
from .embedding import EmbeddingPredictorConfig, predict_spec_cosine, predict_spec_euclid
from .evaluation import EvaluationReport, choose_k, evaluate, random_baseline
from .graph import Graph, build_graph, common_neighbor_count, degree, shortest_path_length
from .kernels import (
    GraphKernel,
    KatzParams,
    PageRankParams,
    exact_resistance_kernel,
    katz_kernel,
    predict_from_kernel,
    rooted_pagerank_kernel,
)
from .local import predict_local, predict_preferential_attachment
from .ranking import ScoredPair
from .spectral import (
    EigenPairs,
    SpectralEmbedding,
    compute_embedding,
    load_embedding,
    normalize_embedding,
    resistance_embedding,
    save_embedding,
    smallest_nonzero_eigenpairs,
)

__version__ = "0.1.0"

__all__ = [
    "PairDistanceResult",
    "k_closest_pairs",
    "k_closest_pairs_excluding",
    "EdgeRecord",
    "FormatSpec",
    "LinkPredictionInstance",
    "SplitSpec",
    "build_instance",
    "downsample_top_degree",
    "largest_connected_component",
    "parse_edge_list",
    "split_by_cutoff",
    "split_two_snapshot",
    "EmbeddingPredictorConfig",
    "predict_spec_cosine",
    "predict_spec_euclid",
    "EvaluationReport",
    "choose_k",
    "evaluate",
    "random_baseline",
    "Graph",
    "build_graph",
    "common_neighbor_count",
    "degree",
    "shortest_path_length",
    "GraphKernel",
    "KatzParams",
    "PageRankParams",
    "exact_resistance_kernel",
    "katz_kernel",
    "predict_from_kernel",
    "rooted_pagerank_kernel",
    "predict_local",
    "predict_preferential_attachment",
    "ScoredPair",
    "EigenPairs",
    "SpectralEmbedding",
    "compute_embedding",
    "load_embedding",
    "normalize_embedding",
    "resistance_embedding",
    "save_embedding",
    "smallest_nonzero_eigenpairs",
]
