"""Exact toolkit for Turán problems of tight r-trees."""

__version__ = "0.1.0"

from .hypergraph import (  # noqa: E402
    Hypergraph,
    HypergraphError,
    ParseError,
    WeightMap,
    default_weights,
    degree,
    link,
    min_p_degree,
    parse_hypergraph,
    format_hypergraph,
    shadow,
)
from .trees import (  # noqa: E402
    RPartition,
    TightTreeCert,
    TrunkCert,
    are_isomorphic,
    enumerate_tight_trees,
    is_star_shaped,
    r_partition,
    tight_order,
    trunk_number,
)
from .embedding import (  # noqa: E402
    EmbedTrace,
    color_preserving_embed,
    dense_link_vertex,
    embed_bounded_trunk,
    embed_small_tree,
    extract_min_codegree,
    find_embedding,
    pattern,
    rainbow_subgraph,
)
from .search import (  # noqa: E402
    RatioResult,
    SearchResult,
    beta_exact,
    turan_exact,
    verify_kalai,
    verify_shadow_bound,
)

__all__ = [
    "__version__",
    "Hypergraph",
    "HypergraphError",
    "ParseError",
    "WeightMap",
    "default_weights",
    "degree",
    "link",
    "min_p_degree",
    "parse_hypergraph",
    "format_hypergraph",
    "shadow",
    "RPartition",
    "TightTreeCert",
    "TrunkCert",
    "are_isomorphic",
    "enumerate_tight_trees",
    "is_star_shaped",
    "r_partition",
    "tight_order",
    "trunk_number",
    "EmbedTrace",
    "color_preserving_embed",
    "dense_link_vertex",
    "embed_bounded_trunk",
    "embed_small_tree",
    "extract_min_codegree",
    "find_embedding",
    "pattern",
    "rainbow_subgraph",
    "RatioResult",
    "SearchResult",
    "beta_exact",
    "turan_exact",
    "verify_kalai",
    "verify_shadow_bound",
]
