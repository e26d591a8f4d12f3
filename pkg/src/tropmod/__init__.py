"""Homology of moduli spaces of weighted stable tropical curves in genus 0 and 1."""

__version__ = "0.1.0"

from .weights import (  # noqa: E402
    EdgeCase,
    Split,
    WeightError,
    WeightVector,
    admissible_splits,
    classify_edge_cases,
    heavy_family,
    is_path_space,
    splits_compatible,
    subset_weight,
)
from .complexes import (  # noqa: E402
    CapacityError,
    SimplicialComplex,
    build_delta0,
    build_delta_u,
    build_double_cover,
    build_heavy_locus,
    build_rank_selected_flag,
    face_to_tree,
    relabel_marks,
    suspend,
)
from .homology import (  # noqa: E402
    HomologyProfile,
    boundary_matrices,
    complex_stats,
    homology,
    invariant_homology,
    relative_homology,
)
from .linalg import smith_normal_form  # noqa: E402
from .arrangements import (  # noqa: E402
    disconnected_prediction,
    gaps_support,
    gm_link_homology,
    heavy_light_prediction,
    intersection_lattice,
    interval_order_complex,
    lex_facet_order,
    predicted_delta0_profile,
    rep_dimension,
    verify_shelling,
)
from .genus_one import (  # noqa: E402
    enumerate_genus1_graphs,
    genus1_betti_prediction,
    genus1_chain_complex,
    genus1_homology,
    verify_double_suspension,
)
from .expr import format_weights, parse_weight_expr  # noqa: E402

__all__ = [
    "__version__",
    "EdgeCase",
    "Split",
    "WeightError",
    "WeightVector",
    "admissible_splits",
    "classify_edge_cases",
    "heavy_family",
    "is_path_space",
    "splits_compatible",
    "subset_weight",
    "CapacityError",
    "SimplicialComplex",
    "build_delta0",
    "build_delta_u",
    "build_double_cover",
    "build_heavy_locus",
    "build_rank_selected_flag",
    "face_to_tree",
    "relabel_marks",
    "suspend",
    "HomologyProfile",
    "boundary_matrices",
    "complex_stats",
    "homology",
    "invariant_homology",
    "relative_homology",
    "disconnected_prediction",
    "gaps_support",
    "gm_link_homology",
    "heavy_light_prediction",
    "intersection_lattice",
    "interval_order_complex",
    "lex_facet_order",
    "predicted_delta0_profile",
    "rep_dimension",
    "verify_shelling",
    "enumerate_genus1_graphs",
    "genus1_betti_prediction",
    "genus1_chain_complex",
    "genus1_homology",
    "verify_double_suspension",
    "smith_normal_form",
    "format_weights",
    "parse_weight_expr",
]
