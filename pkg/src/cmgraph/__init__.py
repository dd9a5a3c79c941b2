"""Chain graphs, chain mixed graphs, and anterial graphs.

Classification, c-separation, moralization, latent projection
(marginalization), conditioning, anterial closure, induced independence
models, and a seeded property-check harness.
"""

from .graph import (
    ANG,
    ARC,
    ARROW,
    CG,
    CMG,
    DAG,
    LINE,
    UG,
    MixedGraph,
    ancestors,
    anteriors,
    build_graph,
    chain_components,
    classify,
    format_classes,
    has_semidirected_cycle_with_arrow,
    moral_graph,
)
from .kernel import backend_name
from .separation import (
    MODE_PATHS,
    MODE_WALKS,
    IndependenceModel,
    SeparationQuery,
    bounded_walk_oracle,
    c_connecting_witness,
    c_separated,
    is_maximal,
    models_equal,
    moral_separated,
    non_maximality_witness,
    pairwise_model,
)
from .transform import (
    TransformSpec,
    ang_transform,
    anterialize,
    condition,
    conditional_edge_oracle,
    in_ang_projection_class,
    in_cg_projection_class,
    marginal_edge_oracle,
    marginalize,
    marginalize_and_condition,
    subprimitive_walk_exists,
)
from .walks import Section, Walk, is_c_connecting, section_decomposition

__version__ = "0.1.0"

__all__ = [
    "ANG",
    "ARC",
    "ARROW",
    "CG",
    "CMG",
    "DAG",
    "LINE",
    "UG",
    "MODE_PATHS",
    "MODE_WALKS",
    "IndependenceModel",
    "MixedGraph",
    "Section",
    "SeparationQuery",
    "TransformSpec",
    "Walk",
    "ancestors",
    "ang_transform",
    "anteriors",
    "anterialize",
    "backend_name",
    "bounded_walk_oracle",
    "build_graph",
    "c_connecting_witness",
    "c_separated",
    "chain_components",
    "classify",
    "condition",
    "conditional_edge_oracle",
    "format_classes",
    "has_semidirected_cycle_with_arrow",
    "in_ang_projection_class",
    "in_cg_projection_class",
    "is_c_connecting",
    "is_maximal",
    "marginal_edge_oracle",
    "marginalize",
    "marginalize_and_condition",
    "models_equal",
    "moral_graph",
    "moral_separated",
    "non_maximality_witness",
    "pairwise_model",
    "section_decomposition",
    "subprimitive_walk_exists",
]
