"""Combinatorics and exact linear algebra for Dynkin quiver representations:
mesh-category hom dimensions, degeneration orders, and certified equality of
orbit-closure and rank-scheme tangent spaces."""

from .degeneration import (
    DegenerationPoset,
    Orbit,
    degenerates,
    degeneration_poset,
    enumerate_orbits,
    in_rank_scheme,
    pair_defect_matrix,
    sequence_defect,
)
from .dynkin import (
    DynkinGraph,
    DynkinQuiver,
    all_orientations,
    coxeter_number,
    default_orientation,
    dynkin_graph,
    euler_form,
    graph_distance,
    maximal_root,
    nakayama_involution,
    parse_orientation,
    positive_roots,
    tits_form,
)
from .mesh import ARQuiver, DirectSum, Mesh, MeshFunction, TranslationQuiver, ZVertex
from .reps import (
    Cocycle,
    DEFAULT_FIELD,
    FieldConfig,
    MatrixRep,
    coboundary_space,
    decompose,
    direct_sum,
    ext1_dim,
    hom_space,
    is_coboundary,
    middle_term,
    pullback_cocycle,
    pushout_cocycle,
    realize_sum,
    realize_vertex,
)
from .tangent import (
    Certificate,
    CurveLeaf,
    DescentNode,
    DescentSearchError,
    OrbitLeaf,
    TangentSpace,
    VerifyConfig,
    certify_tangent,
    curve_certificate,
    descent_step,
    orbit_tangent,
    rank_scheme_tangent,
    split_components,
    tangent_condition_direct,
    verify_certificate,
    verify_tangent_spaces,
)

__version__ = "0.1.0"
