"""Skew-symmetric graphs, their Lotka-Volterra systems, cloning and Lax pairs."""
from .errors import (
    BadParameter,
    BlowUp,
    DimensionMismatch,
    DuplicateVertex,
    LVGraphError,
    NotLVMorphism,
    NotMorphism,
    NotSurjective,
    PreconditionFailed,
    SelfLoop,
    SkewConflict,
    TooLarge,
    UnknownLabel,
    WeightDomainMismatch,
)
from .graphs import (
    DecloneResult,
    GraphMap,
    PermutationGroup,
    SkewGraph,
    are_isomorphic,
    aut_order_decomposed,
    automorphisms_brute,
    check_weights,
    clone_graph,
    declone,
    declone_morphism,
    disjoint_union,
    is_graph_morphism,
    is_irreducible,
    is_weighted_morphism,
    new_graph,
    unit_weights,
)
from .lv import (
    AutDescription,
    CasimirMonomial,
    LinearMap,
    LVSystem,
    NormalFormPartition,
    aut_description,
    block_map,
    casimir_basis,
    declone_lv_morphism,
    decloning_lvmap,
    glplus_sample,
    is_lv_morphism,
    lv_of_graph,
    lv_of_morphism,
    normal_form,
    poisson_condition_holds,
    preserves_hamiltonian,
    rank,
    vector_field,
)
from .families import bogo, delete_vertices, km, lv_n0, open_km
from .lax import CloneLayout, PolyMatrix, block_lax, bogo_lax, char_poly_invariants, lax_residual, pullback_lax
from .dynamics import (
    DriftReport,
    Trajectory,
    clone_decoupling_check,
    drift,
    flow_commutation_check,
    integrability_certificate,
    integrate,
)

__version__ = "0.1.0"
