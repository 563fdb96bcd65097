"""Derived-equivalence invariants and constructions for finite posets."""

from .constructions import (
    AlgebraPresentation,
    BipartitePartition,
    StarViolation,
    ay_algebra,
    ay_poset,
    bipartite_flip,
    bipartite_partition,
    lex_sum,
    ordinal_sum,
)
from .fields import GF, QQ, ZZ, Field, parse_field
from .homology import betti, euler_char_simplicial, order_complex
from .invariants import (
    Distinguished,
    InvariantReport,
    NotDistinguished,
    coxeter_matrix,
    distinguish,
    euler_char_mobius,
    incidence_matrix,
    invariant_report,
    mobius_matrix,
)
from .io import load_poset, parse_poset, save_poset, serialize_poset
from .kernels import BACKEND
from .linalg import (
    ExactMatrix,
    char_poly,
    invariant_factors,
    inverse_unimodular,
    kronecker,
    nullspace,
    similar,
)
from .poset import (
    Poset,
    connected_components,
    covers,
    disjoint_union,
    is_closed,
    is_isomorphic,
    linear_extension,
    longest_chain,
    opposite,
    poset_from_relations,
    principal_sets,
    product,
    random_poset,
)
from .sheaves import (
    Diagram,
    constant_sheaf_injective_resolution,
    euler_form_sheaves,
    ext_dims,
    hochschild_dims,
    hom_space,
    projective_resolution,
    sheaf_cohomology_constant,
    standard_sheaf,
    top_and_cover,
    truncated_sheaf,
)

__version__ = "0.1.0"
