"""Zigzag algebras of graphs: exact derivation spaces and HH^0 / HH^1.

The package computes, entirely in exact arithmetic, the zigzag algebra of a
simple connected graph, its center, its spaces of derivations (plus jordan
and anti variants), its inner derivations, and the dimensions of the two
lowest Hochschild cohomology groups; for trees it certifies the closed
formulas dim Der = 3n - 2, dim Inner = 3n - 3 and dim HH^1 = 1 by two
independent computation routes.
"""

from .exactlin import (
    FieldMismatchError,
    Matrix,
    PrimeField,
    RATIONALS,
    Rationals,
    nullspace_basis,
    parse_field,
    rref,
    span_dim,
    span_equal,
)
from .linmaps import (
    CharacteristicTwoError,
    DerivationParams,
    InternalInvariantError,
    LinearMap,
    MapSpace,
    ad_map,
    check_structure,
    hh_dims,
    inner_space,
    leibniz_system,
    materialize,
    solve,
    structured_parameter_basis,
    structured_space,
    verify_map,
)
from .quiver import (
    Graph,
    GraphParseError,
    Xorshift64Star,
    double_quiver,
    parse_graph,
    path_graph,
    random_tree,
    serialize_graph,
    star_graph,
    validate,
)
from .zigzag import (
    BasisElement,
    ZigzagAlgebra,
    arrow,
    build_algebra,
    center,
    check_associativity,
    cycle,
    idem,
    multiply,
    with_patched_table,
)

__all__ = [
    "BasisElement",
    "CharacteristicTwoError",
    "DerivationParams",
    "FieldMismatchError",
    "Graph",
    "GraphParseError",
    "InternalInvariantError",
    "LinearMap",
    "MapSpace",
    "Matrix",
    "PrimeField",
    "RATIONALS",
    "Rationals",
    "Xorshift64Star",
    "ZigzagAlgebra",
    "ad_map",
    "arrow",
    "build_algebra",
    "center",
    "check_associativity",
    "check_structure",
    "cycle",
    "double_quiver",
    "hh_dims",
    "idem",
    "inner_space",
    "leibniz_system",
    "materialize",
    "multiply",
    "nullspace_basis",
    "parse_field",
    "parse_graph",
    "path_graph",
    "random_tree",
    "rref",
    "serialize_graph",
    "solve",
    "span_dim",
    "span_equal",
    "star_graph",
    "structured_parameter_basis",
    "structured_space",
    "validate",
    "verify_map",
    "with_patched_table",
]
