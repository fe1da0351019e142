"""Exact state-sum invariants of knot/surface/3-manifold triples.

The pipeline: build or load a flag-like triangulation of a triple
K in Sigma in M (`stratified_complex`), pick a finite gauge category
over the chain 1 < 2 < 3 (`parcel`) and optionally root-of-unity
coefficients on it (`cocycle`), then count or weight edge colorings
(`statesum`).  `moves` provides the local rewrites the invariants are
invariant under, and `cli` a command-line front end.
"""

from .cocycle import (
    CycValue,
    FullCocycle,
    GroupCocycle,
    PartialCocycle,
    check_condition_1,
    check_condition_2,
    check_condition_3,
    check_full_cocycle,
    pullback_group_cocycle,
    restrict,
    standard_cyclic_cocycle,
    trivial_partial_cocycle,
)
from .moves import MoveDescriptor, applicable, apply_move, candidate_sites, random_walk
from .parcel import (
    Arrow,
    Biset,
    GroupParcelSpec,
    Parcel,
    from_components,
    from_group_spec,
    full_group_spec,
    inverse,
    trivial_parcel,
    validate_parcel,
)
from .statesum import (
    CyclotomicSum,
    count_colorings,
    enumerate_colorings,
    twisted_invariant,
    untwisted_invariant,
    weight,
)
from .stratified_complex import (
    DirectedEdge,
    StratifiedTriangulation,
    VertexTable,
    barycentric_subdivision,
    canonical_form,
    edge_direction,
    epsilon,
    longest_path,
    reorder_vertices,
    s3_join_fixture,
    stellar_subdivide,
    validate,
)
from .validation import ValidationReport

__all__ = [name for name in dir() if not name.startswith("_")]
