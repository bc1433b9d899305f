"""Exact combinatorics for Clifford double mirrors of reflexive Gorenstein cones.

Cones and their degree slices, decompositions of the dual degree element,
central regular triangulations, the potential and its quadric part, group
character checks, Gram matrices and even Clifford algebras.  All arithmetic
is over the integers or the rationals.
"""

from .cones import (
    Cone,
    GorensteinPair,
    check_reflexive_pair,
    cone_from_json,
    cone_over_polytope,
    direct_sum,
    dual_cone,
    gorenstein_degree,
    make_cone,
    orthant,
    slice_points,
)
from .decomp import Decomposition, enumerate_decompositions, partition_of, product_decomposition, validate
from .fans import (
    Triangulation,
    build_central_triangulation,
    check_centrality,
    check_regularity,
    product_triangulation,
    quotient_maximal_cones,
)
from .laurent import LaurentPoly, discriminant_quadratic, parse
from .mirror import (
    InvariantBreach,
    Potential,
    bpf_witnesses,
    build_potential,
    character_data,
    flatness_check,
    verify_semiinvariance,
)
from .quadric import (
    EvenCliffordAlgebra,
    QuadricFibration,
    corank_at,
    degeneration_divisor,
    even_clifford,
    gram_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
