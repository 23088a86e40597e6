"""Exact arithmetic for varieties of complexes.

The package computes with the space of all differentials on a fixed
graded vector space: its stratification by rank vectors, the tangent and
homotopy linear algebra at a stratum point, local chart maps, and the
limit of a one-parameter family of complexes as t -> 0, realized as a
reduced spectral sequence with a boundary stratum label.  All arithmetic
is exact (rationals, small prime fields, and rational functions regular
at t = 0); every basis-producing operation is deterministic, so results
are canonical and equality is decidable.
"""

from .complexes import (CohomologyData, Complex, GradedMap, NotAComplexError,
                        assemble_D_delta, chart_jacobian_rank, cohomology,
                        morphism_space, nullhomotopic_space, orbit_dim,
                        rank_vector, split_canonical, stabilizer_dim, validate)
from .degeneration import (Block, DVRDecomposition, LimitResult, PolyComplex,
                           TruncationTooSmall, dvr_decompose,
                           exponent_rank_table, filtered_oracle,
                           generic_rank_vector, limit_complete_complex,
                           page_table_from_multiplicities, validate_family)
from .linalg import (Matrix, complement_basis, inverse, kernel_basis,
                     local_at_zero, local_inverse, local_rank, rank, solve)
from .rings import GF, INF, LOCAL, QQ, GFElement, QPoly, RatFun, valuation
from .spectral import (CompleteComplex, SpectralSequence, StratumLabel,
                       canonical_ss_from_chain, equals, normalize,
                       stratum_label, validate_reduced)
from .strata import (Chain, GradedDims, RankVector, canonical_representative,
                     covering_relations, enumerate_R, enumerate_chains,
                     hasse_dot, is_maximal, maximal_elements, stratum_dim)

__version__ = "0.1.0"

__all__ = [
    "GF", "INF", "LOCAL", "QQ", "GFElement", "QPoly", "RatFun", "valuation",
    "Matrix", "rank", "kernel_basis", "solve", "complement_basis", "inverse",
    "local_rank", "local_inverse", "local_at_zero",
    "GradedDims", "RankVector", "Chain", "enumerate_R", "is_maximal",
    "maximal_elements", "covering_relations", "canonical_representative",
    "stratum_dim", "enumerate_chains", "hasse_dot",
    "Complex", "GradedMap", "CohomologyData", "NotAComplexError", "validate",
    "rank_vector", "cohomology", "split_canonical", "morphism_space",
    "nullhomotopic_space", "stabilizer_dim", "orbit_dim", "assemble_D_delta",
    "chart_jacobian_rank",
    "SpectralSequence", "CompleteComplex", "StratumLabel", "validate_reduced",
    "stratum_label", "canonical_ss_from_chain", "normalize", "equals",
    "PolyComplex", "Block", "DVRDecomposition", "LimitResult",
    "TruncationTooSmall", "validate_family", "generic_rank_vector",
    "dvr_decompose", "limit_complete_complex", "exponent_rank_table",
    "page_table_from_multiplicities", "filtered_oracle",
]
