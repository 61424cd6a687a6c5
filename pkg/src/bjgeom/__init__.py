"""Birkhoff-James orthogonality, smoothness, symmetry witnesses and extreme
contractions in B(l_inf^n, l1^m), with desk-scale Grothendieck lower bounds."""

__version__ = "0.1.0"

from .errors import (BudgetExhausted, DegenerateComponent, DimensionError, DimensionTooLarge,  # noqa: E402
                     EmptyInput, GeometryError, NotNormalized, ParseError, PreconditionViolated,
                     ShapeMismatch, SingularBasis, UnsupportedDimension, WitnessNotFound,
                     WrongVerdict, ZeroOperator, ZeroVector)
from .vectors import (Field, FiniteVector, FunctionalRange, Norm, SemiInnerProductSelector,  # noqa: E402
                      bj_orthogonal_vec, is_smooth_vec, norm, semi_inner_product, support_range)
from .feasibility import (ConvexCombiner, LinearProgram, LPResult, lp_maximize,  # noqa: E402
                          zero_in_convex_union)
from .product import (ProductVector, SupportDecomposition, dominating_orthogonal_witness,  # noqa: E402
                      product_bj_orthogonal, product_is_smooth, right_symmetry_precondition,
                      two_clause_orthogonal, validate_support_decomposition)
from .operators import (NormingSet, OperatorMatrix, SignedPermutation, canonical_extreme_basis,  # noqa: E402
                        gamma_embed, gamma_invert, norming_set, op_norm, operator_bj_orthogonal,
                        operator_is_smooth, signed_permutation_align)
from .extremality import ExtremalityCertificate, decompose_midpoint, is_extreme_contraction  # noqa: E402
from .symmetry import (WitnessReport, check_symmetry_pair, left_symmetry_witness,  # noqa: E402
                       right_symmetry_witness)
from .grothendieck import (GrothendieckSearchResult, VectorSystem, alternating_ascent,  # noqa: E402
                           bilinear_objective, lower_bound)
