"""Exact cohomology, graded brackets and deformations of n-Hom-Leibniz algebras."""

from .algebra import (CheckReport, NHomLeibnizAlgebra, check_multiplicative, check_n_hom_leibniz,
                      d_n_minus_one, hom_leibniz_algebra, identity_residual, morphism_violation, yau_twist)
from .cochains import (AbelianExtension, Cochain, CochainSpace, CohomologyReport, build_extension,
                       ce_differential, coboundary, coboundary_matrix, cohomology, derivation_space,
                       extensions_isomorphic)
from .deformations import (TruncatedAutomorphism, TruncatedDeformation, check_equivalence, check_first_order,
                           deformation_residual, extend_one_order, extend_to_order, obstruction,
                           transport_deformation)
from .embedding import check_commuting_square, check_injectivity, delta_embed
from .errors import HomLeibnizError, InputError, ParseError, PreconditionError, UnsupportedError
from .fields import QQ, PrimeField, field_from_tag
from .graded import bracket_L, bracket_N, compose_N, insertion, pi_cochain, shuffles
from .representations import (Representation, adjoint_representation, character_representation,
                              check_representation, direct_sum, trivial_representation)

__version__ = "0.1.0"

__all__ = [
    "AbelianExtension", "CheckReport", "Cochain", "CochainSpace", "CohomologyReport", "HomLeibnizError",
    "InputError", "NHomLeibnizAlgebra", "ParseError", "PreconditionError", "PrimeField", "QQ",
    "Representation", "TruncatedAutomorphism", "TruncatedDeformation", "UnsupportedError",
    "adjoint_representation", "bracket_L", "bracket_N", "build_extension", "ce_differential",
    "character_representation", "check_commuting_square", "check_equivalence", "check_first_order",
    "check_injectivity", "check_multiplicative", "check_n_hom_leibniz", "check_representation",
    "coboundary", "coboundary_matrix", "cohomology", "compose_N", "d_n_minus_one", "deformation_residual",
    "delta_embed", "derivation_space", "direct_sum", "extend_one_order", "extend_to_order",
    "extensions_isomorphic", "field_from_tag", "hom_leibniz_algebra", "identity_residual", "insertion",
    "morphism_violation", "obstruction", "pi_cochain", "shuffles", "transport_deformation",
    "trivial_representation", "yau_twist",
]
