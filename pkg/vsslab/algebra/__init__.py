"""Field arithmetic and sharing polynomials"""

from vsslab.algebra.bivariate import BiPoly, EmbedMode, check_pairwise_fit, embed_bivariate
from vsslab.algebra.field import DEFAULT_PRIME, FieldElement, FieldParams, PrimeField, is_prime
from vsslab.algebra.poly import UniPoly, interpolate, sample_sharing_poly

__all__ = [
    "BiPoly",
    "EmbedMode",
    "check_pairwise_fit",
    "embed_bivariate",
    "DEFAULT_PRIME",
    "FieldElement",
    "FieldParams",
    "PrimeField",
    "is_prime",
    "UniPoly",
    "interpolate",
    "sample_sharing_poly",
]
