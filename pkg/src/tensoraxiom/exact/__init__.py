from .fields import GF, QQ, Field, Mod, field_arith, field_of, is_prime, parse_field
from .free import CarrierKey, FreeVector, free_combine, free_embed
from .linalg import (
    LinearMap,
    QuotientSpace,
    Subspace,
    Vector,
    VectorSpace,
    complement,
    factor_through_quotient,
    image_basis,
    kernel_basis,
    quotient,
    rref,
)

__all__ = [
    "GF", "QQ", "Field", "Mod", "field_arith", "field_of", "is_prime", "parse_field",
    "CarrierKey", "FreeVector", "free_combine", "free_embed",
    "LinearMap", "QuotientSpace", "Subspace", "Vector", "VectorSpace",
    "complement", "factor_through_quotient", "image_basis", "kernel_basis",
    "quotient", "rref",
]
