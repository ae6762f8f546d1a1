"""Exact rational and real-number-field arithmetic with linear algebra."""

from .lattice import (
    complement_data,
    integer_kernel_basis,
    is_saturated,
    lattice_index,
    saturate,
    smith_normal_form,
)
from .linalg import (
    KMatrix,
    QMatrix,
    kernel_basis,
    primitive_integer_vector,
    rank,
    restrict_scalars,
    solve,
)
from .numberfield import (
    AlgebraicReal,
    Rational,
    RealNumberField,
    count_real_roots,
    format_rational,
    nf_sign,
    parse_rational,
)

__all__ = [
    "AlgebraicReal",
    "KMatrix",
    "QMatrix",
    "Rational",
    "RealNumberField",
    "complement_data",
    "count_real_roots",
    "format_rational",
    "integer_kernel_basis",
    "is_saturated",
    "kernel_basis",
    "lattice_index",
    "nf_sign",
    "parse_rational",
    "primitive_integer_vector",
    "rank",
    "restrict_scalars",
    "saturate",
    "smith_normal_form",
]
