"""Ternary Hermitian trace codes, the 2-designs carried by their
minimum-weight codewords, the GF(3) codes spanned by the design incidence
matrices, and the supporting finite-field / coding-theory machinery."""

from .finite_field import FieldSpec, FieldTable, build_field, field, point_values

__all__ = [
    "FieldSpec",
    "FieldTable",
    "build_field",
    "field",
    "point_values",
]

__version__ = "0.1.0"
