"""Fully dynamic transitive closure via lazily maintained matrix polynomials."""

from .boolmat import (
    BoolMatrix,
    bool_add,
    bool_mul,
    bool_sub,
    closure_munro,
    closure_oracle,
    col_slab,
    row_slab,
)
from .poly import PolyDeg2, PolyK, WorkCounter

__all__ = [
    "BoolMatrix",
    "PolyDeg2",
    "PolyK",
    "WorkCounter",
    "bool_add",
    "bool_mul",
    "bool_sub",
    "closure_munro",
    "closure_oracle",
    "col_slab",
    "row_slab",
]
