"""Rees algebras and special fibers of ideals of 2x2 minors of sparse 2 x n matrices."""

from .poly import (
    Block,
    DegThen,
    Lex,
    MalformedInput,
    Monomial,
    Polynomial,
    TExtended,
    TermOrder,
    Var,
    WeightThen,
    Weighting,
    parse_polynomial,
    t,
    x,
    y,
)
from .sparse import Shape, ShapeError, shape_validate, valid_shapes

__version__ = "0.1.0"

__all__ = [
    "Block", "DegThen", "Lex", "MalformedInput", "Monomial", "Polynomial", "TExtended", "TermOrder", "Var",
    "WeightThen", "Weighting", "parse_polynomial", "t", "x", "y", "Shape", "ShapeError", "shape_validate",
    "valid_shapes",
]
