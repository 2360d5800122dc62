"""Exact polynomial algebra: fields, polynomials, Groebner bases, dimension."""

from .field import GF, QQ, Field, is_prime
from .groebner import (
    EMPTY,
    GroebnerBasis,
    buchberger,
    dimension_from_basis,
    eliminate,
    empty_over_closure,
    groebner,
    ideal_member,
    image_closure,
    is_groebner,
    krull_dimension,
    normal_form,
    s_polynomial,
)
from .parser import PolynomialSyntaxError, parse_polynomial
from .poly import DEGREVLEX, LEX, Block, DegRevLex, Ideal, Lex, MonomialOrder, Polynomial, PolyRing

__all__ = [
    "Block", "DEGREVLEX", "DegRevLex", "EMPTY", "Field", "GF", "GroebnerBasis", "Ideal",
    "LEX", "Lex", "MonomialOrder", "Polynomial", "PolyRing", "PolynomialSyntaxError", "QQ",
    "buchberger", "dimension_from_basis", "eliminate", "empty_over_closure", "groebner",
    "ideal_member", "image_closure", "is_groebner", "is_prime", "krull_dimension",
    "normal_form", "parse_polynomial", "s_polynomial",
]
