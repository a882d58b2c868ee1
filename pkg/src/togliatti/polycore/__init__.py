"""Exact scalars, algebraic extensions and sparse multivariate polynomials."""

from fractions import Fraction as Rational

from togliatti.polycore.gcd import content_in, gcd_list, poly_gcd
from togliatti.polycore.numberfield import ExtElem, MinPoly, factor_low_degree, rational_roots
from togliatti.polycore.parsing import format_poly, parse_poly
from togliatti.polycore.poly import (
    MultiPoly,
    gradlex_key,
    monomial_str,
    monomials_of_degree,
    poly_ring_union,
    variables,
)


def partial(f, var):
    """Formal partial derivative of ``f`` with respect to ``var``."""
    return f.partial(var)


def substitute(f, assignment):
    """Simultaneous substitution; see :meth:`MultiPoly.substitute`."""
    return f.substitute(assignment)


__all__ = [
    "ExtElem", "MinPoly", "MultiPoly", "Rational", "content_in", "factor_low_degree",
    "format_poly", "gcd_list", "gradlex_key", "monomial_str", "monomials_of_degree",
    "parse_poly", "partial", "poly_gcd", "poly_ring_union", "rational_roots",
    "substitute", "variables",
]
