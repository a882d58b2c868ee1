"""Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.

Polynomials here are small (a handful of variables, modest degree), so the
textbook primitive PRS is adequate; no modular methods.
"""

from functools import reduce

from togliatti.polycore.poly import MultiPoly


def _as_univariate(f, var):
    """``{k: coeff}`` with ``f = sum coeff * var^k``; coefficients free of ``var``."""
    i = f.ring.index(var)
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
    return {k: MultiPoly._raw(f.ring, t) for k, t in out.items()}


def _from_univariate(coeffs, var, ring):
    x = MultiPoly.var(ring, var)
    acc = MultiPoly.zero(ring)
    for k, c in coeffs.items():
        acc = acc + c * x ** k
    return acc


def _normalize(g):
    if g.is_zero():
        return g
    return g.primitive()


def content_in(f, var):
    """Gcd of the coefficients of ``f`` viewed as a polynomial in ``var``."""
    coeffs = list(_as_univariate(f, var).values())
    return reduce(poly_gcd, coeffs, MultiPoly.zero(f.ring))


def _prem(f, g, var):
    """Pseudo-remainder of ``f`` by ``g`` with respect to ``var``."""
    x = MultiPoly.var(f.ring, var)
    dg = g.degree_in(var)
    lc = _as_univariate(g, var)[dg]
    r = f
    while not r.is_zero() and r.degree_in(var) >= dg:
        dr = r.degree_in(var)
        lr = _as_univariate(r, var)[dr]
        r = r * lc - g * lr * x ** (dr - dg)
    return r


def poly_gcd(f, g):
    """Greatest common divisor, integer-primitive with positive leading coefficient.

    ``gcd(0, 0) = 0``; the gcd of nonzero constants is 1.
    """
    if f.ring != g.ring:
        raise ValueError("gcd of polynomials in different rings")
    if f.is_zero():
        return _normalize(g)
    if g.is_zero():
        return _normalize(f)
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.ring, 1)
    used_f, used_g = f.variables_used(), g.variables_used()
    var = next(v for v in f.ring if v in used_f | used_g)
    if var not in used_f:
        return poly_gcd(f, content_in(g, var))
    if var not in used_g:
        return poly_gcd(content_in(f, var), g)
    cf, cg = content_in(f, var), content_in(g, var)
    c = poly_gcd(cf, cg)
    a, b = f.divexact(cf), g.divexact(cg)
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while not b.is_zero() and b.degree_in(var) > 0:
        r = _prem(a, b, var)
        if r.is_zero():
            break
        a, b = b, r.divexact(content_in(r, var))
    if not b.is_zero() and b.degree_in(var) == 0:
        # the primitive parts are coprime in var
        return _normalize(c)
    b = b.divexact(content_in(b, var))
    return _normalize(c * b)


def gcd_list(polys):
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty list")
    return reduce(poly_gcd, polys[1:], _normalize(polys[0]))
