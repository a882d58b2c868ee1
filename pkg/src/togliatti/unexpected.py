"""Fat-point interpolation with a generic point, unexpected curves, and the
tangent-cone irreducibility test for quartics with a triple point."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from togliatti.errors import CoincidentPointsError, CorankError, PreconditionError
from togliatti.exactla import DomainMatrix, generic_rank, kernel_basis
from togliatti.polycore import (
    ExtElem,
    MinPoly,
    MultiPoly,
    factor_low_degree,
    monomial_str,
    monomials_of_degree,
    poly_ring_union,
)

PLANE = ("x", "y", "z")
GENERIC = ("a", "b", "c")


@dataclass(frozen=True)
class FatPoint:
    point: tuple
    multiplicity: int = 1

    def __post_init__(self):
        pt = tuple(Fraction(c) for c in self.point)
        if len(pt) != 3 or not any(pt):
            raise ValueError(f"{self.point} is not a point of the projective plane")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        object.__setattr__(self, "point", pt)

    def normalized(self):
        """Representative scaled so the first nonzero coordinate is 1."""
        lead = next(c for c in self.point if c)
        return tuple(c / lead for c in self.point)


@dataclass(frozen=True)
class FatPointScheme:
    """Fixed rational fat points plus an optional generic fat point of multiplicity j.

    The generic point has homogeneous coordinates ``params``.
    """

    fixed_points: tuple = ()
    generic: Optional[int] = None
    params: tuple = GENERIC

    def __post_init__(self):
        pts = tuple(p if isinstance(p, FatPoint) else FatPoint(*p) if isinstance(p[0], (tuple, list))
                    else FatPoint(p) for p in self.fixed_points)
        seen = set()
        for p in pts:
            key = p.normalized()
            if key in seen:
                raise CoincidentPointsError(f"point {p.point} listed twice")
            seen.add(key)
        object.__setattr__(self, "fixed_points", pts)
        if self.generic is not None and self.generic < 1:
            raise ValueError("generic multiplicity must be >= 1")

    @classmethod
    def from_points(cls, points, mult=1, generic=None):
        return cls(tuple(FatPoint(p, mult) for p in points), generic)

    def condition_count(self):
        n = sum(comb(p.multiplicity + 1, 2) for p in self.fixed_points)
        if self.generic:
            n += comb(self.generic + 1, 2)
        return n


def _chart_index(point, chart):
    mags = [abs(c) for c in point]
    if chart == "largest":
        best = max(mags)
        return mags.index(best)
    if chart == "smallest":
        best = min(m for m in mags if m)
        return mags.index(best)
    raise ValueError(f"unknown chart rule {chart!r}")


def _fixed_rows(fp, monomials, chart):
    """Vanishing conditions of order < multiplicity in an affine chart."""
    k = _chart_index(fp.point, chart)
    pt = [c / fp.point[k] for c in fp.point]
    local = [i for i in range(3) if i != k]
    rows, labels = [], []
    for order in range(fp.multiplicity):
        for alpha in monomials_of_degree(2, order):
            row = []
            for mono in monomials:
                # d^alpha of the dehomogenized monomial, evaluated at pt
                val = Fraction(1)
                for idx, a in zip(local, alpha):
                    e = mono[idx]
                    if a > e:
                        val = Fraction(0)
                        break
                    for t in range(a):
                        val *= e - t
                    val *= pt[idx] ** (e - a)
                row.append(val)
            rows.append(row)
            names = [PLANE[i] for i in local]
            labels.append(f"P{tuple(str(c) for c in fp.point)}:" + _alpha_label(names, alpha))
    return rows, labels


def _alpha_label(names, alpha):
    if not any(alpha):
        return "value"
    return "d" + "".join(f"{v}^{k}" if k > 1 else v for v, k in zip(names, alpha) if k)


def _generic_rows(j, t, monomials, params):
    """Order-(j-1) homogeneous partials at the symbolic point.

    For forms of degree t >= j-1, vanishing of all order-(j-1) partials at a
    point forces all lower-order ones to vanish (Euler), so these
    C(j+1, 2) rows impose multiplicity j. When j-1 > t only the zero form
    qualifies; the order-t partials (the coefficients) are used instead and
    the block is padded with zero rows.
    """
    ring = params
    rows, labels = [], []
    order = min(j - 1, t)
    for alpha in monomials_of_degree(3, order):
        row = []
        for mono in monomials:
            coeff = 1
            exps = []
            for a, e in zip(alpha, mono):
                if a > e:
                    coeff = 0
                    break
                for t in range(a):
                    coeff *= e - t
                exps.append(e - a)
            row.append(MultiPoly.monomial(ring, exps, coeff) if coeff else MultiPoly.zero(ring))
        rows.append(row)
        labels.append("generic:" + _alpha_label(PLANE, alpha))
    while len(rows) < comb(j + 1, 2):
        rows.append([MultiPoly.zero(ring)] * len(monomials))
        labels.append("generic:padding")
    return rows, labels


def conditions_matrix(S, t, chart="largest"):
    """Interpolation matrix of degree-``t`` plane curves through ``S``.

    Rows are vanishing conditions, columns the degree-``t`` monomials in
    descending graded-lex order; entries are polynomials in ``S.params``.
    """
    if t < 1:
        raise ValueError("degree must be >= 1")
    mons = monomials_of_degree(3, t)
    rows, labels = [], []
    for fp in S.fixed_points:
        r, l = _fixed_rows(fp, mons, chart)
        rows.extend(r)
        labels.extend(l)
    if S.generic:
        r, l = _generic_rows(S.generic, t, mons, S.params)
        rows.extend(r)
        labels.extend(l)
    return DomainMatrix(tuple(tuple(r) for r in rows), S.params, labels,
                        [monomial_str(PLANE, m) for m in mons], ncols=len(mons))


def h0_generic(S, t, chart="largest"):
    """Dimension of degree-``t`` curves through ``S`` for a general generic point."""
    M = conditions_matrix(S, t, chart)
    if M.nrows == 0:
        return comb(t + 2, 2)
    rank, _ = generic_rank(M, S.params)
    return comb(t + 2, 2) - rank


@dataclass(frozen=True)
class UnexpectedVerdict:
    j: int
    actual: int
    expected: int

    @property
    def unexpected(self):
        return self.actual > self.expected

    def as_dict(self):
        return {"j": self.j, "degree": self.j + 1, "actual_h0": self.actual,
                "expected_h0": self.expected, "unexpected": self.unexpected}


def unexpected_check(points, j):
    """Compare h0 of Z + jP in degree j+1 with the virtual count."""
    if j < 1:
        raise ValueError("j must be >= 1")
    fixed = tuple(FatPoint(p) if not isinstance(p, FatPoint) else p for p in points)
    actual = h0_generic(FatPointScheme(fixed, j), j + 1)
    base = h0_generic(FatPointScheme(fixed, None), j + 1)
    expected = max(base - comb(j + 1, 2), 0)
    return UnexpectedVerdict(j, actual, expected)


def extract_generic_curve(S, t):
    """The unique curve of degree ``t`` through ``S``, as a polynomial in x, y, z and the params.

    Canonically normalized (see :func:`togliatti.exactla.normalize_vector`).
    """
    M = conditions_matrix(S, t)
    kernel = kernel_basis(M, S.params)
    if len(kernel) != 1:
        raise CorankError(len(kernel))
    ring = poly_ring_union(PLANE, S.params)
    curve = MultiPoly.zero(ring)
    for mono, coeff in zip(monomials_of_degree(3, t), kernel[0]):
        if coeff:
            curve = curve + coeff.embed(ring) * MultiPoly.monomial(ring, tuple(mono) + (0,) * len(S.params))
    return curve


def multiplicity_at(f, point, variables=None):
    """Order of vanishing of ``f`` at ``point``.

    ``variables`` (default: the first ``len(point)`` ring variables) are the
    coordinates being differentiated; ``point`` entries are scalars or
    polynomials in ``f``'s ring, so symbolic points are allowed.
    """
    if f.is_zero():
        raise ValueError("multiplicity of the zero polynomial is undefined")
    variables = tuple(f.ring[:len(point)] if variables is None else variables)
    if len(variables) != len(point):
        raise ValueError("point and variable list differ in length")
    assignment = {}
    for v, c in zip(variables, point):
        assignment[v] = c if isinstance(c, MultiPoly) else MultiPoly.const(f.ring, Fraction(c))
    level = {(0,) * len(variables): f}
    order = 0
    while level:
        for g in level.values():
            if not g.substitute(assignment, f.ring).is_zero():
                return order
        nxt = {}
        for alpha, g in level.items():
            for i, v in enumerate(variables):
                beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                if beta not in nxt:
                    h = g.partial(v)
                    if h:
                        nxt[beta] = h
        level = nxt
        order += 1
    raise ValueError("polynomial vanishes to infinite order")


@dataclass
class TangentConeAnalysis:
    chart_index: int
    local_point: tuple
    cone: list                    # binary cubic coefficients c0*X^3 + c1*X^2*Y + ...
    lines: list = field(default_factory=list)   # (description, divides)

    @property
    def reducible(self):
        return any(div for _, div in self.lines)


def _local_expansion(f, point):
    """Affine chart at ``point``: returns (chart index, local poly in X, Y)."""
    k = _chart_index(point, "largest")
    pt = [c / point[k] for c in point]
    local_vars = ("X", "Y")
    ring = local_vars
    idx = [i for i in range(3) if i != k]
    images = {}
    for i, v in enumerate(f.ring[:3]):
        if i == k:
            images[v] = MultiPoly.const(ring, 1)
        else:
            lv = local_vars[idx.index(i)]
            images[v] = MultiPoly.var(ring, lv) + pt[i]
    return k, tuple(pt), f.substitute(images, ring)


def _line_divides(local, direction):
    """Does f vanish identically on the line through the origin in ``direction``?"""
    lam = ("lam",)
    images = {"X": MultiPoly.monomial(lam, (1,), direction[0]),
              "Y": MultiPoly.monomial(lam, (1,), direction[1])}
    return local.substitute(images, lam).is_zero()


def tangent_cone_analysis(f, P):
    P = tuple(Fraction(c) for c in P)
    k, pt, local = _local_expansion(f, P)
    cone = local.homogeneous_part(3)
    c = [Fraction(cone.coeff((3 - i, i))) for i in range(4)]
    analysis = TangentConeAnalysis(k, pt, c)
    # roots of c0*t^3 + c1*t^2 + c2*t + c3 give directions (t, 1); c0 == 0 adds (1, 0)
    upoly = [c[3], c[2], c[1], c[0]]
    while upoly and upoly[-1] == 0:
        upoly.pop()
    if len(upoly) < 4:
        analysis.lines.append(("direction (1:0)", _line_divides(local, (Fraction(1), Fraction(0)))))
    if len(upoly) > 1:
        for factor, _mult in factor_low_degree(upoly):
            if len(factor) == 2:
                root = -factor[0]
                analysis.lines.append((f"direction ({root}:1)", _line_divides(local, (root, Fraction(1)))))
            else:
                field_ = MinPoly(factor)
                s = field_.generator()
                minpoly = MultiPoly(("s",), {(i,): c for i, c in enumerate(factor) if c})
                desc = f"direction (s:1), {minpoly} = 0"
                analysis.lines.append((desc, _line_divides(local, (s, ExtElem(field_, [1])))))
    return analysis


def quartic_irreducible_with_triple_point(f, P):
    """Absolute irreducibility of a plane quartic with a triple point at ``P``.

    Such a quartic is reducible exactly when one of the (at most three)
    tangent-cone lines at ``P`` is a component, so it suffices to test each
    line, over the field generated by its slope.
    """
    if f.ring[:3] != PLANE or f.variables_used() - set(PLANE):
        raise PreconditionError("expected a polynomial in x, y, z")
    f = f.embed(PLANE)
    if not f.is_homogeneous() or f.total_degree() != 4:
        raise PreconditionError("expected a homogeneous quartic")
    P = tuple(Fraction(c) for c in P)
    if multiplicity_at(f, P) != 3:
        raise PreconditionError(f"{P} is not a triple point")
    return not tangent_cone_analysis(f, P).reducible


def _random_member(S, t, rng, box):
    """Random rational combination of a kernel basis of the conditions."""
    M = conditions_matrix(S, t)
    basis = kernel_basis(M, ())
    mons = monomials_of_degree(3, t)
    while True:
        weights = [rng.randint(-box, box) for _ in basis]
        terms = {}
        for w, vec in zip(weights, basis):
            for m, c in zip(mons, vec):
                if c:
                    terms[m] = terms.get(m, 0) + w * c.constant_value()
        f = MultiPoly(PLANE, terms)
        if f:
            return f


def reducible_quartic_control(P, rng, kind="line_cubic", box=9):
    """A random reducible quartic with a triple point at ``P``.

    ``line_cubic``: a line through P times a cubic singular at P.
    ``conic_conic``: a conic with a node at P whose branches are conjugate
    over Q(sqrt(n)), times a conic through P; its tangent cone has
    irrational factors. Regenerates until the multiplicity at P is exactly 3.
    """
    P = tuple(Fraction(c) for c in P)
    while True:
        if kind == "line_cubic":
            f = (_random_member(FatPointScheme((FatPoint(P, 1),)), 1, rng, box)
                 * _random_member(FatPointScheme((FatPoint(P, 2),)), 3, rng, box))
        elif kind == "conic_conic":
            f = _nodal_conic(P, rng, box) * _random_member(FatPointScheme((FatPoint(P, 1),)), 2, rng, box)
        else:
            raise ValueError(f"unknown control kind {kind!r}")
        if multiplicity_at(f, P) == 3:
            return f


def _nodal_conic(P, rng, box):
    """Product of the two conjugate lines through P in directions (+-sqrt(n), 1)."""
    k = _chart_index(P, "largest")
    pt = [c / P[k] for c in P]
    i, j = [m for m in range(3) if m != k]
    n = rng.choice((2, 3, 5, 6, 7))
    # local quadratic X^2 - n*Y^2 in X = v_i - pt_i*v_k, Y = v_j - pt_j*v_k
    v = [MultiPoly.var(PLANE, name) for name in PLANE]
    X = v[i] - v[k].scale(pt[i])
    Y = v[j] - v[k].scale(pt[j])
    # a random rational change of the second coordinate keeps the lines irrational
    s = rng.randint(-box, box)
    Y = Y + X.scale(Fraction(s, box + 1))
    return X * X - (Y * Y).scale(n)
