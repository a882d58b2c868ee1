"""Apolarity: contraction pairing, graded pieces of ideals, inverse systems.

The pairing is contraction, ``x^a o y^b = y^(b-a)`` when ``b >= a``
componentwise and 0 otherwise. It has the same kernels as the
differentiation pairing in characteristic zero, but gives the small integer
values one expects from worked examples (``x^3*y o (x+y)^4 = 4`` rather
than 24).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from togliatti.errors import ArtinianInconclusive, RingMismatchError
from togliatti.exactla import DomainMatrix, kernel_basis, rank_exact
from togliatti.polycore import MultiPoly, gradlex_key, monomial_str, monomials_of_degree


@dataclass(frozen=True)
class GradedIdeal:
    ring: tuple
    generators: tuple
    name: str = ""

    def __post_init__(self):
        ring = tuple(self.ring)
        gens = []
        for g in self.generators:
            if g.ring != ring:
                g = g.embed(ring)
            if g.is_zero():
                raise ValueError("ideal generators must be nonzero")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
            gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def degrees(self):
        return [g.total_degree() for g in self.generators]

    def __str__(self):
        body = ", ".join(str(g) for g in self.generators)
        return f"<{body}>"


def apolar_action(F, G):
    """Contraction ``F o G``; zero when ``deg F > deg G``."""
    if F.ring != G.ring:
        raise RingMismatchError(f"ring mismatch: {F.ring} vs {G.ring}")
    out = {}
    for a, ca in F.terms.items():
        for b, cb in G.terms.items():
            diff = tuple(y - x for x, y in zip(a, b))
            if min(diff, default=0) < 0:
                continue
            out[diff] = out.get(diff, 0) + ca * cb
    return MultiPoly(F.ring, out)


def coefficient_rows(polys, monomials):
    """Coefficient matrix (as Fractions) of ``polys`` against ``monomials``."""
    return [[Fraction(p.coeff(m)) for m in monomials] for p in polys]


def _echelon_insert(echelon, vec):
    """Reduce ``vec`` against a dict {pivot: row}; insert if independent."""
    vec = list(vec)
    for piv, row in echelon.items():
        c = vec[piv]
        if c:
            vec = [x - c * y for x, y in zip(vec, row)]
    for j, x in enumerate(vec):
        if x:
            row = [y / x for y in vec]
            for piv in list(echelon):
                c = echelon[piv][j]
                if c:
                    echelon[piv] = [u - c * w for u, w in zip(echelon[piv], row)]
            echelon[j] = row
            return True
    return False


@dataclass
class IdealPiece:
    """Degree-``d`` data of an ideal and its quotient.

    ``spanning`` spans I_d; ``basis`` is a monomial basis of (R/I)_d chosen
    greedily in ascending graded-lex order and then listed in descending
    order; ``normal_forms`` expresses every non-basis monomial modulo I_d
    in that basis.
    """

    ring: tuple
    degree: int
    monomials: list
    spanning: list
    ideal_dim: int
    basis: list
    normal_forms: dict = field(repr=False)

    @property
    def quotient_dim(self):
        return len(self.basis)

    def basis_labels(self):
        return [monomial_str(self.ring, e) for e in self.basis]

    def reduce(self, f, variables=None):
        """Coordinates of ``f`` (degree ``d`` in ``variables``) in ``basis``.

        ``f`` may carry extra parameter variables; they end up in the
        coordinate polynomials.
        """
        variables = self.ring if variables is None else tuple(variables)
        parts = f.split(variables)
        coords = {b: MultiPoly.zero(f.ring) for b in self.basis}
        for exps, coeff in parts.items():
            if sum(exps) != self.degree:
                raise ValueError(f"term of degree {sum(exps)} in a degree-{self.degree} reduction")
            if exps in coords:
                coords[exps] = coords[exps] + coeff
            else:
                for b, c in self.normal_forms[exps].items():
                    coords[b] = coords[b] + coeff * c
        return [coords[b] for b in self.basis]


def ideal_piece(I, d):
    """Spanning set and rank of I_d, plus a monomial basis of (R/I)_d."""
    ring = I.ring
    mons = monomials_of_degree(ring, d)
    spanning = []
    for g in I.generators:
        k = d - g.total_degree()
        if k < 0:
            continue
        for m in monomials_of_degree(ring, k):
            spanning.append(g * MultiPoly.monomial(ring, m))
    rows = coefficient_rows(spanning, mons)
    index = {m: j for j, m in enumerate(mons)}

    echelon = {}
    for row in rows:
        _echelon_insert(echelon, row)
    ideal_dim = len(echelon)

    # greedy monomial basis of the quotient, smallest monomials first
    basis = []
    work = {k: list(v) for k, v in echelon.items()}
    for m in sorted(mons, key=gradlex_key):
        unit = [Fraction(0)] * len(mons)
        unit[index[m]] = Fraction(1)
        if _echelon_insert(work, unit):
            basis.append(m)
    basis.sort(key=gradlex_key, reverse=True)

    # reduced echelon of I_d with non-basis columns first: its pivots are
    # exactly the non-basis monomials
    basis_set = set(basis)
    order = [m for m in mons if m not in basis_set] + basis
    perm_rows = [[row[index[m]] for m in order] for row in rows]
    ech = {}
    for row in perm_rows:
        _echelon_insert(ech, row)
    normal_forms = {}
    nb = len(order) - len(basis)
    for piv, row in ech.items():
        m = order[piv]
        assert piv < nb, "non-basis monomials must be the pivots"
        normal_forms[m] = {order[j]: -row[j] for j in range(nb, len(order)) if row[j]}
    return IdealPiece(ring, d, mons, spanning, ideal_dim, basis, normal_forms)


def hilbert_function(I, d_max):
    """Values HF(R/I)(d) for d = 0..d_max."""
    return [ideal_piece(I, d).quotient_dim for d in range(d_max + 1)]


def default_artinian_cap(I):
    return 3 * max(I.degrees, default=1)


def is_artinian(I, d_cap=None):
    """``(True, d)`` with d the first degree where R/I vanishes.

    Raises :class:`ArtinianInconclusive` if HF stays positive through
    ``d_cap`` (default: three times the largest generator degree).
    """
    d_cap = default_artinian_cap(I) if d_cap is None else d_cap
    if d_cap < 1:
        raise ValueError("d_cap must be >= 1")
    hf = []
    for d in range(d_cap + 1):
        hf.append(ideal_piece(I, d).quotient_dim)
        if hf[-1] == 0:
            return True, d
    raise ArtinianInconclusive(d_cap, hf)


def inverse_system_piece(I, d):
    """Basis of the degree-``d`` part of the Macaulay inverse system.

    In equal degrees contraction pairs monomials as the identity, so
    (I^-1)_d is the kernel of the coefficient matrix of I_d.
    """
    piece = ideal_piece(I, d)
    mons = piece.monomials
    if not piece.spanning:
        return [MultiPoly.monomial(I.ring, m) for m in mons]
    M = DomainMatrix.from_rows(coefficient_rows(piece.spanning, mons), ())
    out = []
    for vec in kernel_basis(M, ()):
        terms = {m: v.constant_value() for m, v in zip(mons, vec) if v}
        out.append(MultiPoly(I.ring, terms))
    return out


def pairing_matrix(I, d):
    """Contraction pairing of a spanning set of I_d against degree-d monomials."""
    piece = ideal_piece(I, d)
    mons = piece.monomials
    rows = []
    for F in piece.spanning:
        rows.append([apolar_action(F, MultiPoly.monomial(I.ring, m)).constant_value() for m in mons])
    return DomainMatrix.from_rows(rows, (), [str(F) for F in piece.spanning],
                                  [monomial_str(I.ring, m) for m in mons])


def same_span(polys_a, polys_b):
    """True iff two lists of polynomials span the same Q-vector space."""
    mons = sorted({e for p in list(polys_a) + list(polys_b) for e in p.terms}, key=gradlex_key)
    ra = rank_exact(coefficient_rows(polys_a, mons)) if polys_a else 0
    rb = rank_exact(coefficient_rows(polys_b, mons)) if polys_b else 0
    both = rank_exact(coefficient_rows(list(polys_a) + list(polys_b), mons)) if mons else 0
    return ra == rb == both


def in_span(f, polys):
    mons = sorted({e for p in list(polys) + [f] for e in p.terms}, key=gradlex_key)
    if not mons:
        return True
    base = rank_exact(coefficient_rows(polys, mons)) if polys else 0
    return rank_exact(coefficient_rows(list(polys) + [f], mons)) == base


def dual_dimension_check(I, d):
    """``(dim (I^-1)_d, dim I_d, dim R_d)``; the first two sum to the third."""
    n = len(I.ring)
    return len(inverse_system_piece(I, d)), ideal_piece(I, d).ideal_dim, comb(d + n - 1, n - 1)
