"""Jet matrices of parametrized surfaces, osculating dimensions, Laplace counts."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from togliatti.errors import BaseLocusError, PointNotInSourceError, PreconditionError
from togliatti.exactla import DomainMatrix, determinant, generic_rank, rank_exact
from togliatti.polycore import MultiPoly, monomials_of_degree

PROJECTIVE = "projective"
AFFINE = "affine"
BIPROJECTIVE = "biprojective"


@dataclass(frozen=True)
class Parametrization:
    """A rational map given by coordinate polynomials.

    ``projective``: forms of one degree on the projective plane (or space)
    with homogeneous coordinates ``source_vars``. ``affine``: polynomials in
    affine chart parameters. ``biprojective``: bihomogeneous forms on a
    product of projective lines, used through its affine charts.
    ``point_vars`` name the symbolic coordinates of a moving point.
    """

    kind: str
    source_vars: tuple
    coordinates: tuple
    point_vars: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "source_vars", tuple(self.source_vars))
        object.__setattr__(self, "coordinates", tuple(self.coordinates))
        if not self.point_vars:
            object.__setattr__(self, "point_vars", _default_point_vars(self.source_vars))
        object.__setattr__(self, "point_vars", tuple(self.point_vars))
        if len(self.coordinates) < 2:
            raise ValueError("a parametrization needs at least 2 coordinates")
        if self.kind not in (PROJECTIVE, AFFINE, BIPROJECTIVE):
            raise ValueError(f"unknown parametrization kind {self.kind!r}")
        coords = []
        for f in self.coordinates:
            if f.ring != self.source_vars:
                f = f.embed(self.source_vars)
            coords.append(f)
        object.__setattr__(self, "coordinates", tuple(coords))
        if self.kind == PROJECTIVE:
            degs = {f.total_degree() for f in coords if f}
            if len(degs) != 1 or not all(f.is_homogeneous() for f in coords):
                raise ValueError("projective coordinates must be forms of one degree")

    @property
    def degree(self):
        return max(f.total_degree() for f in self.coordinates)

    @property
    def source_dim(self):
        if self.kind == PROJECTIVE:
            return len(self.source_vars) - 1
        if self.kind == BIPROJECTIVE:
            return len(self.source_vars) // 2
        return len(self.source_vars)

    @property
    def target_dim(self):
        return len(self.coordinates) - 1

    def chart(self, ones, name=None):
        """Affine chart obtained by setting the variables in ``ones`` to 1."""
        keep = tuple(v for v in self.source_vars if v not in ones)
        coords = [f.specialize({v: 1 for v in ones}).embed(keep) for f in self.coordinates]
        return Parametrization(AFFINE, keep, tuple(coords), (), name or f"{self.name}[{','.join(ones)}=1]")

    def evaluate(self, point):
        pt = [Fraction(x) for x in point]
        return [Fraction(f.evaluate(pt)) for f in self.coordinates]


def _default_point_vars(source_vars):
    if tuple(source_vars) == ("x", "y", "z"):
        return ("a", "b", "c")
    return tuple(f"{v}0" for v in source_vars)


def derivative_label(variables, alpha):
    order = sum(alpha)
    if order == 0:
        return "1"
    den = "".join(f"d{v}" + (f"^{k}" if k > 1 else "") for v, k in zip(variables, alpha) if k)
    return (f"d^{order}/" if order > 1 else "d/") + den


@dataclass
class JetMatrix:
    matrix: DomainMatrix
    order: int
    parametrization: Parametrization
    point: Optional[tuple] = None
    multi_indices: list = field(default_factory=list)

    @property
    def nrows(self):
        return self.matrix.nrows

    def rank(self):
        if self.matrix.is_constant():
            return rank_exact(self.matrix)
        return generic_rank(self.matrix, self.matrix.ring)[0]


def _multi_indices(p, m, full):
    n = len(p.source_vars)
    if p.kind == PROJECTIVE and not full:
        return monomials_of_degree(n, m)
    out = []
    for k in range(m + 1):
        out.extend(monomials_of_degree(n, k))
    return out


def jet_matrix(p, m, at=None, full=False):
    """Matrix of partial derivatives of the coordinates at a point.

    Projective sources use the pure order-``m`` partials (6 rows for m = 2 on
    the plane); affine charts, or ``full=True``, use all orders ``0..m``.
    ``at=None`` evaluates at the symbolic point ``p.point_vars``; otherwise
    ``at`` is a rational point and the matrix is constant. Columns follow
    the order of ``p.coordinates``.
    """
    if p.kind == BIPROJECTIVE:
        raise PreconditionError("use an affine chart of a biprojective parametrization")
    if m < 1:
        raise ValueError("order must be >= 1")
    alphas = _multi_indices(p, m, full)
    if at is None:
        ring = p.point_vars
        target = {v: MultiPoly.var(ring, w) for v, w in zip(p.source_vars, ring)}
    else:
        if len(at) != len(p.source_vars):
            raise PointNotInSourceError(f"point {tuple(at)} does not have {len(p.source_vars)} coordinates")
        ring = ()
        target = {v: Fraction(x) for v, x in zip(p.source_vars, at)}
    rows = []
    for alpha in alphas:
        row = []
        for f in p.coordinates:
            g = f.diff(alpha, p.source_vars)
            if at is None:
                row.append(g.substitute(target, ring))
            else:
                row.append(MultiPoly.const((), g.evaluate(target)))
        rows.append(row)
    labels = [derivative_label(p.source_vars, a) for a in alphas]
    cols = [str(f) for f in p.coordinates]
    M = DomainMatrix(tuple(tuple(r) for r in rows), ring, labels, cols, ncols=len(cols))
    return JetMatrix(M, m, p, None if at is None else tuple(Fraction(x) for x in at), alphas)


def generic_jet_rank(p, m, full=False):
    M = jet_matrix(p, m, full=full).matrix
    return generic_rank(M, M.ring)[0]


def expected_osculating_dim(p, m):
    n = p.source_dim
    return min(comb(n + m, n) - 1, p.target_dim)


def osculating_dim_generic(p, m):
    """Projective dimension of the order-``m`` osculating space at a general point."""
    return generic_jet_rank(p, m) - 1


def laplace_count(p, m):
    """Number of independent Laplace equations of order ``m``."""
    return expected_osculating_dim(p, m) - osculating_dim_generic(p, m)


def jet_determinant(p, m):
    """Symbolic determinant of a square jet matrix."""
    M = jet_matrix(p, m).matrix
    if M.nrows != M.ncols:
        raise PreconditionError(f"jet matrix is {M.nrows}x{M.ncols}, not square")
    return determinant(M)


@dataclass(frozen=True)
class ProfileEntry:
    point: tuple
    rank: int
    osculating_dim: int
    on_base_locus: bool = False

    def as_dict(self):
        return {"point": [str(x) for x in self.point], "rank": self.rank,
                "osculating_dim": self.osculating_dim, "on_base_locus": self.on_base_locus}


def rank_profile(p, m, points, allow_base_locus=False):
    """Exact jet-matrix rank at each rational point.

    Points where every coordinate vanishes are rejected with
    :class:`BaseLocusError` unless ``allow_base_locus`` is set, in which case
    the rank is reported with ``on_base_locus=True``.
    """
    out = []
    for pt in points:
        pt = tuple(Fraction(x) for x in pt)
        if len(pt) != len(p.source_vars):
            raise PointNotInSourceError(f"point {pt} does not lie in the source of {p.name or 'the map'}")
        if p.kind == PROJECTIVE and not any(pt):
            raise PointNotInSourceError("(0:...:0) is not a projective point")
        base = not any(p.evaluate(pt))
        if base and not allow_base_locus:
            raise BaseLocusError(f"{pt} lies on the base locus of {p.name or 'the map'}")
        r = rank_exact(jet_matrix(p, m, at=pt).matrix)
        out.append(ProfileEntry(pt, r, r - 1, base))
    return out
