"""Multiplication maps on artinian quotients and Lefschetz verdicts.

A general linear form is handled symbolically as ``l = a*x + b*y + c*z``
with indeterminate coefficients, so "maximal rank for general l" becomes
"maximal rank over Q(a, b, c)", which is decided exactly.
"""

from dataclasses import dataclass, field
from math import comb
from typing import Optional

from togliatti.apolar import GradedIdeal, ideal_piece, is_artinian
from togliatti.errors import ArtinianInconclusive, MixedDegreeError, NotArtinianError
from togliatti.exactla import DomainMatrix, generic_rank, rank_exact
from togliatti.polycore import MultiPoly, monomial_str, monomials_of_degree, poly_ring_union


def form_params(ring):
    """Names for the coefficients of the symbolic linear form."""
    if len(ring) == 3 and not {"a", "b", "c"} & set(ring):
        return ("a", "b", "c")
    return tuple(f"l{i}" for i in range(len(ring)))


def symbolic_linear_form(ring, params=None):
    params = form_params(ring) if params is None else tuple(params)
    full = poly_ring_union(ring, params)
    form = MultiPoly.zero(full)
    for v, p in zip(ring, params):
        form = form + MultiPoly.var(full, p) * MultiPoly.var(full, v)
    return form, params


@dataclass
class MultMapSpec:
    """Multiplication by ``form**power`` from degree ``source_degree``.

    ``form=None`` means the symbolic general linear form.
    """

    ideal: GradedIdeal
    source_degree: int
    power: int = 1
    form: Optional[MultiPoly] = None

    def __post_init__(self):
        if self.power < 1:
            raise ValueError("power must be >= 1")
        if self.source_degree < 0:
            raise ValueError("source degree must be >= 0")
        if self.form is not None:
            if self.form.ring != self.ideal.ring:
                self.form = self.form.embed(self.ideal.ring)
            if self.form.total_degree() != 1 or not self.form.is_homogeneous():
                raise ValueError("form must be linear")


def mult_map_matrix(spec):
    """Matrix of ``f -> f * form**power`` from (R/I)_d to (R/I)_{d+power}.

    Rows are indexed by the source monomial basis and columns by the target
    basis (the transpose of the usual column-vector convention). Entries are
    polynomials in the form's coefficients for the symbolic form, constants
    otherwise.
    """
    I = spec.ideal
    ring = I.ring
    src = ideal_piece(I, spec.source_degree)
    tgt = ideal_piece(I, spec.source_degree + spec.power)
    if spec.form is None:
        form, params = symbolic_linear_form(ring)
        full = form.ring
        out_ring = params
    else:
        form, full, out_ring = spec.form, ring, ()
    power = form ** spec.power
    rows = []
    for m in src.basis:
        prod = power * MultiPoly.monomial(full, tuple(m) + (0,) * (len(full) - len(ring)))
        coords = tgt.reduce(prod, ring)
        rows.append([c.embed(out_ring) if out_ring else MultiPoly.const((), c.constant_value())
                     for c in coords])
    return DomainMatrix(tuple(tuple(r) for r in rows), out_ring,
                        src.basis_labels(), tgt.basis_labels(), ncols=len(tgt.basis))


@dataclass(frozen=True)
class LefschetzEntry:
    d: int
    k: int
    dim_source: int
    dim_target: int
    generic_rank: int

    @property
    def max_rank(self):
        return min(self.dim_source, self.dim_target)

    @property
    def verdict(self):
        return "fails" if self.generic_rank < self.max_rank else "maximal"

    @property
    def fails(self):
        return self.generic_rank < self.max_rank

    def as_dict(self):
        return {"d": self.d, "k": self.k, "dim_source": self.dim_source,
                "dim_target": self.dim_target, "generic_rank": self.generic_rank,
                "max_rank": self.max_rank, "verdict": self.verdict}


@dataclass
class LefschetzReport:
    kind: str
    hilbert: list
    entries: list = field(default_factory=list)
    orientation: str = "rows = source basis, columns = target basis"

    @property
    def failures(self):
        return [e for e in self.entries if e.fails]

    @property
    def holds(self):
        return not self.failures

    def failure_locations(self):
        return [(e.d, e.k) for e in self.failures]

    def as_dict(self):
        return {"kind": self.kind, "hilbert": self.hilbert, "holds": self.holds,
                "failures": self.failure_locations(), "orientation": self.orientation,
                "entries": [e.as_dict() for e in self.entries]}


def _require_artinian(I):
    try:
        _, top = is_artinian(I)
    except ArtinianInconclusive as exc:
        raise NotArtinianError(f"ideal is not artinian (up to degree {exc.cap})") from exc
    return top


def _entry(I, d, k, dims):
    ds, dt = dims[d], dims[d + k] if d + k < len(dims) else 0
    if ds == 0 or dt == 0:
        rank = 0
    else:
        M = mult_map_matrix(MultMapSpec(I, d, k))
        rank, _ = generic_rank(M, M.ring)
    return LefschetzEntry(d, k, ds, dt, rank)


def slp_report(I, k_max):
    """Maximal-rank verdicts of ``* l^k`` for every d and k <= k_max."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    top = _require_artinian(I)
    dims = [ideal_piece(I, d).quotient_dim for d in range(top + 1)]
    report = LefschetzReport("SLP" if k_max > 1 else "WLP", dims)
    for k in range(1, k_max + 1):
        for d in range(top + 1):
            ds = dims[d]
            dt = dims[d + k] if d + k <= top else 0
            if ds == 0 and dt == 0:
                continue
            report.entries.append(_entry(I, d, k, dims))
    return report


def wlp_report(I):
    """Maximal-rank verdicts of multiplication by a general linear form."""
    return slp_report(I, 1)


def restriction_matrix(I, params=("p", "q")):
    """Coefficients of the generators restricted to a general hyperplane.

    The last variable is replaced by a symbolic combination of the others;
    rows are generators, columns the monomials of the restricted ring.
    """
    degs = set(I.degrees)
    if len(degs) != 1:
        raise MixedDegreeError(f"generators have mixed degrees {sorted(degs)}")
    d = degs.pop()
    ring = I.ring
    head = ring[:-1]
    params = tuple(params) if len(params) == len(head) else tuple(f"h{i}" for i in range(len(head)))
    full = poly_ring_union(ring, params)
    hyper = MultiPoly.zero(full)
    for v, p in zip(head, params):
        hyper = hyper + MultiPoly.var(full, p) * MultiPoly.var(full, v)
    mons = monomials_of_degree(head, d)
    rows = []
    for g in I.generators:
        restricted = g.embed(full).substitute({ring[-1]: hyper})
        parts = restricted.split(head)
        rows.append([parts.get(m, MultiPoly.zero(full)).embed(params) for m in mons])
    return DomainMatrix(tuple(tuple(r) for r in rows), params, [str(g) for g in I.generators],
                        [monomial_str(head, m) for m in mons], ncols=len(mons))


def restricted_dependence(I):
    """True iff the generators become dependent on a general hyperplane."""
    M = restriction_matrix(I)
    rank, _ = generic_rank(M, M.ring)
    return rank < len(I.generators)


def tea_bound(I):
    """Largest generator count for which the hyperplane/WLP equivalence is stated."""
    n = len(I.ring) - 1
    d = I.degrees[0]
    return comb(n + d - 1, n - 1)


def wlp_fails_in_degree(I, d):
    return any(e.d == d and e.fails for e in wlp_report(I).entries)


def rank_at_form(I, d, k, form):
    """Exact rank of ``* form^k`` on (R/I)_d for a concrete linear form."""
    return rank_exact(mult_map_matrix(MultMapSpec(I, d, k, form)))
