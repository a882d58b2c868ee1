"""Exact linear algebra over Q and over Q(params).

Everything is fraction-free: constant matrices are cleared to integers and
reduced with Bareiss elimination; polynomial matrices use the same
algorithm with exact multivariate division by the previous pivot, so every
intermediate entry is a minor of the input and stays a polynomial.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional

from togliatti.errors import IncompleteAssignmentError, NonConstantEntryError, RingMismatchError
from togliatti.polycore import MultiPoly, gcd_list

import logging

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DomainMatrix:
    """Rectangular matrix of :class:`MultiPoly` entries sharing one ring."""

    rows: tuple
    ring: tuple = ()
    row_labels: Optional[tuple] = None
    col_labels: Optional[tuple] = None
    ncols: int = field(default=-1)

    def __post_init__(self):
        ring = tuple(self.ring)
        rows = []
        for row in self.rows:
            new = []
            for e in row:
                if isinstance(e, MultiPoly):
                    if e.ring != ring:
                        e = e.embed(ring)
                else:
                    e = MultiPoly.const(ring, Fraction(e))
                new.append(e)
            rows.append(tuple(new))
        ncols = len(rows[0]) if rows else max(self.ncols, 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "ncols", ncols)
        rl = tuple(self.row_labels) if self.row_labels is not None else tuple(f"r{i}" for i in range(len(rows)))
        cl = tuple(self.col_labels) if self.col_labels is not None else tuple(f"c{j}" for j in range(ncols))
        if len(rl) != len(rows) or len(cl) != ncols:
            raise ValueError("label count does not match matrix dimensions")
        object.__setattr__(self, "row_labels", rl)
        object.__setattr__(self, "col_labels", cl)

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_constant(self):
        return all(e.is_constant() for row in self.rows for e in row)

    def variables_used(self):
        used = set()
        for row in self.rows:
            for e in row:
                used |= e.variables_used()
        return used

    def transpose(self):
        cols = tuple(zip(*self.rows)) if self.rows else ()
        return DomainMatrix(cols, self.ring, self.col_labels, self.row_labels, ncols=self.nrows)

    T = property(transpose)

    def specialize(self, assignment):
        rows = tuple(tuple(e.specialize(assignment) for e in row) for row in self.rows)
        return DomainMatrix(rows, self.ring, self.row_labels, self.col_labels, ncols=self.ncols)

    def permuted(self, row_order=None, col_order=None):
        ro = list(range(self.nrows)) if row_order is None else list(row_order)
        co = list(range(self.ncols)) if col_order is None else list(col_order)
        rows = tuple(tuple(self.rows[i][j] for j in co) for i in ro)
        return DomainMatrix(rows, self.ring, [self.row_labels[i] for i in ro],
                            [self.col_labels[j] for j in co], ncols=len(co))

    def submatrix(self, rows, cols):
        return self.permuted(rows, cols)

    def to_rationals(self):
        if not self.is_constant():
            raise NonConstantEntryError("matrix has non-constant entries")
        return [[Fraction(e.constant_value()) for e in row] for row in self.rows]

    def apply(self, vector):
        """Matrix-vector product with a vector of polynomials or scalars."""
        if len(vector) != self.ncols:
            raise ValueError("dimension mismatch")
        vec = [v if isinstance(v, MultiPoly) else MultiPoly.const(self.ring, v) for v in vector]
        out = []
        for row in self.rows:
            acc = MultiPoly.zero(self.ring)
            for e, v in zip(row, vec):
                if e and v:
                    acc = acc + e * v
            out.append(acc)
        return out

    def pretty(self):
        cells = [[str(e) for e in row] for row in self.rows]
        width = max([len(s) for row in cells for s in row] + [len(c) for c in self.col_labels] + [1])
        lw = max([len(r) for r in self.row_labels] + [1])
        lines = [" " * lw + " | " + " ".join(c.rjust(width) for c in self.col_labels)]
        lines.append("-" * len(lines[0]))
        for lab, row in zip(self.row_labels, cells):
            lines.append(lab.rjust(lw) + " | " + " ".join(s.rjust(width) for s in row))
        return "\n".join(lines)

    @classmethod
    def from_rows(cls, rows, ring=(), row_labels=None, col_labels=None):
        return cls(tuple(tuple(r) for r in rows), tuple(ring), row_labels, col_labels)


# integer Bareiss for constant matrices


def _integer_rows(rows):
    out = []
    for row in rows:
        den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _int_bareiss_rank(a):
    a = [list(r) for r in a]
    m = len(a)
    n = len(a[0]) if a else 0
    prev = 1
    rank = 0
    used_cols = set()
    for _ in range(min(m, n)):
        piv = None
        for i in range(rank, m):
            for j in range(n):
                if j not in used_cols and a[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i, j = piv
        a[rank], a[i] = a[i], a[rank]
        p = a[rank][j]
        prow = a[rank]
        for r in range(rank + 1, m):
            row = a[r]
            f = row[j]
            for c in range(n):
                if c in used_cols:
                    continue
                row[c] = (p * row[c] - f * prow[c]) // prev
        used_cols.add(j)
        prev = p
        rank += 1
    return rank


def rank_exact(M):
    """Rank over Q of a matrix with constant entries.

    Accepts a :class:`DomainMatrix` or a nested list of rationals.
    """
    rows = M.to_rationals() if isinstance(M, DomainMatrix) else [[Fraction(x) for x in r] for r in M]
    if not rows or not rows[0]:
        return 0
    return _int_bareiss_rank(_integer_rows(rows))


def det_rational(rows):
    """Determinant of a square rational matrix (nested lists)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    dens = [reduce(lcm, (Fraction(x).denominator for x in r), 1) for r in rows]
    a = _integer_rows(rows)
    sign = 1
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], reduce(lambda x, y: x * y, dens, 1))


# symbolic Bareiss


@dataclass
class _Elimination:
    rank: int
    pivots: list          # (row, col) in pivot order
    reduced: list         # working matrix after elimination
    last_pivot: MultiPoly


def _poly_rows(M):
    return [list(r) for r in M.rows]


def _eliminate(M, jordan=False):
    """Fraction-free elimination with full pivoting.

    Pivot = nonzero entry of minimal total degree among unused rows and
    columns, ties broken row-major. With ``jordan`` the pivot column is also
    cleared above, giving a fraction-free reduced echelon form in which
    every pivot entry equals the final pivot.
    """
    a = _poly_rows(M)
    m, n = M.nrows, M.ncols
    one = MultiPoly.const(M.ring, 1)
    prev = one
    used_rows, used_cols = [], []
    free_rows = list(range(m))
    free_cols = list(range(n))
    while free_rows and free_cols:
        best = None
        for i in free_rows:
            row = a[i]
            for j in free_cols:
                e = row[j]
                if e:
                    key = (e.total_degree(), len(e.terms), i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        p = a[pi][pj]
        prow = a[pi]
        targets = [r for r in range(m) if r != pi and (jordan or r in free_rows)]
        for r in targets:
            row = a[r]
            f = row[pj]
            for c in free_cols:
                if c == pj:
                    continue
                val = p * row[c]
                if f:
                    val = val - f * prow[c]
                row[c] = val.divexact(prev) if prev != one else val
            row[pj] = MultiPoly.zero(M.ring)
            if jordan and r in used_rows:
                own = used_cols[used_rows.index(r)]
                row[own] = p
        used_rows.append(pi)
        used_cols.append(pj)
        free_rows.remove(pi)
        free_cols.remove(pj)
        prev = p
    return _Elimination(len(used_rows), list(zip(used_rows, used_cols)), a, prev)


def _check_params(M, params):
    if params is None:
        return
    extra = M.variables_used() - set(params)
    if extra:
        raise RingMismatchError(f"entries involve non-parameter variables {sorted(extra)}")


def generic_rank(M, params=None):
    """Rank of ``M`` over the fraction field Q(params).

    Returns ``(rank, (rows, cols))`` where the index sets give a nonzero
    ``rank x rank`` minor of ``M``.
    """
    _check_params(M, params)
    el = _eliminate(M)
    rows = sorted(i for i, _ in el.pivots)
    cols = sorted(j for _, j in el.pivots)
    return el.rank, (tuple(rows), tuple(cols))


def determinant(M):
    """Symbolic determinant of a square polynomial matrix."""
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    if M.nrows == 0:
        return MultiPoly.const(M.ring, 1)
    el = _eliminate(M)
    if el.rank < M.nrows:
        return MultiPoly.zero(M.ring)
    # sign of the row and column permutations realized by the pivots
    rperm = [i for i, _ in el.pivots]
    cperm = [j for _, j in el.pivots]
    sign = _perm_sign(rperm) * _perm_sign(cperm)
    return el.last_pivot if sign > 0 else -el.last_pivot


def _perm_sign(perm):
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def minor(M, rows, cols):
    return determinant(M.submatrix(rows, cols))


def rank_at(M, assignment):
    """Exact rank of ``M`` after substituting rationals for its parameters."""
    missing = M.variables_used() - set(assignment)
    if missing:
        raise IncompleteAssignmentError(f"no value for {sorted(missing)}")
    values = {v: Fraction(x) for v, x in assignment.items() if v in M.ring}
    return rank_exact(M.specialize(values))


def normalize_vector(vec):
    """Canonical representative of a vector up to a Q(params)-scalar.

    Clears denominators, divides by the polynomial gcd of the coordinates
    (which also removes the integer content), and makes the first nonzero
    coordinate have a positive leading coefficient.
    """
    nonzero = [v for v in vec if v]
    if not nonzero:
        return list(vec)
    den = reduce(lcm, (v.denominator_lcm() for v in nonzero), 1)
    vec = [v * den for v in vec]
    g = gcd_list([v for v in vec if v])
    vec = [v.divexact(g) for v in vec]
    ints = [int(Fraction(c)) for v in vec for c in v.terms.values()]
    content = reduce(gcd, ints, 0)
    first = next(v for v in vec if v)
    if first.leading_coeff() < 0:
        content = -content
    return [v.scale(Fraction(1, content)) for v in vec]


def kernel_basis(M, params=None):
    """Basis of the right kernel of ``M`` over Q(params).

    One vector per non-pivot column, in column order, each canonically
    normalized by :func:`normalize_vector`.
    """
    _check_params(M, params)
    el = _eliminate(M, jordan=True)
    pivot_of_col = {j: i for i, j in el.pivots}
    basis = []
    for f in range(M.ncols):
        if f in pivot_of_col:
            continue
        vec = [MultiPoly.zero(M.ring) for _ in range(M.ncols)]
        vec[f] = el.last_pivot if el.rank else MultiPoly.const(M.ring, 1)
        for c, r in pivot_of_col.items():
            vec[c] = -el.reduced[r][f]
        basis.append(normalize_vector(vec))
    return basis


def cross_check_generic_rank(M, params, seed=0, tries=5, box=10 ** 6):
    """Schwartz-Zippel sanity check of :func:`generic_rank`.

    Evaluates at ``tries`` seeded random integer points. Returns
    ``(generic, sampled_ranks)``; raises ``AssertionError`` if a sample
    exceeds the generic rank, and widens the box once if no sample
    attains it.
    """
    params = tuple(params)
    rank, _ = generic_rank(M, params)
    rng = random.Random(seed)
    samples = []
    for attempt in range(2):
        samples = []
        for _ in range(tries):
            pt = {p: rng.randint(-box, box) for p in params}
            samples.append(rank_at(M, pt))
        if max(samples, default=rank) > rank:
            raise AssertionError(f"sampled rank {max(samples)} exceeds generic rank {rank}")
        if rank in samples or not params:
            break
        log.warning("no sample attained generic rank %d; retrying with a wider box", rank)
        box *= 1000
    return rank, samples
