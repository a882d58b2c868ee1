import itertools
import logging
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import int_matrices
from togliatti.catalog import B3_POINTS, load_ideal, load_surface
from togliatti.errors import IncompleteAssignmentError, NonConstantEntryError
from togliatti.exactla import (
    DomainMatrix,
    cross_check_generic_rank,
    det_rational,
    determinant,
    generic_rank,
    kernel_basis,
    minor,
    normalize_vector,
    rank_at,
    rank_exact,
)
from togliatti.jets import jet_matrix
from togliatti.lefschetz import MultMapSpec, mult_map_matrix
from togliatti.polycore import MultiPoly, monomials_of_degree, parse_poly

ABC = ("a", "b", "c")


def M(rows, ring=ABC):
    return DomainMatrix.from_rows([[parse_poly(str(e), ring) if isinstance(e, str) else e for e in r]
                                   for r in rows], ring)


def naive_rank(rows):
    """Largest k with a nonzero k x k minor, by Leibniz expansion."""
    n, m = len(rows), len(rows[0])
    for k in range(min(n, m), 0, -1):
        for rs in itertools.combinations(range(n), k):
            for cs in itertools.combinations(range(m), k):
                if _leibniz([[rows[i][j] for j in cs] for i in rs]):
                    return k
    return 0


def _leibniz(a):
    total = 0
    for perm in itertools.permutations(range(len(a))):
        sign = 1
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term *= a[i][j]
        total += term
    return total


# rank over Q


def test_identity_rank():
    assert rank_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3


def test_zero_rank():
    assert rank_exact([[0, 0], [0, 0]]) == 0


def test_b3_points_impose_independent_conditions_on_quartics():
    rows = [[Fraction(p[0]) ** e[0] * Fraction(p[1]) ** e[1] * Fraction(p[2]) ** e[2]
             for e in monomials_of_degree(3, 4)] for p in B3_POINTS]
    assert rank_exact(rows) == 9


def test_rank_exact_rejects_symbolic_entries():
    with pytest.raises(NonConstantEntryError):
        rank_exact(M([["a", "1"]]))


@given(int_matrices())
def test_rank_matches_minor_expansion(rows):
    assert rank_exact(rows) == naive_rank(rows)


@given(int_matrices(max_rows=4, max_cols=4).filter(lambda r: len(r) == len(r[0])))
def test_det_matches_leibniz(rows):
    assert det_rational(rows) == _leibniz(rows)


def test_rationals_handled():
    assert rank_exact([[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]) == 1


# generic rank


def test_diagonal_generic_rank():
    rank, (rows, cols) = generic_rank(M([["a", 0, 0], [0, "b", 0], [0, 0, "c"]]))
    assert rank == 3
    assert sorted(rows) == [0, 1, 2] and sorted(cols) == [0, 1, 2]


def test_b3_hesse_generic_rank():
    J = jet_matrix(load_surface("b3").parametrization, 2).matrix
    assert generic_rank(J, ABC)[0] == 5


def test_l_squared_generic_rank():
    L = mult_map_matrix(MultMapSpec(load_ideal("J"), 2, 2))
    assert generic_rank(L, ABC)[0] == 5


def test_rank_drops_on_a_curve():
    A = M([["a", "b"], ["b", "a"]])
    assert generic_rank(A, ABC)[0] == 2
    assert rank_at(A, {"a": 3, "b": 3}) == 1
    assert rank_at(A, {"a": 3, "b": -3}) == 1


def test_witness_minor_is_nonzero():
    J = jet_matrix(load_surface("b3").parametrization, 2).matrix
    rank, (rows, cols) = generic_rank(J, ABC)
    assert len(rows) == len(cols) == rank
    assert not minor(J, rows, cols).is_zero()


def test_circulant_determinant():
    C = M([["a", "b", "c"], ["c", "a", "b"], ["b", "c", "a"]])
    assert determinant(C) == parse_poly("a^3 + b^3 + c^3 - 3*a*b*c", ABC)


def test_b3_hesse_determinant_vanishes():
    J = jet_matrix(load_surface("b3").parametrization, 2).matrix
    assert determinant(J).is_zero()


@st.composite
def symbolic_matrices(draw):
    r, c = draw(st.integers(1, 4)), draw(st.integers(1, 4))
    lin = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).map(
        lambda t: parse_poly(f"{t[0]}*a + {t[1]}*b + {t[2]}*c", ABC))
    rows = draw(st.lists(st.lists(lin, min_size=c, max_size=c), min_size=r, max_size=r))
    return DomainMatrix.from_rows(rows, ABC)


@given(symbolic_matrices(), st.integers(0, 2 ** 32))
def test_schwartz_zippel_cross_check(A, seed):
    rank, samples = cross_check_generic_rank(A, ABC, seed=seed)
    assert all(s <= rank for s in samples)
    assert rank in samples


@given(symbolic_matrices())
def test_witness_minor_property(A):
    rank, (rows, cols) = generic_rank(A, ABC)
    if rank:
        assert not minor(A, rows, cols).is_zero()


def test_cross_check_widens_box(caplog):
    # entries vanish on every integer point of a small box except far away
    A = M([["a*(a-1)*(a+1)*(a-2)*(a+2)"]])
    with caplog.at_level(logging.WARNING):
        rank, samples = cross_check_generic_rank(A, ("a",), seed=1, tries=3, box=2)
    assert rank == 1
    assert 1 in samples


def test_rank_at_requires_full_assignment():
    with pytest.raises(IncompleteAssignmentError):
        rank_at(M([["a", "b"]]), {"a": 1})


@given(symbolic_matrices(), st.lists(st.integers(-20, 20), min_size=3, max_size=3))
def test_semicontinuity(A, pt):
    assert rank_at(A, dict(zip(ABC, pt))) <= generic_rank(A, ABC)[0]


# kernels


def test_kernel_of_row():
    (v,) = kernel_basis(M([["a", "b"]]), ABC)
    assert v == [parse_poly("b", ABC), parse_poly("-a", ABC)]


def test_kernel_of_identity_is_empty():
    assert kernel_basis(M([[1, 0], [0, 1]]), ABC) == []


def _apply(A, v):
    out = []
    for row in A.rows:
        acc = MultiPoly.zero(A.ring)
        for e, x in zip(row, v):
            acc = acc + e * x
        out.append(acc)
    return out


@given(symbolic_matrices())
def test_kernel_vectors_annihilate(A):
    kernel = kernel_basis(A, ABC)
    rank, _ = generic_rank(A, ABC)
    assert len(kernel) == A.ncols - rank
    for v in kernel:
        assert all(x.is_zero() for x in _apply(A, v))


def test_normalization_is_canonical():
    v = normalize_vector([parse_poly("-2*a", ABC), parse_poly("4*b", ABC)])
    w = normalize_vector([parse_poly("1/3*a", ABC), parse_poly("-2/3*b", ABC)])
    assert v == w == [parse_poly("a", ABC), parse_poly("-2*b", ABC)]


def test_normalization_divides_polynomial_content():
    v = normalize_vector([parse_poly("a*b", ABC), parse_poly("a*c", ABC)])
    assert v == [parse_poly("b", ABC), parse_poly("c", ABC)]


def test_constant_kernel_random_matrices():
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
        A = DomainMatrix.from_rows(rows, ())
        for v in kernel_basis(A, ()):
            assert all(sum(r * x.constant_value() for r, x in zip(row, v)) == 0 for row in rows)
