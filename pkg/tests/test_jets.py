import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from togliatti.catalog import load_surface
from togliatti.errors import BaseLocusError, PointNotInSourceError, PreconditionError
from togliatti.exactla import rank_at
from togliatti.jets import (
    AFFINE,
    PROJECTIVE,
    Parametrization,
    derivative_label,
    expected_osculating_dim,
    generic_jet_rank,
    jet_determinant,
    jet_matrix,
    laplace_count,
    osculating_dim_generic,
    rank_profile,
)
from togliatti.polycore import MultiPoly, monomials_of_degree, parse_poly

XYZ = ("x", "y", "z")
ABC = ("a", "b", "c")

# second partials of the B3 quartics, reference column order
HESSE_COLUMNS = ["x*y*z^2", "y*z*(y^2-z^2)", "x*y^2*z", "x^2*y*z", "x*z*(x^2-z^2)", "x*y*(x^2-y^2)"]
HESSE_TABLE = {
    "x^2": ["0", "0", "0", "2*b*c", "6*a*c", "6*a*b"],
    "y^2": ["0", "6*b*c", "2*a*c", "0", "0", "-6*a*b"],
    "z^2": ["2*a*b", "-6*b*c", "0", "0", "-6*a*c", "0"],
    "xy": ["c^2", "0", "2*b*c", "2*a*c", "0", "3*a^2-3*b^2"],
    "xz": ["2*b*c", "0", "b^2", "2*a*b", "3*a^2-3*c^2", "0"],
    "yz": ["2*a*c", "3*b^2-3*c^2", "2*a*b", "a^2", "0", "0"],
}
ROW_LABEL = {"x^2": "d^2/dx^2", "y^2": "d^2/dy^2", "z^2": "d^2/dz^2",
             "xy": "d^2/dxdy", "xz": "d^2/dxdz", "yz": "d^2/dydz"}


@pytest.fixture(scope="module")
def b3():
    return load_surface("b3").parametrization


@pytest.fixture(scope="module")
def hesse(b3):
    return jet_matrix(b3, 2).matrix


def test_hesse_matches_reference_table(hesse):
    rows = {label: i for i, label in enumerate(hesse.row_labels)}
    cols = {label: j for j, label in enumerate(hesse.col_labels)}
    for r, entries in HESSE_TABLE.items():
        for c, text in zip(HESSE_COLUMNS, entries):
            assert hesse[rows[ROW_LABEL[r]], cols[str(parse_poly(c, XYZ))]] == parse_poly(text, ABC), (r, c)


def test_hesse_determinant_vanishes(b3):
    assert jet_determinant(b3, 2).is_zero()


@pytest.mark.parametrize("name", ["b3", "togliatti", "b3_companion"])
def test_projective_surfaces_have_one_laplace_equation(name):
    p = load_surface(name).parametrization
    assert osculating_dim_generic(p, 2) == 4
    assert expected_osculating_dim(p, 2) == 5
    assert laplace_count(p, 2) == 1


def test_shifrin_charts_have_one_laplace_equation():
    for chart in load_surface("shifrin").charts:
        assert chart.kind == AFFINE
        assert osculating_dim_generic(chart, 2) == 4
        assert laplace_count(chart, 2) == 1


def test_veronese_is_not_hypo_osculating():
    coords = [MultiPoly.monomial(XYZ, e) for e in monomials_of_degree(XYZ, 2)]
    p = Parametrization(PROJECTIVE, XYZ, coords, name="veronese")
    assert generic_jet_rank(p, 2) == 6
    assert laplace_count(p, 2) == 0


def test_togliatti_lift_is_not_hypo_osculating():
    p = load_surface("togliatti_lift").parametrization
    assert laplace_count(p, 2) == 0


def test_rank_drops_to_3_at_coordinate_points(hesse):
    for pt in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        assert rank_at(hesse, dict(zip(ABC, pt))) == 3


def test_rank_4_on_coordinate_lines(hesse):
    for pt in [(0, 1, 2), (1, 0, 2), (1, 2, 0)]:
        assert rank_at(hesse, dict(zip(ABC, pt))) == 4


def test_rank_5_at_seeded_points(b3):
    rng = random.Random(17)
    pts = []
    while len(pts) < 50:
        pt = tuple(rng.randint(-50, 50) for _ in XYZ)
        if all(pt) and len({abs(c) for c in pt}) == 3:
            pts.append(pt)
    assert {e.rank for e in rank_profile(b3, 2, pts)} == {5}


def test_shifrin_rank_at_seeded_points_and_origins():
    rng = random.Random(3)
    for chart in load_surface("shifrin").charts:
        pts = [(0, 0)] + [(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(50)]
        pts = [pt for pt in pts if any(chart.evaluate(pt))]
        assert all(e.rank == 5 for e in rank_profile(chart, 2, pts))


def test_base_locus_rejected(b3):
    with pytest.raises(BaseLocusError):
        rank_profile(b3, 2, [(1, 1, 0)])
    (entry,) = rank_profile(b3, 2, [(1, 1, 0)], allow_base_locus=True)
    assert entry.on_base_locus


def test_point_outside_source(b3):
    with pytest.raises(PointNotInSourceError):
        rank_profile(b3, 2, [(1, 2)])
    with pytest.raises(PointNotInSourceError):
        rank_profile(b3, 2, [(0, 0, 0)])


def test_biprojective_needs_chart():
    with pytest.raises(PreconditionError):
        jet_matrix(load_surface("shifrin").parametrization, 2)


def test_order_must_be_positive(b3):
    with pytest.raises(ValueError):
        jet_matrix(b3, 0)


def test_projective_full_jets_match_pure_jets(b3):
    # Euler's identity puts the lower-order rows in the span of the pure ones
    assert generic_jet_rank(b3, 2, full=True) == generic_jet_rank(b3, 2)


def test_full_jet_matrix_shape(b3):
    J = jet_matrix(b3, 2, full=True)
    assert J.nrows == 10
    assert J.matrix.row_labels[0] == "1"


def test_derivative_labels():
    assert derivative_label(XYZ, (0, 0, 0)) == "1"
    assert derivative_label(XYZ, (1, 0, 0)) == "d/dx"
    assert derivative_label(XYZ, (2, 0, 1)) == "d^3/dx^2dz"


def test_non_square_determinant_rejected():
    with pytest.raises(PreconditionError):
        jet_determinant(load_surface("togliatti_lift").parametrization, 2)


@st.composite
def points(draw):
    pt = draw(st.tuples(*[st.integers(-30, 30)] * 3))
    return pt if all(pt) and len({abs(c) for c in pt}) == 3 else (2, 3, 5)


@given(points())
def test_euler_full_vs_pure_rank_at_points(pt):
    p = load_surface("b3").parametrization
    pure = jet_matrix(p, 2, at=pt).rank()
    full = jet_matrix(p, 2, at=pt, full=True).rank()
    assert pure == full == 5
