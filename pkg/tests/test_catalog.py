from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from togliatti.apolar import inverse_system_piece, same_span
from togliatti.catalog import (
    B3_M,
    B3_N,
    COMPANION_CLASS,
    MINUS_K,
    TOGLIATTI_M,
    E,
    H,
    PicardClass,
    ideal_names,
    image_degree,
    intersect,
    line_class,
    load_ideal,
    load_surface,
    point_set,
    restricted_image,
    surface_names,
    target_ring,
    verify_ideal_membership,
)
from togliatti.errors import RingMismatchError, UnknownNameError
from togliatti.jets import PROJECTIVE, Parametrization
from togliatti.polycore import parse_poly

# lattice


def test_basic_pairings():
    assert intersect(H(), H()) == 1
    assert intersect(E(1), E(1)) == -1
    assert intersect(H(), E(4)) == 0


def test_b3_class_numbers():
    assert image_degree(B3_M) == 7
    assert intersect(MINUS_K, B3_M) == 3
    for N in B3_N.values():
        assert intersect(B3_M, N) == 0


def test_b3_contracted_lines():
    # each N_i is a line through four of the nine points
    for N in B3_N.values():
        assert intersect(N, N) == -3
        assert intersect(MINUS_K, N) == -1


def test_anticanonical_decomposition():
    assert MINUS_K == B3_N[1] + B3_N[2] + B3_N[3] + E(1) + E(2) + E(3)


def test_plain_cubics_and_togliatti():
    assert image_degree(COMPANION_CLASS) == 9
    assert image_degree(TOGLIATTI_M) == 6
    assert image_degree(MINUS_K) == 0


def test_class_arithmetic():
    assert 3 * H() - E(1) == PicardClass(3, (1,))
    assert -(H()) == PicardClass(-1)
    assert str(line_class([1, 2])) == "(1; 1, 1, 0, 0, 0, 0, 0, 0, 0)"
    with pytest.raises(ValueError):
        PicardClass(1, (0,) * 10)


classes = st.builds(PicardClass, st.integers(-5, 5), st.tuples(*[st.integers(-3, 3)] * 9))


@given(classes, classes, classes)
def test_pairing_is_symmetric_bilinear(a, b, c):
    assert intersect(a, b) == intersect(b, a)
    assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)
    assert intersect(2 * a, b) == 2 * intersect(a, b)


# surfaces


def test_surface_names():
    assert set(surface_names()) == {"shifrin", "togliatti", "togliatti_lift", "b3", "b3_companion"}


@pytest.mark.parametrize("name, count", [("b3", 4), ("togliatti", 9), ("shifrin", 6)])
def test_generator_counts(name, count):
    assert len(load_surface(name).ideal_generators) == count


@pytest.mark.parametrize("name", ["b3", "togliatti", "shifrin"])
def test_generators_vanish(name):
    assert all(verify_ideal_membership(load_surface(name)))


def test_b3_generator_degrees():
    degrees = sorted(g.total_degree() for g in load_surface("b3").ideal_generators)
    assert degrees == [2, 2, 2, 3]


@pytest.mark.parametrize("name, text", [
    ("shifrin", "u3^2 - u1*u4 + u0^2"),
    ("b3", "u1^2 - u2^2"),
    ("togliatti", "u0*u1 - u2*u3"),
])
def test_perturbed_generators_fail(name, text):
    g = parse_poly(text, target_ring(6))
    assert verify_ideal_membership(load_surface(name), [g]) == [False]


def test_membership_ring_mismatch():
    with pytest.raises(RingMismatchError):
        verify_ideal_membership(load_surface("b3"), [parse_poly("u0", target_ring(7))])


def test_togliatti_lift_projects_to_togliatti():
    lift = load_surface("togliatti_lift").parametrization.coordinates
    assert lift[:6] == load_surface("togliatti").parametrization.coordinates
    assert lift[6] == parse_poly("x*y*z", ("x", "y", "z"))


def test_b3_coordinates_span_degree_4_inverse_system():
    coords = load_surface("b3").parametrization.coordinates
    assert same_span(coords, inverse_system_piece(load_ideal("J"), 4))


def test_companion_coordinates_are_I_prime():
    coords = load_surface("b3_companion").parametrization.coordinates
    assert list(coords) == list(load_ideal("I_prime").generators)


def test_shifrin_charts():
    entry = load_surface("shifrin")
    assert len(entry.charts) == 4
    assert entry.default_jet_source() is entry.charts[0]
    assert entry.charts[0].source_vars == ("s", "u")


@pytest.mark.parametrize("name", surface_names())
def test_as_dict_is_plain(name):
    d = load_surface(name).as_dict()
    assert d["name"] == name
    assert all(isinstance(c, str) for c in d["coordinates"])


def test_togliatti_contracts_coordinate_lines():
    p = load_surface("togliatti").parametrization
    # on x = 0 only y^2*z and z^2*y survive, so the line is not contracted
    assert restricted_image(p, "x") is None


def test_restricted_image_of_contracted_line():
    xyz = ("x", "y", "z")
    p = Parametrization(PROJECTIVE, xyz, [parse_poly(t, xyz) for t in ["x*y", "x*z", "y*z"]])
    assert restricted_image(p, "x") == (Fraction(0), Fraction(0), Fraction(1))
    assert restricted_image(p, "y") == (Fraction(0), Fraction(1), Fraction(0))


# ideals and point sets


def test_ideal_names():
    assert set(ideal_names()) == {"J", "I_prime", "I_T", "squares", "I_Z"}


def test_J_has_nine_quartic_powers():
    J = load_ideal("J")
    assert len(J.generators) == 9
    assert list(J.degrees) == [4] * 9


def test_point_sets():
    assert len(point_set("b3")) == 9
    assert point_set("togliatti")[0] == (1, 0, 0)


@pytest.mark.parametrize("loader", [load_ideal, load_surface, point_set])
def test_unknown_names(loader):
    with pytest.raises(UnknownNameError, match="known"):
        loader("nope")
