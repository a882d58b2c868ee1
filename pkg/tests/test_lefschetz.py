import random

import pytest

from togliatti.apolar import GradedIdeal
from togliatti.catalog import load_ideal
from togliatti.errors import MixedDegreeError, NotArtinianError
from togliatti.exactla import generic_rank, rank_at
from togliatti.lefschetz import (
    MultMapSpec,
    mult_map_matrix,
    rank_at_form,
    restricted_dependence,
    slp_report,
    symbolic_linear_form,
    tea_bound,
    wlp_fails_in_degree,
    wlp_report,
)
from togliatti.polycore import parse_poly

XYZ = ("x", "y", "z")
ABC = ("a", "b", "c")

# multiplication by l^2 on (R/J)_2; rows x^2, y^2, z^2, xy, xz, yz
L2_COLUMNS = ["x*y^3", "x*z^3", "y*z^3", "x*y*z^2", "x*y^2*z", "x^2*y*z"]
L2_TABLE = {
    "x^2": ["-2*a*b", "-2*a*c", "0", "0", "0", "2*b*c"],
    "y^2": ["2*a*b", "0", "-2*b*c", "0", "2*a*c", "0"],
    "z^2": ["0", "2*a*c", "2*b*c", "2*a*b", "0", "0"],
    "x*y": ["b^2-a^2", "0", "0", "c^2", "2*b*c", "2*a*c"],
    "x*z": ["0", "c^2-a^2", "0", "2*b*c", "b^2", "2*a*b"],
    "y*z": ["0", "0", "c^2-b^2", "2*a*c", "2*a*b", "a^2"],
}


def ideal(*gens):
    return GradedIdeal(XYZ, tuple(parse_poly(g, XYZ) for g in gens))


@pytest.fixture(scope="module")
def l2():
    return mult_map_matrix(MultMapSpec(load_ideal("J"), 2, 2))


def test_l2_matches_reference_table(l2):
    rows = {label: i for i, label in enumerate(l2.row_labels)}
    cols = {label: j for j, label in enumerate(l2.col_labels)}
    assert set(rows) == set(L2_TABLE) and set(cols) == set(L2_COLUMNS)
    for r, entries in L2_TABLE.items():
        for c, text in zip(L2_COLUMNS, entries):
            assert l2[rows[r], cols[c]] == parse_poly(text, ABC), (r, c)


def test_l2_generic_and_special_ranks(l2):
    assert generic_rank(l2, ABC)[0] == 5
    for pt in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
        assert rank_at(l2, dict(zip(ABC, pt))) == 3


def test_l2_rank_on_seeded_points(l2):
    rng = random.Random(2024)
    seen = set()
    while len(seen) < 50:
        pt = tuple(rng.randint(-500, 500) for _ in ABC)
        if all(pt) and pt not in seen:
            seen.add(pt)
            assert rank_at(l2, dict(zip(ABC, pt))) == 5


def test_l2_semicontinuity_anywhere(l2):
    rng = random.Random(11)
    for _ in range(20):
        pt = {v: rng.randint(-3, 3) for v in ABC}
        assert 3 <= rank_at(l2, pt) <= 5 or not any(pt.values())


def test_l2_stratification_matches_hesse_on_lines(l2):
    # rank <= 4 on abc = 0, like the Hesse matrix of the B3 surface
    for pt in [(0, 1, 2), (1, 0, 2), (1, 2, 0)]:
        assert rank_at(l2, dict(zip(ABC, pt))) <= 4


def test_concrete_form_matrix():
    I = ideal("x^3", "y^3", "z^3")
    M = mult_map_matrix(MultMapSpec(I, 0, 1, parse_poly("x", XYZ)))
    assert M.shape == (1, 3)
    assert M.col_labels[0] == "x"
    assert [M[0, j].constant_value() for j in range(3)] == [1, 0, 0]


def test_rank_at_form():
    J = load_ideal("J")
    assert rank_at_form(J, 2, 2, parse_poly("x", XYZ)) == 3


def test_mult_map_rejects_nonlinear_form():
    with pytest.raises(ValueError):
        MultMapSpec(load_ideal("J"), 2, 1, parse_poly("x^2", XYZ))


def test_symbolic_form_params():
    form, params = symbolic_linear_form(XYZ)
    assert params == ABC
    assert form == parse_poly("a*x + b*y + c*z", XYZ + ABC)
    _, other = symbolic_linear_form(("a", "b"))
    assert other == ("l0", "l1")


# reports


def test_wlp_togliatti_ideal_fails_in_degree_2():
    report = wlp_report(load_ideal("I_T"))
    assert report.hilbert == [1, 3, 6, 6, 3, 0]
    (entry,) = report.failures
    assert (entry.d, entry.k, entry.dim_source, entry.dim_target, entry.generic_rank) == (2, 1, 6, 6, 5)


def test_wlp_squares_holds():
    assert wlp_report(load_ideal("squares")).holds


def test_wlp_J_degree_3_entry():
    entries = {(e.d, e.k): e for e in wlp_report(load_ideal("J")).entries}
    e = entries[(3, 1)]
    assert (e.dim_source, e.dim_target, e.generic_rank, e.verdict) == (10, 6, 6, "maximal")


def test_slp_J_fails_exactly_at_2_2():
    report = slp_report(load_ideal("J"), 2)
    assert report.failure_locations() == [(2, 2)]
    (e,) = report.failures
    assert (e.dim_source, e.dim_target, e.generic_rank) == (6, 6, 5)


def test_slp_squares_no_failures():
    assert slp_report(load_ideal("squares"), 2).holds


@pytest.mark.parametrize("name", ["J", "I_T", "squares", "I_prime"])
def test_slp_k1_coincides_with_wlp(name):
    I = load_ideal(name)
    slp = [e for e in slp_report(I, 2).entries if e.k == 1]
    assert slp == wlp_report(I).entries


def test_not_artinian_rejected():
    with pytest.raises(NotArtinianError):
        wlp_report(load_ideal("I_Z"))


def test_report_dict_roundtrip():
    d = slp_report(load_ideal("J"), 2).as_dict()
    assert d["failures"] == [(2, 2)]
    assert d["orientation"].startswith("rows = source")


# hyperplane restriction


@pytest.mark.parametrize("name, dependent", [("I_T", True), ("J", True), ("squares", False)])
def test_restricted_dependence(name, dependent):
    assert restricted_dependence(load_ideal(name)) is dependent


def test_restricted_dependence_mixed_degrees():
    with pytest.raises(MixedDegreeError):
        restricted_dependence(ideal("x^2", "y^3"))


def test_tea_bound():
    assert tea_bound(load_ideal("I_T")) == 4
    assert tea_bound(load_ideal("squares")) == 3


@pytest.mark.parametrize("name", ["I_T", "squares"])
def test_tea_coherence(name):
    I = load_ideal(name)
    d = I.degrees[0]
    assert len(I.generators) <= tea_bound(I)
    assert restricted_dependence(I) == wlp_fails_in_degree(I, d - 1)


def test_tea_coherence_random_monomial_cubics():
    rng = random.Random(5)
    cubes = ["x^3", "y^3", "z^3"]
    others = ["x^2*y", "x^2*z", "x*y^2", "y^2*z", "x*z^2", "y*z^2", "x*y*z"]
    for _ in range(6):
        I = ideal(*cubes, rng.choice(others))
        assert restricted_dependence(I) == wlp_fails_in_degree(I, 2)
