import random
from fractions import Fraction

import pytest

from maclane_surfaces.arith import padic_val
from maclane_surfaces.poly import MultiPoly, RatFunc, UniPoly, parse_ratfunc, parse_univariate
from maclane_surfaces.quotchart import (
    BreakResult,
    ChartCoords,
    EisensteinError,
    WildQuotData,
    check_eisenstein,
    chart_generators,
    closed_form_val,
    compute_break,
    model_valuation,
    presentation_json,
    presentation_matrix,
    triple_point_data,
    verify_relations,
    z_function,
)
from maclane_surfaces.valuation import evaluate_rat, ramification_index

GRID = [
    WildQuotData(2, parse_univariate("x^2 + 2"), 3),
    triple_point_data(),
    WildQuotData(5, parse_univariate("x^5 + 5*x + 5"), 2),
]


def test_check_eisenstein_accepts_example():
    check_eisenstein(parse_univariate("x^3 - 3*x^2 + 3"), 3)


def test_check_eisenstein_reports_each_failure():
    with pytest.raises(EisensteinError) as e1:
        check_eisenstein(parse_univariate("x^2 + 1"), 3)
    assert any("constant coefficient" in p for p in e1.value.problems)
    with pytest.raises(EisensteinError) as e2:
        check_eisenstein(parse_univariate("x^2 + 4"), 2)
    assert any("valuation 2" in p for p in e2.value.problems)


def test_compute_break_values():
    assert compute_break(parse_univariate("x^3 - 3*x^2 + 3"), 3) == BreakResult(Fraction(2), True)
    assert compute_break(parse_univariate("x^2 + 2"), 2) == BreakResult(Fraction(3), True)
    r = compute_break(parse_univariate("x^3 + 3"), 3)
    assert r == BreakResult(Fraction(5, 2), False)
    with pytest.raises(ValueError):
        r.as_break()


def test_compute_break_degree_five_is_not_integral():
    r = compute_break(parse_univariate("x^5 + 5*x + 5"), 5)
    assert r.value == Fraction(5, 4)
    assert not r.integral


def test_wildquot_data_validation():
    with pytest.raises(ValueError):
        WildQuotData(3, parse_univariate("x^2 + 3"), 2)  # degree != p
    with pytest.raises(ValueError):
        WildQuotData(3, parse_univariate("x^3 - 3*x^2 + 3"), 1)  # m < 2
    with pytest.raises(EisensteinError):
        WildQuotData(3, parse_univariate("x^3 + 1"), 2)


def test_chart_generators_example():
    data = triple_point_data()
    gens = chart_generators(data)
    phi = data.phi
    assert gens[0] == RatFunc(UniPoly.const(9), phi)
    assert gens[1] == RatFunc(UniPoly.const(9) * UniPoly.x(), phi)
    assert gens[2] == RatFunc(UniPoly.const(9) * UniPoly.x() ** 2, phi)
    x = RatFunc(UniPoly.x())
    assert gens[0] * x == gens[1]
    assert gens[1] * x == gens[2]


def test_chart_generators_formula_instantiation():
    data = WildQuotData(2, parse_univariate("x^2 + 2"), 3)
    gens = chart_generators(data)
    assert gens[0] == parse_ratfunc("8/(x^2 + 2)")
    assert gens[1] == parse_ratfunc("(8*x)/(x^2 + 2)")


def test_presentation_matrix_shape_and_z():
    pres = presentation_matrix(triple_point_data())
    names = pres.variables
    assert names == ("x0", "x1", "x2")
    xs = [MultiPoly.var(n, names) for n in names]
    assert pres.matrix[0] == (xs[0], xs[1])
    assert pres.matrix[1] == (xs[1], xs[2])
    assert pres.matrix[2][0] == xs[2]
    z = MultiPoly.const(9, names) - 3 * xs[0] + 3 * xs[2]
    assert pres.z_entry() == z
    assert len(pres.minors) == 3
    expected_minors = {
        xs[0] * xs[2] - xs[1] * xs[1],
        xs[0] * z - xs[1] * xs[2],
        xs[1] * z - xs[2] * xs[2],
    }
    assert set(pres.minors) == expected_minors


def test_presentation_p2_single_minor():
    pres = presentation_matrix(WildQuotData(2, parse_univariate("x^2 + 2"), 3))
    assert len(pres.minors) == 1
    names = pres.variables
    x0, x1 = (MultiPoly.var(n, names) for n in names)
    z = MultiPoly.const(8, names) - 2 * x0
    assert pres.minors[0] == x0 * z - x1 * x1


@pytest.mark.parametrize("data", GRID, ids=lambda d: f"p{d.p}")
def test_verify_relations_grid(data):
    report = verify_relations(data)
    assert report.ok
    assert all(r.is_zero for _, r in report.residuals)
    assert len(report.residuals) == data.p * (data.p - 1) // 2


def test_verify_relations_detects_negated_entry():
    data = triple_point_data()
    pres = presentation_matrix(data)
    names = pres.variables
    rows = list(pres.matrix[:-1]) + [(pres.matrix[-1][0], -pres.matrix[-1][1])]
    minors = []
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            minors.append(rows[i][0] * rows[j][1] - rows[j][0] * rows[i][1])
    report = verify_relations(data, minors)
    assert not report.ok
    assert len(report.failures()) == 2  # the two minors involving the last row


def test_z_function_is_monomial_quotient():
    for data in GRID:
        z = z_function(data)
        expected = RatFunc(
            UniPoly.const(data.pi**data.m) * UniPoly.x() ** data.p, data.phi
        )
        assert z == expected


def test_model_valuation_example():
    data = triple_point_data()
    v = model_valuation(data)
    assert evaluate_rat(v, RatFunc(data.phi)) == 2
    assert evaluate_rat(v, RatFunc(UniPoly.x())) == Fraction(1, 3)
    assert ramification_index(v) == 3
    gens = chart_generators(data)
    for j, g in enumerate(gens):
        assert evaluate_rat(v, g) == Fraction(j, 3)
    assert evaluate_rat(v, RatFunc.of(3)) == 1


def test_closed_form_examples():
    data = triple_point_data()
    x0 = ChartCoords.make(0, [[9, 0, 0]], 1)
    assert closed_form_val(data, x0) == 0
    const3 = ChartCoords.make(3, [], 0)
    assert closed_form_val(data, const3) == 1
    x2 = ChartCoords.make(0, [[0, 0, 9]], 1)
    assert closed_form_val(data, x2) == Fraction(2, 3)


def test_closed_form_rejects_bad_r():
    with pytest.raises(ValueError):
        ChartCoords.make(0, [[1, 0, 0]], 0)


def rand_coords(rng, data, r_max=3):
    r = rng.randint(1, r_max)
    rows = []
    for _ in range(r):
        rows.append(
            [
                Fraction(rng.randint(-(10**4), 10**4), rng.randint(1, 10**4))
                if rng.random() < 0.8
                else Fraction(0)
                for _ in range(data.p)
            ]
        )
    c0 = Fraction(rng.randint(-(10**4), 10**4), rng.randint(1, 10**4))
    return ChartCoords.make(c0, rows, r)


def test_closed_form_matches_valuation_oracle_100_samples():
    data = triple_point_data()
    v = model_valuation(data)
    rng = random.Random(0)
    for _ in range(100):
        coords = rand_coords(rng, data)
        f = coords.as_ratfunc(data)
        assert closed_form_val(data, coords) == evaluate_rat(v, f)


def test_generator_values_nonnegative():
    for data in GRID:
        v = model_valuation(data)
        for j, g in enumerate(chart_generators(data)):
            val = evaluate_rat(v, g)
            assert val == Fraction(j, data.p)
            assert val >= 0
        assert evaluate_rat(v, RatFunc.of(data.pi)) == 1


def test_presentation_json_roundtrips_through_parsers():
    data = triple_point_data()
    pres = presentation_matrix(data)
    doc = presentation_json(pres, compute_break(data.phi, data.p))
    assert doc["schema"] == "maclane-surfaces/v1"
    assert parse_univariate(doc["phi"]) == data.phi
    for gen_str, gen in zip(doc["generators"], pres.generators):
        assert parse_ratfunc(gen_str) == gen
    from maclane_surfaces.poly import parse_multivariate

    for minor_str, minor in zip(doc["minors"], pres.minors):
        assert parse_multivariate(minor_str, pres.variables) == minor
