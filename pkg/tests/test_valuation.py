import random
from fractions import Fraction

import pytest

from maclane_surfaces.arith import INF, padic_val
from maclane_surfaces.poly import RatFunc, UniPoly, parse_ratfunc, parse_univariate
from maclane_surfaces.valuation import (
    augment,
    compare_on,
    evaluate,
    evaluate_rat,
    gauss,
    parse_valuation,
    ramification_index,
)

PHI = parse_univariate("x^3 - 3*x^2 + 3")


def lemma_valuation():
    return augment(augment(gauss(3), UniPoly.x(), Fraction(1, 3)), PHI, 2)


def seven_valuations():
    """The component valuations of the worked instance, in index order 0..6."""
    v0 = gauss(3)
    x = UniPoly.x()
    v1 = augment(v0, x, 1)
    v3 = augment(v0, x, Fraction(1, 2))
    v5 = augment(v0, x, Fraction(1, 3))
    v2 = augment(v5, PHI, Fraction(5, 3))
    v4 = augment(v5, PHI, Fraction(4, 3))
    v6 = augment(v5, PHI, 2)
    return [v0, v1, v2, v3, v4, v5, v6]


def rand_poly(rng, max_deg=8):
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(deg + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return UniPoly("x", coeffs)


def test_gauss_values():
    v0 = gauss(3)
    assert evaluate(v0, parse_univariate("3*x^2 + 9")) == 1
    assert evaluate(v0, UniPoly.x()) == 0
    assert evaluate_rat(v0, parse_ratfunc("x/3")) == -1
    assert evaluate(v0, UniPoly.zero()) == INF


def test_augment_rejects_bad_values():
    v0 = gauss(3)
    with pytest.raises(ValueError):
        augment(v0, UniPoly.x(), 0)  # not above v0(x) = 0
    with pytest.raises(ValueError):
        augment(v0, parse_univariate("2*x + 1"), 1)  # not monic
    with pytest.raises(ValueError):
        augment(v0, parse_univariate("x + 1/3"), 1)  # not 3-integral
    v6 = augment(augment(v0, UniPoly.x(), Fraction(1, 3)), PHI, 2)
    with pytest.raises(ValueError):
        augment(v6, parse_univariate("x^2 + 3"), 2)  # degree 2 not a multiple of 3


def test_lemma_valuation_values():
    v = lemma_valuation()
    assert evaluate(v, PHI) == 2
    assert evaluate(v, parse_univariate("x^3")) == 1
    assert evaluate(v, UniPoly.zero()) == INF
    assert evaluate_rat(v, RatFunc(UniPoly.const(9), PHI)) == 0
    assert evaluate_rat(v, RatFunc(UniPoly.x())) == Fraction(1, 3)


def test_proposition_table_values():
    v0, v1, v2, v3, v4, v5, v6 = seven_valuations()
    assert evaluate(v4, PHI) == Fraction(4, 3)
    assert evaluate(v2, PHI) == Fraction(5, 3)
    assert evaluate(v1, UniPoly.x()) == 1
    assert evaluate(v3, UniPoly.x()) == Fraction(1, 2)
    assert evaluate(v5, PHI) == 1
    assert evaluate(v6, PHI) == 2


def test_ramification_indices():
    v0, v1, v2, v3, v4, v5, v6 = seven_valuations()
    assert [ramification_index(v) for v in (v0, v1, v2, v3, v4, v5, v6)] == [1, 1, 3, 2, 3, 3, 3]


def test_multiplicativity_on_random_pairs():
    rng = random.Random(11)
    vs = seven_valuations()
    for _ in range(100):
        f = rand_poly(rng)
        g = rand_poly(rng)
        v = rng.choice(vs)
        assert evaluate(v, f * g) == evaluate(v, f) + evaluate(v, g)


def test_ultrametric_inequality():
    rng = random.Random(12)
    vs = seven_valuations()
    for _ in range(80):
        f = rand_poly(rng)
        g = rand_poly(rng)
        v = rng.choice(vs)
        vf, vg = evaluate(v, f), evaluate(v, g)
        vsum = evaluate(v, f + g)
        assert vsum >= min(vf, vg)
        if vf != vg:
            assert vsum == min(vf, vg)


def test_monotone_refinement():
    rng = random.Random(13)
    v0 = gauss(3)
    v5 = augment(v0, UniPoly.x(), Fraction(1, 3))
    v6 = augment(v5, PHI, 2)
    for _ in range(60):
        f = rand_poly(rng, max_deg=7)
        assert evaluate(v5, f) >= evaluate(v0, f)
        assert evaluate(v6, f) >= evaluate(v5, f)
        if not f.is_zero and f.degree < 1:
            assert evaluate(v5, f) == evaluate(v0, f)
        if not f.is_zero and f.degree < 3:
            assert evaluate(v6, f) == evaluate(v5, f)


def test_restriction_to_constants_is_padic():
    rng = random.Random(14)
    for v in seven_valuations():
        for _ in range(20):
            c = Fraction(rng.randint(-200, 200), rng.randint(1, 50))
            assert evaluate(v, UniPoly.const(c)) == padic_val(c, 3)


def test_evaluate_rat_consistent_with_polynomials():
    rng = random.Random(15)
    vs = seven_valuations()
    for _ in range(40):
        f = rand_poly(rng, 5)
        g = rand_poly(rng, 5)
        if g.is_zero:
            continue
        v = rng.choice(vs)
        assert evaluate_rat(v, RatFunc(f, g)) == evaluate(v, f) - evaluate(v, g)


def test_compare_on_distinguishes():
    v0, v1 = gauss(3), augment(gauss(3), UniPoly.x(), 1)
    x = UniPoly.x()
    assert compare_on(v0, v1, [UniPoly.const(3), x]) == x
    assert compare_on(v0, v0, [UniPoly.const(3), x, PHI]) is None


def test_valuation_string_roundtrip():
    v = lemma_valuation()
    s = str(v)
    assert s == "[v0(3), v(x)=1/3, v(x^3 - 3*x^2 + 3)=2]"
    w = parse_valuation(s)
    assert w.p == 3
    assert [st_.lam for st_ in w.steps] == [Fraction(1, 3), Fraction(2)]
    assert compare_on(v, w, [UniPoly.x(), PHI, UniPoly.const(3)]) is None


def test_gauss_ramification_index():
    assert ramification_index(gauss(3)) == 1
    assert ramification_index(augment(gauss(3), UniPoly.x(), Fraction(1, 2))) == 2
