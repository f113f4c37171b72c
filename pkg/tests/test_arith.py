import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from maclane_surfaces.arith import (
    INF,
    ExtVal,
    FFContext,
    extval_from_str,
    padic_val,
    rat_from_str,
    rat_to_str,
)

rationals = st.fractions(
    min_value=Fraction(-10**6), max_value=Fraction(10**6), max_denominator=10**4
)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def test_padic_val_basics():
    assert padic_val(9, 3) == 2
    assert padic_val(Fraction(2, 3), 3) == -1
    assert padic_val(0, 3) == INF
    assert padic_val(1, 5) == 0
    assert padic_val(Fraction(-50, 7), 5) == 2


def test_padic_val_rejects_nonprime():
    with pytest.raises(ValueError):
        padic_val(4, 6)


@given(nonzero_rationals, nonzero_rationals)
def test_padic_val_multiplicative(a, b):
    assert padic_val(a * b, 3) == padic_val(a, 3) + padic_val(b, 3)


@given(rationals, rationals)
def test_padic_val_ultrametric(a, b):
    lhs = padic_val(a + b, 5)
    va, vb = padic_val(a, 5), padic_val(b, 5)
    assert lhs >= min(va, vb)
    if va != vb:
        assert lhs == min(va, vb)


@given(rationals)
def test_rational_string_roundtrip(q):
    assert rat_from_str(rat_to_str(q)) == q


def test_extval_order_and_arithmetic():
    two = ExtVal.of(2)
    assert INF + two == INF
    assert INF + INF == INF
    assert INF - two == INF
    assert min(INF, two) == two
    assert INF > two
    assert two < INF
    assert str(INF) == "inf"
    assert str(ExtVal.of(Fraction(1, 3))) == "1/3"
    assert extval_from_str("inf") == INF
    assert extval_from_str("5/3") == ExtVal.of(Fraction(5, 3))
    with pytest.raises(ValueError):
        two - INF


def test_ff_prime_field():
    f3 = FFContext.make(3)
    two = f3.element(2)
    assert two + two == f3.element(1)
    assert two.inv() == two
    assert (f3.element(0) + f3.element(1)) * two == two


def test_ff_quartic_extension_example():
    f4 = FFContext.make(2, 2, modulus=(1, 1, 1))  # t^2 + t + 1
    t = f4.gen()
    assert t * t == t + f4.one()


def test_ff_inverse_of_zero_rejected():
    f3 = FFContext.make(3)
    with pytest.raises(ZeroDivisionError):
        f3.zero().inv()


def test_ff_mismatched_contexts_rejected():
    a = FFContext.make(3).element(1)
    b = FFContext.make(5).element(1)
    with pytest.raises(ValueError):
        a + b


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1)])
def test_ff_multiplicative_group_order(p, k):
    ctx = FFContext.make(p, k)
    for a in ctx.elements():
        if not a.is_zero:
            assert a ** (ctx.order - 1) == ctx.one()


@pytest.mark.parametrize("p,k", [(3, 2), (2, 3)])
def test_ff_frobenius_is_additive_and_multiplicative(p, k):
    ctx = FFContext.make(p, k)
    rng = random.Random(0)
    elems = list(ctx.elements())
    for _ in range(20):
        a, b = rng.choice(elems), rng.choice(elems)
        assert (a + b).frobenius() == a.frobenius() + b.frobenius()
        assert (a * b).frobenius() == a.frobenius() * b.frobenius()


def test_ff_degree_cap():
    with pytest.raises(ValueError):
        FFContext.make(3, 5)


def test_ff_from_fraction():
    f3 = FFContext.make(3)
    assert f3.from_fraction(Fraction(1, 2)) == f3.element(2)  # 1/2 = 2 mod 3
    with pytest.raises(ZeroDivisionError):
        f3.from_fraction(Fraction(1, 3))
