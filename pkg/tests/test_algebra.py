from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nctoda.algebra import Series, mat_inv, mat_mul, to_rational
from nctoda.errors import OrderExhausted, SingularConstantTerm

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def series_strategy(dim=2, order=4, x0=1):
    row = st.lists(rationals, min_size=dim, max_size=dim)
    coeff = st.lists(row, min_size=dim, max_size=dim)
    return st.lists(coeff, min_size=order + 1, max_size=order + 1).map(
        lambda cs: Series(cs, dim=dim, x0=x0, order=order))


def invertible(s: Series) -> bool:
    return mat_inv(s.coefficients[0], s.dim) is not None


# ring axioms and the derivation ---------------------------------------------


@settings(max_examples=40, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_multiplication_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(series_strategy(), series_strategy(), series_strategy())
def test_distributive_both_sides(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=40, deadline=None)
@given(series_strategy(), series_strategy())
def test_leibniz_rule_keeps_factor_order(a, b):
    assert (a * b).derive() == a.derive() * b.truncate(3) + a.truncate(3) * b.derive()


@settings(max_examples=40, deadline=None)
@given(series_strategy(dim=2, order=5))
def test_inverse_is_two_sided(a):
    if not invertible(a):
        with pytest.raises(SingularConstantTerm):
            a.inverse()
        return
    inv = a.inverse()
    one = Series.one(dim=2, x0=1, order=5)
    assert a * inv == one
    assert inv * a == one


@settings(max_examples=40, deadline=None)
@given(series_strategy(dim=2, order=4))
def test_derivative_of_inverse(a):
    if not invertible(a):
        return
    inv = a.inverse()
    assert inv.derive() == -(inv.truncate(3) * a.derive() * inv.truncate(3))


def test_generic_matrices_do_not_commute():
    a = Series([[[0, 1], [0, 0]]], dim=2, order=0)
    b = Series([[[0, 0], [1, 0]]], dim=2, order=0)
    assert a * b != b * a


# valid-order bookkeeping ------------------------------------------------------


def test_order_rules():
    a = Series([1, 2, 3, 4, 5], order=4)
    b = Series([1, 1], order=2)
    assert (a + b).order == 2
    assert (a * b).order == 2
    assert a.derive().order == 3
    assert a.inverse().order == 4
    with pytest.raises(OrderExhausted):
        Series([7], order=0).derive()
    with pytest.raises(OrderExhausted):
        b.truncate(3)


def test_scalars_are_central_and_hit_the_diagonal():
    a = Series([[[1, 2], [3, 4]], [[0, 1], [1, 0]]], dim=2, order=1)
    shifted = a + 5
    assert shifted.coefficient(0) == ((6, 2), (3, 9))
    assert shifted.coefficient(1) == a.coefficient(1)
    assert 3 * a == a * 3
    assert (a / 2).coefficient(0) == ((Fraction(1, 2), 1), (Fraction(3, 2), 2))
    with pytest.raises(TypeError):
        a / a


def test_variable_and_reciprocal():
    # 1/x about x0 = 1 is 1 - t + t^2 - ...
    x = Series.variable(x0=1, order=6)
    assert x.inverse().scalar_coefficients() == [1, -1, 1, -1, 1, -1, 1]
    assert x.derive() == Series.one(order=5)


def test_inverse_known_values():
    # 1/(1 - t) = sum t^k
    s = Series([1, -1], order=5)
    assert s.inverse().scalar_coefficients() == [1] * 6
    with pytest.raises(SingularConstantTerm):
        Series([0, 1], order=3).inverse()
    singular = Series([[[1, 2], [2, 4]]], dim=2, order=2)
    with pytest.raises(SingularConstantTerm):
        singular.inverse()


def test_recenter_polynomial():
    # x^3 - 1 about 0 recentered at 2: 7 + 12 t + 6 t^2 + t^3
    p = Series([-1, 0, 0, 1], x0=0)
    q = p.recenter(2, order=5)
    assert q.scalar_coefficients() == [7, 12, 6, 1, 0, 0]
    assert q.x0 == 2
    assert q.recenter(0, order=3) == p


def test_to_rational():
    assert to_rational("3/4") == Fraction(3, 4)
    assert to_rational(5) == 5
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_immutable_and_mismatch():
    a = Series([1, 2])
    with pytest.raises(AttributeError):
        a.order = 5
    with pytest.raises(ValueError):
        a + Series([1, 2], x0=2)
    with pytest.raises(ValueError):
        a * Series([1], dim=2)


def test_flat_matrix_helpers():
    a = (1, 2, 3, 4)
    inv = mat_inv(a, 2)
    assert mat_mul(a, inv, 2, 2, 2) == (1, 0, 0, 1)
    assert mat_inv((1, 2, 2, 4), 2) is None
