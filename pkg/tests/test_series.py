from fractions import Fraction as F
from math import factorial

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from projplane.errors import NonInvertibleSeriesError, NotAGenusSeriesError, TruncationError
from projplane.series import (
    PowerSeries,
    a_hat_series,
    as_rational,
    coefficient_list,
    dual_series,
    exp_series,
    l_genus_series,
    render_series,
    s_numbers,
    series_derivative,
    series_div,
    series_integrate,
    shift_down,
)


def bernoulli(n):
    b = sympy.bernoulli(n)
    return F(int(b.p), int(b.q))


# closed forms through Bernoulli numbers, computed by sympy
def l_oracle(k):
    return 2 ** (2 * k) * bernoulli(2 * k) / factorial(2 * k)


def a_hat_oracle(k):
    return (2 - 2 ** (2 * k)) * bernoulli(2 * k) / factorial(2 * k) / 4**k


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def series_strategy(order=st.integers(0, 6), unit=False):
    def build(n):
        first = st.just(F(1)) if unit else rationals
        return st.tuples(first, st.lists(rationals, min_size=n, max_size=n)).map(lambda p: PowerSeries([p[0], *p[1]]))

    return order.flatmap(build)


def test_l_series_matches_bernoulli_closed_form():
    ell = l_genus_series(10)
    assert ell.coefficients == tuple(l_oracle(k) for k in range(11))


def test_a_hat_series_matches_bernoulli_closed_form():
    ahat = a_hat_series(10)
    assert ahat.coefficients == tuple(a_hat_oracle(k) for k in range(11))


def test_series_against_sympy_expansion():
    t = sympy.symbols("t", positive=True)
    x = sympy.sqrt(t)
    expanded = sympy.series(x / sympy.tanh(x), t, 0, 5).removeO()
    assert [F(str(expanded.coeff(t, k))) for k in range(5)] == list(l_genus_series(4).coefficients)


def test_low_order_coefficients():
    assert coefficient_list(l_genus_series(4)) == "1, 1/3, -1/45, 2/945, -1/4725"
    assert coefficient_list(a_hat_series(4)) == "1, -1/24, 7/5760, -31/967680, 127/154828800"


def test_dual_series_values():
    assert coefficient_list(dual_series(l_genus_series(4))) == "1, -1/3, 7/45, -62/945, 127/4725"
    assert coefficient_list(dual_series(a_hat_series(4))) == "1, 1/24, -1/1440, 1/60480, -1/2419200"


def test_s_numbers():
    assert s_numbers(l_genus_series(), 3) == (F(1, 3), F(7, 45), F(62, 945))
    assert s_numbers(a_hat_series(), 4) == (F(-1, 24), F(-1, 1440), F(-1, 60480), F(-1, 2419200))


def test_dual_of_one_is_one():
    one = PowerSeries.constant(1, 5)
    assert dual_series(one) == one


def test_dual_series_rejects_non_genus():
    with pytest.raises(NotAGenusSeriesError):
        dual_series(PowerSeries([2, 1]))


def test_s_numbers_truncation():
    with pytest.raises(TruncationError):
        s_numbers(l_genus_series(3), 4)


def test_division_by_non_unit():
    with pytest.raises(NonInvertibleSeriesError):
        series_div(PowerSeries([1, 1]), PowerSeries([0, 1]))


def test_out_of_range_coefficient():
    with pytest.raises(TruncationError):
        l_genus_series(2)[3]


def test_floats_rejected():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_order_zero_series():
    assert l_genus_series(0).coefficients == (F(1),)
    assert series_derivative(PowerSeries([5])) == PowerSeries([0])


def test_exp_series():
    assert exp_series(2, 3).coefficients == (1, 2, 2, F(4, 3))


def test_shift_down_requires_zero_constant():
    with pytest.raises(ValueError):
        shift_down(PowerSeries([1, 1]))


def test_render():
    assert render_series(PowerSeries([1, F(-1, 3), 0, 2])) == "1 - 1/3*t + 2*t^3"
    assert str(PowerSeries([0, -1])) == "0 - 1*t"


@settings(max_examples=60, deadline=None)
@given(series_strategy(), series_strategy())
def test_mul_commutes(a, b):
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(series_strategy(), series_strategy(unit=True))
def test_div_inverts_mul(a, b):
    n = min(a.order, b.order)
    assert (a / b) * b.truncate(n) == a.truncate(n)


@settings(max_examples=60, deadline=None)
@given(series_strategy())
def test_integrate_then_differentiate(a):
    assert series_derivative(series_integrate(a, 3)) == a


@settings(max_examples=40, deadline=None)
@given(series_strategy(st.integers(1, 6), unit=True))
def test_dual_series_definition(f):
    # f^v = f * (t/f)'  <=>  (f^v / f) integrates to t/f
    t_over_f = series_integrate(dual_series(f) / f)
    expected = PowerSeries([0, *(PowerSeries.constant(1, f.order) / f).coefficients])
    assert t_over_f == expected
