from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from kapparing.partitions import Partition
from kapparing.relations import comb_graph_sum
from kapparing.series import (
    F_coeff,
    F_series,
    J_closed,
    J_recursive,
    TruncatedSeries,
    Z_series,
    bracket_monomial,
    exp_linear,
    exp_series,
)

F = Fraction
P = Partition


def test_bracket_monomial():
    assert bracket_monomial(()) == 1
    assert bracket_monomial((1,)) == F(1, 1)
    assert bracket_monomial((2,)) == F(1, 4)
    assert bracket_monomial((1, 1)) == F(1, 2)
    assert bracket_monomial((2, 1, 1)) == 1
    assert bracket_monomial((3, 2, 1, 1)) == 7
    assert bracket_monomial((1, 1, 1, 1, 1)) == 25


def test_bracket_is_applied_after_expansion():
    # <t_1^2> != <t_1>^2, so multiplying brackets would be wrong
    s = TruncatedSeries({P([1]): 1}, 4)
    assert (s * s).bracket().coeff(2) == F(1, 2)
    assert s.bracket().coeff(1) ** 2 == 1


def test_Z_coefficients():
    z = Z_series(1, 5)
    assert z.x_coefficient(3) == {P([3]): F(9, 6)}
    assert Z_series(0, 3).x_coefficient(2) == {P([2]): F(4, 2)}
    assert Z_series(3, 4).x_coefficient(1) == {P([1]): 1}
    assert Z_series(4, 4).x_coefficient(2) == {P([2]): F(1, 8)}
    with pytest.raises(ValueError):
        Z_series(-1, 3)
    with pytest.raises(ValueError):
        z.x_coefficient(6)


@pytest.mark.parametrize("order", [1, 4, 7])
def test_exp_linear_matches_taylor(order):
    s = -Z_series(1, order)
    assert exp_linear(s) == exp_series(s)


def test_exp_rejects():
    with pytest.raises(ValueError):
        exp_series(TruncatedSeries.one(3))
    s = Z_series(1, 3)
    with pytest.raises(ValueError):
        exp_linear(s * s)


def test_F_empty_is_one_minus_x():
    f = F_series((), 20)
    assert f.coeffs == tuple([F(1), F(-1)] + [F(0)] * 19)


def test_F_zero_is_x():
    assert F_series((0,), 12).coeffs == tuple([F(0), F(1)] + [F(0)] * 11)


def test_derivative_relation():
    order = 15
    f_empty = F_series((), order)
    f_zero = F_series((0,), order)
    for n in range(1, order + 1):
        assert n * f_empty.coeff(n) + f_zero.coeff(n) == 0


def degree_bound_alphas():
    for m in range(1, 4):
        for first in range(0, 7):
            yield from _extend((first,), m)


def _extend(prefix, m):
    if len(prefix) == m:
        if sum(prefix) <= 6:
            yield prefix
        return
    for a in range(1, 7 - sum(prefix)):
        yield from _extend(prefix + (a,), m)


@pytest.mark.parametrize("alpha", list(degree_bound_alphas()), ids=str)
def test_degree_bound(alpha):
    bound = 1 + sum(alpha)
    f = F_series(alpha, bound + 4)
    assert f.degree() <= bound


@pytest.mark.parametrize("a", range(0, 9))
def test_leading_coefficient(a):
    k = 1 + a
    assert F_coeff((a,), k) == F((-1) ** a, k * factorial(k))


def test_J_values():
    assert [J_closed(k) for k in (1, 2, 3)] == [1, F(1, 4), F(1, 18)]
    assert J_closed(5) == F(1, 600)
    for k in range(1, 11):
        assert J_recursive(k) == J_closed(k)
    with pytest.raises(ValueError):
        J_closed(0)


@pytest.mark.parametrize("d", range(2, 9))
def test_comb_graph_sum_matches_series(d):
    for alpha in [(0,), (1,), (2,), (1, 1), (0, 1), (2, 1), (0, 2), (3,), (1, 1, 1)]:
        if sum(alpha) <= d - 2:
            assert comb_graph_sum(alpha, d) == F_coeff(alpha, d), (alpha, d)


def test_invalid_alpha():
    with pytest.raises(ValueError):
        F_series((1, 0), 5)
    with pytest.raises(ValueError):
        F_series((-1,), 5)
    with pytest.raises(ValueError):
        F_series((), -1)
    with pytest.raises(ValueError):
        F_series((1,), 3).coeff(4)
    assert F_coeff((1,), -2) == 0


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=3), max_size=3), st.integers(min_value=0, max_value=2))
def test_F_is_symmetric_in_positive_entries(rest, first):
    alpha = (first,) + tuple(rest)
    shuffled = (first,) + tuple(reversed(rest))
    assert F_series(alpha, 8) == F_series(shuffled, 8)


def test_json_shape():
    obj = F_series((1,), 3).to_json_obj(alpha=[1])
    assert obj == {"alpha": [1], "N": 3, "coefficients": {"0": "0/1", "1": "1/1", "2": "-1/4", "3": "0/1"}}
