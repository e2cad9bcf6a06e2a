import json
import os
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from kapparing import cache
from kapparing.golden import ORDER_6, X6, Y6
from kapparing.kappa import transform_bracket_to_kappa
from kapparing.linalg import RationalMatrix, determinant, is_lower_triangular, multiply, rank
from kapparing.partitions import Partition, aut_order, enumerate_bounded, enumerate_P_delta, enumerate_partitions
from kapparing.relations import (
    coefficient_C,
    column_scale,
    determinant_formula,
    determinant_formula_as_printed,
    expected_L_diagonal,
    matrix_L0,
    matrix_L_via_series,
    matrix_M,
    matrix_X,
    matrix_Y0,
    relation_rows_bracket,
    relation_rows_full,
    relation_rows_kappa,
)

F = Fraction
P = Partition


def test_golden_d6():
    x, y = matrix_X(6, 0), matrix_Y0(6)
    assert [list(p) for p in x.row_index] == ORDER_6
    assert [list(r) for r in x.rows] == X6
    assert [list(r) for r in y.rows] == Y6


def test_X_examples():
    x = matrix_X(6, 0)
    assert x[P([3, 1, 1, 1]), P([3, 1, 1, 1])] == F(-10, 3)
    assert x[P([2, 2, 2]), P([5, 1])] == 0
    assert x[P([1] * 6), P([3, 3])] == -6
    assert x[P([2, 1, 1, 1, 1]), P([2, 1, 1, 1, 1])] == 5


def test_Y_examples():
    y = matrix_Y0(6)
    assert y[P([1] * 6), P([4, 1, 1])] == 16
    assert y[P([2, 2, 2]), P([4, 2])] == 12
    assert y[P([1] * 6), P([1] * 6)] == F(1, 6)
    assert y[P([2, 1, 1, 1, 1]), P([2, 1, 1, 1, 1])] == 1
    assert y[P([1] * 6), P([5, 1])] == 125


def test_C_examples():
    for d in range(2, 8):
        assert coefficient_C((0,), [1] * d) == F(d * (-1) ** (d - 1), factorial(d))
    q = P([2, 1, 1, 1, 1])
    assert coefficient_C((1,), q) / column_scale(q) == 5
    assert coefficient_C((1, 1, 1), [3, 3]) == 0


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=3),
    st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=5),
    st.randoms(use_true_random=False),
)
def test_C_invariant_under_reordering(alpha, q, rnd):
    shuffled = list(alpha)
    rnd.shuffle(shuffled)
    q = Partition.from_parts(q)
    assert coefficient_C(alpha, q) == coefficient_C(shuffled, q)


def test_M_small_cases():
    m = matrix_M(2, 0)
    assert m.shape == (1, 1) and m.row_index == (P([1, 1]),)
    assert m.rows[0][0] == coefficient_C((0,), [1, 1]) == F(-1)
    for d in range(2, 9):
        assert matrix_M(d, d - 2).row_index == (P([1] * d),)
    with pytest.raises(ValueError):
        matrix_M(5, 4)


@pytest.mark.parametrize("d", range(2, 9))
def test_rescaled_M_is_X(d):
    for delta in range(0, d - 1):
        m = matrix_M(d, delta)
        scaled = m.scale_columns([1 / column_scale(q) for q in m.col_index])
        assert scaled.rows == matrix_X(d, delta).rows


def test_X_delta_is_leading_minor():
    for d in range(2, 9):
        full = matrix_X(d, 0)
        for delta in range(1, d - 1):
            sub = matrix_X(d, delta)
            assert full.submatrix(sub.row_index, sub.col_index) == sub
            assert full.row_index[: sub.nrows] == sub.row_index


@pytest.mark.parametrize("d", range(2, 10))
def test_M_nonsingular(d):
    for delta in range(0, d - 1):
        assert rank(matrix_M(d, delta)) == len(enumerate_P_delta(d, delta))


@pytest.mark.parametrize("d", range(2, 9))
def test_product_identity(d):
    lo = matrix_L0(d)
    assert lo == multiply(matrix_X(d, 0), matrix_Y0(d))
    assert is_lower_triangular(lo)
    for i, p in enumerate(lo.row_index):
        assert lo.rows[i][i] == expected_L_diagonal(p)
    ones = P([1] * d)
    assert all(lo[ones, q] == 0 for q in lo.col_index if q != ones)


def test_L_diagonal_examples():
    assert expected_L_diagonal([2, 1, 1, 1, 1]) == -1
    assert expected_L_diagonal([1] * 6) == -1
    assert expected_L_diagonal([3, 3]) == 1
    assert matrix_L0(6)[P([1] * 6), P([1] * 6)] == -1


@pytest.mark.parametrize("d", range(2, 9))
def test_L_two_constructions(d):
    assert matrix_L_via_series(d) == matrix_L0(d)


@pytest.mark.parametrize("d", range(2, 9))
def test_determinant_formula(d):
    assert determinant_formula(d) == determinant(matrix_X(d, 0))
    assert determinant_formula_as_printed(d) * d == determinant_formula(d)


def test_determinant_small():
    assert determinant(matrix_X(2, 0)) == -2
    assert determinant_formula_as_printed(2) == -1


def test_relation_row_examples():
    s = relation_rows_kappa(2, 3)
    assert s.matrix.nrows == 1 and s.rank() == 1
    assert s.rank() == len(enumerate_partitions(2)) - len(enumerate_bounded(2, 1))
    assert relation_rows_kappa(4, 8).is_empty()
    assert relation_rows_kappa(4, 4).is_empty()
    s = relation_rows_kappa(6, 7)
    assert s.matrix.nrows == 10 and s.rank() == 10


@pytest.mark.parametrize("d,zeta", [(3, 4), (4, 6), (5, 7), (6, 8)])
def test_kappa_rows_are_bracket_rows_transformed(d, zeta):
    b = relation_rows_bracket(d, zeta).matrix
    k = relation_rows_kappa(d, zeta).matrix
    assert multiply(b, transform_bracket_to_kappa(d, zeta)) == k
    assert rank(b) == rank(k)


@pytest.mark.parametrize("zeta", range(3, 8))
def test_full_alpha_family_adds_no_rank(zeta):
    for d in range(1, zeta):
        delta = zeta - 1 - d
        if not 0 <= delta <= d - 2:
            continue
        full = relation_rows_full(d, zeta, basis="kappa")
        assert full.rank() == relation_rows_kappa(d, zeta).rank()


def test_cache_roundtrip_is_byte_identical(tmp_path):
    for kind in cache.KINDS:
        built = cache.build(kind, 5, 0)
        first = cache.load_or_build(kind, 5, 0, tmp_path)
        path = cache.cache_path(tmp_path, kind, 5, 0)
        text = path.read_text()
        second = cache.load_or_build(kind, 5, 0, tmp_path)
        assert first == second == built
        assert second.to_json() == built.to_json() == text
    assert cache.list_entries(tmp_path) == sorted(f"{k}_d5_delta0.json" for k in cache.KINDS)
    assert len(cache.clear(tmp_path)) == 4 and cache.list_entries(tmp_path) == []


def test_cache_leaves_no_partial_files(tmp_path, monkeypatch):
    def boom(*args, **kwargs):
        raise OSError("disk full")

    monkeypatch.setattr(os, "replace", boom)
    with pytest.raises(OSError):
        cache.load_or_build("X", 4, 0, tmp_path)
    assert list(tmp_path.iterdir()) == []


def test_cache_rejects_bad_requests():
    with pytest.raises(ValueError):
        cache.build("Y", 5, 1)
    with pytest.raises(ValueError):
        cache.build("Q", 5, 0)


def test_matrix_json_carries_metadata():
    obj = json.loads(matrix_M(4, 1).to_json())
    assert obj["kind"] == "M" and obj["d"] == 4 and obj["delta"] == 1
    assert RationalMatrix.from_json_obj(obj) == matrix_M(4, 1)
    assert aut_order(obj["order"][0]) == 24
