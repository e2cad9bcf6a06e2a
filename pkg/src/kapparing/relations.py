"""Relation coefficients and the matrices of the rank analysis.

For an admissible vector ``alpha`` the stable-map relation reads
``sum_q C(alpha, q) <q> = 0`` over partitions ``q`` of ``d``.  Rows indexed by
``P_delta(d)`` (using ``alpha_of``) give the square matrix ``M``; rescaling its
columns gives ``X``.  ``Y`` is an explicit upper-triangular matrix with
``X . Y = L`` lower triangular with +-1 on the diagonal, and ``L`` can also be
assembled from coefficients of the series ``F_alpha``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

from .kappa import transform_bracket_to_kappa
from .linalg import RationalMatrix, multiply, rank
from .partitions import (
    Partition,
    admissible_alphas,
    alpha_of,
    aut_order,
    check_alpha,
    enumerate_P_delta,
    enumerate_partitions,
    hat,
    is_all_ones,
)
from .series import F_coeff

# combinatorial sums


def injection_sum(
    weights: Sequence[Callable[[int], Fraction]],
    q: Sequence[int],
    unused: Callable[[int], Fraction],
) -> Fraction:
    """Sum over injections phi of ``prod_i weights[i](q[phi(i)]) * prod_{j not in Im} unused(q[j])``.

    Positions of equal parts are interchangeable, so the state is the number
    of used positions per distinct part value.
    """
    counts = Counter(q)
    values = sorted(counts)
    m = len(weights)
    if m > len(q):
        return Fraction(0)

    @lru_cache(maxsize=None)
    def rec(i: int, used: tuple[int, ...]) -> Fraction:
        if i == m:
            out = Fraction(1)
            for v, u in zip(values, used):
                free = counts[v] - u
                if free:
                    out *= unused(v) ** free
            return out
        total = Fraction(0)
        for k, v in enumerate(values):
            free = counts[v] - used[k]
            if free:
                w = weights[i](v)
                if w:
                    nxt = used[:k] + (used[k] + 1,) + used[k + 1 :]
                    total += free * w * rec(i + 1, nxt)
        return total

    return rec(0, (0,) * len(values))


def _submultisets_with_sum(avail: tuple[tuple[int, int], ...], target: int, allow_empty: bool):
    """Yield (taken counts, number of labelled choices) for sub-multisets of
    ``avail`` (pairs value -> count, decreasing values) summing to ``target``."""

    def rec(k: int, remaining: int):
        if k == len(avail):
            if remaining == 0:
                yield (), 1
            return
        value, count = avail[k]
        for t in range(min(count, remaining // value) + 1):
            for rest, ways in rec(k + 1, remaining - t * value):
                yield (t,) + rest, ways * comb(count, t)

    for taken, ways in rec(0, target):
        if allow_empty or any(taken):
            yield taken, ways


def function_sum(
    items: Sequence[int],
    q: Sequence[int],
    factor: Callable[[int, tuple[int, ...]], Fraction],
    fibers_nonempty: bool,
    fiber_sums_match: bool,
) -> Fraction:
    """Sum over functions theta from item positions to positions of ``q`` of
    ``prod_i factor(q_i, fiber values over i)``.

    With ``fiber_sums_match`` only functions whose fiber over ``i`` sums to
    ``q_i`` count.  Items with equal values are interchangeable, so each
    fiber is a sub-multiset weighted by its number of labelled choices.
    """
    q = tuple(q)
    counts = Counter(items)
    values = tuple(sorted(counts, reverse=True))

    @lru_cache(maxsize=None)
    def rec(i: int, remaining: tuple[int, ...]) -> Fraction:
        if i == len(q):
            return Fraction(1) if not any(remaining) else Fraction(0)
        avail = tuple((v, c) for v, c in zip(values, remaining))
        total = Fraction(0)
        if fiber_sums_match:
            choices = _submultisets_with_sum(avail, q[i], allow_empty=not fibers_nonempty)
        else:
            choices = _all_submultisets(avail, allow_empty=not fibers_nonempty)
        for taken, ways in choices:
            fiber = tuple(v for v, t in zip(values, taken) for _ in range(t))
            f = factor(q[i], fiber)
            if f:
                rest = tuple(c - t for c, t in zip(remaining, taken))
                total += ways * f * rec(i + 1, rest)
        return total

    return rec(0, tuple(counts[v] for v in values))


def _all_submultisets(avail, allow_empty: bool):
    def rec(k: int):
        if k == len(avail):
            yield (), 1
            return
        value, count = avail[k]
        for t in range(count + 1):
            for rest, ways in rec(k + 1):
                yield (t,) + rest, ways * comb(count, t)

    for taken, ways in rec(0):
        if allow_empty or any(taken):
            yield taken, ways


# relation coefficients


def _vertex_weight(q: Sequence[int], shift: int) -> Fraction:
    """``prod_i q_i^(q_i - shift) / q_i!``."""
    out = Fraction(1)
    for x in q:
        out *= Fraction(x) ** (x - shift) / factorial(x)
    return out


def coefficient_C(alpha: Sequence[int], q: Sequence[int]) -> Fraction:
    """Coefficient of ``<q>`` in the relation attached to ``alpha``."""
    q = Partition.from_parts(q)
    if len(alpha) > len(q):
        return Fraction(0)
    weights = [(lambda v, a=a: Fraction(v) ** -a) for a in alpha]
    s = injection_sum(weights, q, lambda v: Fraction(-1, v))
    return s * _vertex_weight(q, 0) / aut_order(q)


def column_scale(q: Sequence[int]) -> Fraction:
    """Factor relating the columns of M and X: ``M[:, q] = X[:, q] * column_scale(q)``."""
    return _vertex_weight(q, 1) / aut_order(q)


def _check_delta(d: int, delta: int) -> None:
    if not 0 <= delta <= d - 2:
        raise ValueError(f"delta must lie in [0, d-2]; got d={d}, delta={delta}")


def matrix_M(d: int, delta: int) -> RationalMatrix:
    _check_delta(d, delta)
    index = enumerate_P_delta(d, delta)
    rows = [[coefficient_C(alpha_of(p, d, delta), q) for q in index] for p in index]
    return RationalMatrix(rows, index, index, kind="M", d=d, delta=delta)


def _x_entry(p: Partition, q: Partition, d: int) -> Fraction:
    if is_all_ones(p):
        return Fraction((-1) ** (len(q) - 1) * d)
    weights = [(lambda v, a=a: Fraction(v) ** (2 - a)) for a in hat(p)]
    return injection_sum(weights, q, lambda v: Fraction(-1))


def matrix_X(d: int, delta: int) -> RationalMatrix:
    """The column-rescaled relation matrix, built from its own closed formula."""
    _check_delta(d, delta)
    index = enumerate_P_delta(d, delta)
    rows = [[_x_entry(p, q, d) for q in index] for p in index]
    return RationalMatrix(rows, index, index, kind="X", d=d, delta=delta)


def _y_factor(qi: int, fiber: tuple[int, ...]) -> Fraction:
    multinomial = factorial(qi)
    out = Fraction(qi) ** (len(fiber) - 2)
    for x in fiber:
        multinomial //= factorial(x)
        out *= Fraction(x) ** (x - 1)
    return multinomial * out


def _y_entry(p: Partition, q: Partition, d: int) -> Fraction:
    if is_all_ones(p) and is_all_ones(q):
        return Fraction(1, d)
    s = function_sum(p, q, _y_factor, fibers_nonempty=True, fiber_sums_match=True)
    return s / (aut_order(p) * aut_order(hat(q)))


def matrix_Y0(d: int) -> RationalMatrix:
    if d < 2:
        raise ValueError("d must be at least 2")
    index = enumerate_P_delta(d, 0)
    rows = [[_y_entry(p, q, d) for q in index] for p in index]
    return RationalMatrix(rows, index, index, kind="Y", d=d, delta=0)


def matrix_L0(d: int) -> RationalMatrix:
    return multiply(matrix_X(d, 0), matrix_Y0(d)).with_meta("L", d, 0)


def expected_L_diagonal(p: Sequence[int]) -> int:
    """The +-1 diagonal entry of L at ``p``."""
    p = Partition(p)
    if is_all_ones(p):
        return (-1) ** (len(p) - 1)
    h = hat(p)
    sign = (-1) ** (len(p) - len(h))
    for x in h:
        sign *= (-1) ** (x - 1)
    return sign


def _l_series_factor(qi: int, fiber: tuple[int, ...]) -> Fraction:
    # an empty fiber stands for F_empty = 1 - x
    alpha = tuple(sorted(fiber, reverse=True))
    if alpha and alpha[-1] == 0:
        alpha = (0,) + alpha[:-1]
    if not alpha:
        c = Fraction({0: 1, 1: -1}.get(qi, 0))
    else:
        c = F_coeff(alpha, qi)
    return c * qi * factorial(qi)


def _l_series_entry(p: Partition, q: Partition, d: int) -> Fraction:
    items = (0,) if is_all_ones(p) else tuple(x - 1 for x in hat(p))
    s = function_sum(items, q, _l_series_factor, fibers_nonempty=False, fiber_sums_match=False)
    s /= aut_order(hat(q))
    if is_all_ones(q):
        # only Y[(1^d), (1^d)] feeds this column, and it is 1/d rather than
        # the value 1 the generic Y formula would give there
        s /= d
    return s


def matrix_L_via_series(d: int) -> RationalMatrix:
    """L assembled from x-coefficients of the series ``F_alpha``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    index = enumerate_P_delta(d, 0)
    rows = [[_l_series_entry(p, q, d) for q in index] for p in index]
    return RationalMatrix(rows, index, index, kind="L", d=d, delta=0)


def determinant_formula(d: int) -> Fraction:
    """Closed form of det X_0(d) from the diagonals of L and Y.

    ``det X = det L / det Y`` with ``Y[(1^d),(1^d)] = 1/d`` and
    ``Y[p, p] = prod p_i^(p_i - 2) / |Aut(hat p)|`` otherwise.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    out = Fraction((-1) ** (d - 1) * d)
    for p in enumerate_P_delta(d, 0):
        if is_all_ones(p):
            continue
        h = hat(p)
        denom = 1
        for x in p:
            denom *= Fraction(x) ** (x - 2)
        sign = (-1) ** len(p)
        for x in h:
            sign *= (-1) ** x
        out *= Fraction(aut_order(h)) / denom * sign
    return out


def determinant_formula_as_printed(d: int) -> Fraction:
    """The closed form without the factor ``d`` from the ``(1^d)`` corner of Y."""
    return determinant_formula(d) / d


# relation systems


@dataclass(frozen=True)
class RelationSystem:
    d: int
    delta: int
    zeta: Fraction
    basis: str
    matrix: RationalMatrix

    @property
    def rows(self) -> dict[Partition, tuple[Fraction, ...]]:
        return dict(zip(self.matrix.row_index, self.matrix.rows))

    @property
    def columns(self) -> tuple[Partition, ...]:
        return self.matrix.col_index

    def is_empty(self) -> bool:
        return self.matrix.nrows == 0

    def rank(self) -> int:
        return rank(self.matrix) if self.matrix.nrows else 0


def delta_for(d: int, zeta) -> int:
    zeta = Fraction(zeta)
    if zeta.denominator != 1:
        raise ValueError(f"relation systems need an integral zeta, got {zeta}")
    return int(zeta) - 1 - d


def relation_rows_bracket(d: int, zeta) -> RelationSystem:
    """Rows ``C(alpha[p], q)`` for ``p`` in ``P_delta(d)``, columns over ``P(d)``."""
    delta = delta_for(d, zeta)
    columns = enumerate_partitions(d)
    if not 0 <= delta <= d - 2:
        empty = RationalMatrix([], [], columns)
        return RelationSystem(d, delta, Fraction(zeta), "bracket", empty)
    labels = enumerate_P_delta(d, delta)
    rows = [[coefficient_C(alpha_of(p, d, delta), q) for q in columns] for p in labels]
    return RelationSystem(d, delta, Fraction(zeta), "bracket", RationalMatrix(rows, labels, columns))


@lru_cache(maxsize=None)
def relation_rows_kappa(d: int, zeta) -> RelationSystem:
    """The bracket relations rewritten in kappa-monomial coordinates."""
    system = relation_rows_bracket(d, zeta)
    if system.is_empty():
        return RelationSystem(d, system.delta, system.zeta, "kappa", system.matrix)
    b = transform_bracket_to_kappa(d, zeta)
    m = multiply(system.matrix, b)
    return RelationSystem(d, system.delta, system.zeta, "kappa", m)


def relation_rows_full(d: int, zeta, basis: str = "bracket") -> RelationSystem:
    """Every admissible alpha (up to reordering), not only the square selection.

    Row labels are the alpha vectors themselves, shifted by one so they form
    partitions: ``alpha = (a_1, ..., a_m)`` is labelled ``(a_1+1, ..., a_m+1)``.
    """
    delta = delta_for(d, zeta)
    columns = enumerate_partitions(d)
    if not 0 <= delta <= d - 2:
        return RelationSystem(d, delta, Fraction(zeta), basis, RationalMatrix([], [], columns))
    alphas = admissible_alphas(d, delta)
    for a in alphas:
        check_alpha(a, d, delta)
    labels = [Partition.from_parts(x + 1 for x in a) for a in alphas]
    rows = [[coefficient_C(a, q) for q in columns] for a in alphas]
    m = RationalMatrix(rows, labels, columns)
    if basis == "kappa":
        m = multiply(m, transform_bracket_to_kappa(d, zeta))
    return RelationSystem(d, delta, Fraction(zeta), basis, m)


def comb_graph_sum(alpha: Sequence[int], d: int) -> Fraction:
    """``sum_q C(alpha, q) d^(len(q) - 3)``: the relation coefficients paired
    with the genus-0 bracket values."""
    return sum(
        (coefficient_C(alpha, q) * Fraction(d) ** (len(q) - 3) for q in enumerate_partitions(d)),
        Fraction(0),
    )
