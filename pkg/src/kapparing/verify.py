"""Named verification suites, each a list of labelled pass/fail cases."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial
from typing import Callable

from . import golden
from .kappa import psi_pushforward
from .linalg import determinant, format_rational, is_lower_triangular, is_upper_triangular, rank
from .partitions import enumerate_bounded, enumerate_P_delta, enumerate_partitions
from .relations import (
    determinant_formula,
    expected_L_diagonal,
    matrix_L0,
    matrix_L_via_series,
    matrix_M,
    matrix_X,
    matrix_Y0,
    relation_rows_kappa,
)
from .series import F_series, J_closed, J_recursive

Case = dict


def _case(label: str, ok: bool, **detail) -> Case:
    out = {"case": label, "ok": bool(ok)}
    out.update(detail)
    return out


def suite_golden6(**_) -> list[Case]:
    cases = []
    for kind, built, ref in (("X", matrix_X(6, 0), golden.X6), ("Y", matrix_Y0(6), golden.Y6)):
        if [list(p) for p in built.row_index] != golden.ORDER_6:
            cases.append(_case(f"{kind} order", False))
            continue
        for i, p in enumerate(golden.ORDER_6):
            for j, q in enumerate(golden.ORDER_6):
                got, want = built.rows[i][j], ref[i][j]
                cases.append(
                    _case(f"{kind}{p}{q}", got == want, got=format_rational(got), want=format_rational(want))
                )
    return cases


def suite_product(d: int | None = None, **_) -> list[Case]:
    top = d or 8
    cases = []
    for k in range(2, top + 1):
        y = matrix_Y0(k)
        lo = matrix_L0(k)
        diag_ok = all(lo.rows[i][i] == expected_L_diagonal(p) for i, p in enumerate(lo.row_index))
        cases.append(_case(f"d={k} Y upper", is_upper_triangular(y)))
        cases.append(_case(f"d={k} XY lower", is_lower_triangular(lo)))
        cases.append(_case(f"d={k} XY diagonal", diag_ok))
        cases.append(_case(f"d={k} L via series", matrix_L_via_series(k) == lo))
    return cases


def suite_det(d: int | None = None, **_) -> list[Case]:
    top = d or 8
    cases = []
    for k in range(2, top + 1):
        formula = determinant_formula(k)
        elim = determinant(matrix_X(k, 0))
        cases.append(
            _case(f"d={k}", formula == elim, formula=format_rational(formula), elimination=format_rational(elim))
        )
    return cases


def suite_nonsingular(d: int | None = None, **_) -> list[Case]:
    top = d or 9
    cases = []
    for k in range(2, top + 1):
        for delta in range(0, k - 1):
            size = len(enumerate_P_delta(k, delta))
            r = rank(matrix_M(k, delta))
            cases.append(_case(f"d={k} delta={delta}", r == size, rank=r, size=size))
    return cases


def suite_rank(zeta: int | None = None, **_) -> list[Case]:
    top = int(zeta or 8)
    cases = []
    for z in range(3, top + 1):
        for k in range(1, z):
            delta = z - 1 - k
            if not 0 <= delta <= k - 2:
                continue
            system = relation_rows_kappa(k, z)
            corank = len(enumerate_partitions(k)) - system.rank()
            expected = len(enumerate_bounded(k, z - k))
            cases.append(_case(f"zeta={z} d={k}", corank == expected, corank=corank, basis=expected))
    return cases


ORACLE_ZETAS = (Fraction(1), Fraction(3), Fraction(7, 2))


def suite_oracle(**_) -> list[Case]:
    from .oracle import oracle_pushforward

    cases = []
    for z in ORACLE_ZETAS:
        for ell in range(1, 4):
            for e in product(range(9), repeat=ell):
                if sum(e) > 8:
                    continue
                ok = psi_pushforward(e, z) == oracle_pushforward(e, z)
                cases.append(_case(f"zeta={z} e={list(e)}", ok))
    return cases


def _degree_bound_alphas():
    for m in range(1, 4):
        for alpha in product(range(7), repeat=m):
            if sum(alpha) <= 6 and all(a > 0 for a in alpha[1:]):
                yield alpha


def suite_series(**_) -> list[Case]:
    cases = []
    f_empty = F_series((), 20)
    want = [Fraction(1), Fraction(-1)] + [Fraction(0)] * 19
    cases.append(_case("F_empty = 1 - x to order 20", list(f_empty.coeffs) == want))
    for alpha in _degree_bound_alphas():
        bound = 1 + sum(alpha)
        f = F_series(alpha, bound + 4)
        cases.append(_case(f"deg F{list(alpha)} <= {bound}", f.degree() <= bound, degree=f.degree()))
    for a in range(9):
        k = 1 + a
        got = F_series((a,), k).coeff(k)
        want_c = Fraction((-1) ** a, k * factorial(k))
        cases.append(_case(f"leading F[{a}]", got == want_c, got=format_rational(got)))
    for k in range(1, 11):
        cases.append(_case(f"J_{k}", J_recursive(k) == J_closed(k) == Fraction(1, k * factorial(k))))
    return cases


def suite_minor(d: int | None = None, **_) -> list[Case]:
    top = d or 8
    cases = []
    for k in range(2, top + 1):
        full = matrix_X(k, 0)
        for delta in range(0, k - 1):
            sub = matrix_X(k, delta)
            block = full.submatrix(sub.row_index, sub.col_index)
            leading = list(full.row_index[: sub.nrows]) == list(sub.row_index)
            cases.append(_case(f"d={k} delta={delta}", leading and block == sub))
    return cases


SUITES: dict[str, Callable[..., list[Case]]] = {
    "golden6": suite_golden6,
    "product": suite_product,
    "det": suite_det,
    "nonsingular": suite_nonsingular,
    "rank": suite_rank,
    "oracle": suite_oracle,
    "series": suite_series,
    "minor": suite_minor,
}


def run_suite(name: str, d: int | None = None, zeta=None) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    cases = sorted(SUITES[name](d=d, zeta=zeta), key=lambda c: c["case"])
    failed = [c["case"] for c in cases if not c["ok"]]
    return {"suite": name, "passed": not failed, "total": len(cases), "failed": failed, "cases": cases}
