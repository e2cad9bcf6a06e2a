"""Acceptance criteria, one test each.

Every check is exact.  Each test records a PASS/FAIL line that the terminal
summary prints at the end of the run; ``python tests/test_acceptance.py``
prints the same lines without pytest.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from itertools import product
from math import factorial

import pytest

from kapparing.golden import ORDER_6, X6, Y6
from kapparing.kappa import KappaPoly, psi_pushforward, transform_bracket_to_kappa
from kapparing.linalg import determinant, is_lower_triangular, rank
from kapparing.oracle import oracle_pushforward
from kapparing.partitions import Partition, enumerate_bounded, enumerate_P_delta, enumerate_partitions, hat
from kapparing.relations import (
    determinant_formula,
    matrix_L0,
    matrix_L_via_series,
    matrix_M,
    matrix_X,
    matrix_Y0,
    relation_rows_kappa,
)
from kapparing.ring import RingContext, dimension, reduce
from kapparing.series import F_series, J_closed, J_recursive

RESULTS: list[str] = []


def _diagonal(p: Partition, d: int) -> int:
    if len(p) == d:
        return (-1) ** (d - 1)
    sign = 1
    for part in hat(p):
        sign *= (-1) ** (part - 1)
    return sign * (-1) ** (len(p) - len(hat(p)))


def criterion_golden():
    start = time.perf_counter()
    x, y = matrix_X(6, 0), matrix_Y0(6)
    elapsed = time.perf_counter() - start
    order_ok = [list(p) for p in x.row_index] == ORDER_6 == [list(p) for p in y.col_index]
    mismatches = sum(
        x.rows[i][j] != X6[i][j] or y.rows[i][j] != Y6[i][j] for i in range(10) for j in range(10)
    )
    ok = order_ok and mismatches == 0 and elapsed < 1.0
    return ok, f"200 entries, {mismatches} mismatches, built in {elapsed:.3f}s"


def criterion_product():
    bad = []
    for d in range(2, 11):
        lo = matrix_L0(d)
        if not is_lower_triangular(lo):
            bad.append(d)
            continue
        if any(lo.rows[i][i] != _diagonal(p, d) for i, p in enumerate(lo.row_index)):
            bad.append(d)
    return not bad, "2 <= d <= 10" + (f", failing d={bad}" if bad else "")


def criterion_nonsingular():
    bad = [
        (d, delta)
        for d in range(2, 10)
        for delta in range(0, d - 1)
        if rank(matrix_M(d, delta)) != len(enumerate_P_delta(d, delta))
    ]
    return not bad, "0 <= delta <= d-2, 2 <= d <= 9" + (f", failing {bad}" if bad else "")


def criterion_determinant():
    bad = [d for d in range(2, 9) if determinant_formula(d) != determinant(matrix_X(d, 0))]
    return not bad, "2 <= d <= 8" + (f", failing d={bad}" if bad else "")


def criterion_cross_construction():
    bad = [d for d in range(2, 9) if matrix_L_via_series(d) != matrix_L0(d)]
    return not bad, "2 <= d <= 8" + (f", failing d={bad}" if bad else "")


def _degree_bound_alphas():
    for m in range(1, 4):
        for alpha in product(range(7), repeat=m):
            if sum(alpha) <= 6 and all(a > 0 for a in alpha[1:]):
                yield alpha


def criterion_series():
    failures = []
    if list(F_series((), 20).coeffs) != [1, -1] + [0] * 19:
        failures.append("F_empty")
    count = 0
    for alpha in _degree_bound_alphas():
        count += 1
        bound = 1 + sum(alpha)
        if F_series(alpha, bound + 4).degree() > bound:
            failures.append(f"deg{alpha}")
    for a in range(9):
        k = 1 + a
        if F_series((a,), k).coeff(k) != Fraction((-1) ** a, k * factorial(k)):
            failures.append(f"lead{a}")
    for k in range(1, 11):
        if not J_recursive(k) == J_closed(k) == Fraction(1, k * factorial(k)):
            failures.append(f"J{k}")
    return not failures, f"{count} degree bounds, 9 leading terms, 10 J values" + (
        f", failing {failures}" if failures else ""
    )


def criterion_oracle():
    total, bad = 0, []
    for zeta in (Fraction(1), Fraction(3), Fraction(7, 2)):
        for ell in range(1, 4):
            for e in product(range(9), repeat=ell):
                if sum(e) <= 8:
                    total += 1
                    if psi_pushforward(e, zeta) != oracle_pushforward(e, zeta):
                        bad.append((zeta, e))
    return not bad, f"{total} exponent vectors" + (f", failing {bad[:5]}" if bad else "")


ZETA_CLASSES = {
    3: [(2, 1), (1, 3), (0, 5)],
    4: [(2, 2), (1, 4), (0, 6)],
    5: [(3, 1), (2, 3), (1, 5), (0, 7)],
}


def criterion_zeta_invariance():
    bad = []
    for zeta, pairs in ZETA_CLASSES.items():
        contexts = [RingContext(g, n) for g, n in pairs]
        assert all(ctx.zeta == zeta for ctx in contexts)
        for d in range(1, zeta + 2):
            transforms = [transform_bracket_to_kappa(d, ctx.zeta) for ctx in contexts]
            if any(t != transforms[0] for t in transforms):
                bad.append(("transform", zeta, d))
            for p in enumerate_partitions(d):
                outs = [reduce(ctx, KappaPoly({p: 1}, d, ctx.zeta)).coords for ctx in contexts]
                if any(o != outs[0] for o in outs):
                    bad.append(("reduce", zeta, tuple(p)))
    return not bad, f"zeta in {sorted(ZETA_CLASSES)}" + (f", failing {bad[:5]}" if bad else "")


def criterion_rank_bookkeeping():
    bad = []
    checked = 0
    for zeta in range(3, 9):
        for d in range(1, zeta):
            if 0 <= zeta - 1 - d <= d - 2:
                checked += 1
                corank = len(enumerate_partitions(d)) - relation_rows_kappa(d, zeta).rank()
                if corank != len(enumerate_bounded(d, zeta - d)):
                    bad.append((zeta, d))
    genus0 = 0
    for n in range(3, 11):
        ctx = RingContext(0, n)
        for d in range(0, n + 1):
            genus0 += 1
            want = 1 if d == 0 else len(enumerate_bounded(d, max(n - 2 - d, 0)))
            got = dimension(ctx, d)
            if 0 <= n - 3 - d <= d - 2:
                got_rank = len(enumerate_partitions(d)) - relation_rows_kappa(d, n - 2).rank()
                if got_rank != want:
                    bad.append(("rank", n, d))
            if got != want:
                bad.append(("dim", n, d))
    return not bad, f"{checked} (zeta, d) ranks, {genus0} genus-0 dimensions" + (
        f", failing {bad}" if bad else ""
    )


CRITERIA = [
    ("1 golden X_0(6), Y_0(6)", criterion_golden),
    ("2 product identity", criterion_product),
    ("3 nonsingularity", criterion_nonsingular),
    ("4 determinant formula", criterion_determinant),
    ("5 cross-construction of L", criterion_cross_construction),
    ("6 series identities", criterion_series),
    ("7 push-forward oracle", criterion_oracle),
    ("8 zeta-invariance", criterion_zeta_invariance),
    ("9 dimension and rank bookkeeping", criterion_rank_bookkeeping),
]


def _run(name, check) -> tuple[bool, str]:
    start = time.perf_counter()
    ok, detail = check()
    line = f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail} [{time.perf_counter() - start:.2f}s]"
    return ok, line


@pytest.mark.parametrize("name,check", CRITERIA, ids=[name.split()[0] for name, _ in CRITERIA])
def test_criterion(name, check):
    ok, line = _run(name, check)
    RESULTS.append(line)
    print(line)
    assert ok, line


def main() -> int:
    failed = 0
    for name, check in CRITERIA:
        ok, line = _run(name, check)
        print(line, flush=True)
        failed += not ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
