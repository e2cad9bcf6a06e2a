"""Truncated series in ``Q[t][[x]]`` and the bracket functional.

The variable ``t_j`` only ever appears next to ``x^j``, so a monomial
``t_{d_1} ... t_{d_k}`` (stored as the partition ``(d_1, ..., d_k)``) always
carries the x-power ``d_1 + ... + d_k``.  A series is therefore a map from
partitions to rationals, truncated at total weight ``N``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .linalg import format_rational
from .partitions import EMPTY, Partition


class TruncatedSeries:
    __slots__ = ("order", "terms")

    def __init__(self, terms: Mapping[Partition, Fraction], order: int):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.order = order
        self.terms = {Partition(m): Fraction(c) for m, c in terms.items() if c and sum(m) <= order}

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls({EMPTY: Fraction(1)}, order)

    def coefficients(self) -> dict[tuple[int, Partition], Fraction]:
        """The same data keyed by (x-power, t-monomial)."""
        return {(m.size, m): c for m, c in self.terms.items()}

    def x_coefficient(self, n: int) -> dict[Partition, Fraction]:
        """Coefficient of ``x^n`` as a polynomial in t."""
        if n > self.order:
            raise ValueError(f"x^{n} lies beyond the truncation order {self.order}")
        return {m: c for m, c in self.terms.items() if m.size == n}

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return TruncatedSeries(terms, order)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries({m: c * v for m, v in self.terms.items()}, self.order)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        small, large = sorted((self, other), key=lambda s: len(s.terms))
        out: dict[Partition, Fraction] = {}
        for m1, c1 in small.terms.items():
            w1 = m1.size
            for m2, c2 in large.terms.items():
                if w1 + m2.size > order:
                    continue
                key = Partition.from_parts(m1 + m2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return TruncatedSeries(out, order)

    def bracket(self) -> "BracketedSeries":
        coeffs = [Fraction(0)] * (self.order + 1)
        for m, c in self.terms.items():
            coeffs[m.size] += c * bracket_monomial(m)
        return BracketedSeries(coeffs)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms


class BracketedSeries:
    """Image of a truncated series under the bracket: a list of x-coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Fraction]):
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise ValueError(f"x^{n} lies beyond the truncation order {self.order}")
        return self.coeffs[n]

    def degree(self) -> int:
        """Largest x-power with a nonzero coefficient (-1 for the zero series)."""
        nz = [n for n, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def __eq__(self, other):
        if isinstance(other, BracketedSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self):
        return f"BracketedSeries({[str(c) for c in self.coeffs]})"

    def to_json_obj(self, alpha: Sequence[int] | None = None) -> dict:
        obj: dict = {}
        if alpha is not None:
            obj["alpha"] = list(alpha)
        obj["N"] = self.order
        obj["coefficients"] = {str(n): format_rational(c) for n, c in enumerate(self.coeffs)}
        return obj

    def to_json(self, alpha=None) -> str:
        return json.dumps(self.to_json_obj(alpha), separators=(",", ":"))


def bracket_monomial(m: Iterable[int]) -> Fraction:
    """``<t_{d_1} ... t_{d_k}> = (d_1 + ... + d_k)^(k-3)``, with ``<1> = 1``."""
    m = tuple(m)
    if not m:
        return Fraction(1)
    return Fraction(sum(m)) ** (len(m) - 3)


def Z_series(i: int, order: int) -> TruncatedSeries:
    """``Z_i = sum_{j>0} x^j t_j j^(j-i) / j!`` truncated at ``x^order``."""
    if i < 0:
        raise ValueError("Z index must be non-negative")
    return TruncatedSeries(
        {Partition([j]): Fraction(j) ** (j - i) / factorial(j) for j in range(1, order + 1)},
        order,
    )


def exp_series(s: TruncatedSeries) -> TruncatedSeries:
    """Exponential of a series with no constant term, by the Taylor sum."""
    if EMPTY in s.terms:
        raise ValueError("exp needs a series without constant term")
    out = TruncatedSeries.one(s.order)
    power = TruncatedSeries.one(s.order)
    for k in range(1, s.order + 1):
        power = power * s
        if not power.terms:
            break
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def exp_linear(s: TruncatedSeries) -> TruncatedSeries:
    """Exponential of a series linear in t.

    The variables commute, so ``exp(sum_j c_j t_j x^j)`` factors as
    ``prod_j exp(c_j t_j x^j)``; multiplying the factors in the truncated ring
    avoids the dense powers of the plain Taylor sum.
    """
    if any(len(m) != 1 for m in s.terms):
        raise ValueError("exp_linear needs a series linear in t")
    out = TruncatedSeries.one(s.order)
    for m, c in sorted(s.terms.items()):
        j = m[0]
        factor = {Partition([j] * k): c**k / factorial(k) for k in range(s.order // j + 1)}
        out = out * TruncatedSeries(factor, s.order)
    return out


def check_series_alpha(alpha: Sequence[int]) -> None:
    if any(a < 0 for a in alpha):
        raise ValueError(f"alpha entries must be non-negative: {tuple(alpha)}")
    if any(a == 0 for a in alpha[1:]):
        raise ValueError(f"only the first alpha entry may vanish: {tuple(alpha)}")


@lru_cache(maxsize=None)
def _F_cached(alpha: tuple[int, ...], order: int) -> BracketedSeries:
    series = exp_linear(-Z_series(1, order))
    for a in alpha:
        series = series * Z_series(a, order)
    return series.bracket()


def F_series(alpha: Sequence[int], order: int) -> BracketedSeries:
    """``<exp(-Z_1) Z_{alpha_1} ... Z_{alpha_m}>`` up to ``x^order``.

    The bracket is applied once, after the full product is expanded.
    """
    alpha = tuple(alpha)
    check_series_alpha(alpha)
    if order < 0:
        raise ValueError("order must be non-negative")
    return _F_cached(alpha, order)


def F_coeff(alpha: Sequence[int], n: int) -> Fraction:
    """Coefficient of ``x^n`` in ``F_alpha`` (zero for negative ``n``)."""
    if n < 0:
        return Fraction(0)
    return F_series(alpha, n).coeff(n)


def J_closed(k: int) -> Fraction:
    if k < 1:
        raise ValueError("k must be at least 1")
    return Fraction(1, k * factorial(k))


def J_recursive(k: int) -> Fraction:
    """Solve ``k^2 J_k = (k-1) J_{k-1}`` upward from ``J_1 = 1``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    j = Fraction(1)
    for i in range(2, k + 1):
        j = (i - 1) * j / (i * i)
    return j
