"""Push-forwards of psi monomials and bracket classes in kappa coordinates.

Everything is evaluated on the base space with ``kappa_0`` replaced by the
rational ``zeta = 2g - 2 + n``.  A class of degree ``d`` is a ``KappaPoly``:
a map from partitions of ``d`` to rationals, the key ``p`` standing for the
monomial ``kappa_{p_1} ... kappa_{p_l}``.
"""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .linalg import RationalMatrix, SingularMatrixError, as_fraction, format_rational, partition_label, rank
from .partitions import EMPTY, Partition, enumerate_partitions, sort_key


class KappaPoly:
    """Homogeneous exact-rational combination of kappa monomials."""

    __slots__ = ("terms", "degree", "zeta")

    def __init__(self, terms: Mapping | None = None, degree: int | None = None, zeta=0):
        clean: dict[Partition, Fraction] = {}
        for key, c in (terms or {}).items():
            c = as_fraction(c)
            if not c:
                continue
            key = Partition.from_parts(key)
            clean[key] = clean.get(key, Fraction(0)) + c
        clean = {k: v for k, v in clean.items() if v}
        sizes = {k.size for k in clean}
        if degree is None:
            if len(sizes) > 1:
                raise ValueError(f"inhomogeneous kappa polynomial: degrees {sorted(sizes)}")
            degree = sizes.pop() if sizes else 0
        elif sizes - {degree}:
            raise ValueError(f"terms of degree {sorted(sizes)} in a degree-{degree} class")
        self.terms = dict(sorted(clean.items(), key=lambda kv: sort_key(kv[0])))
        self.degree = degree
        self.zeta = as_fraction(zeta)

    @classmethod
    def zero(cls, degree: int, zeta) -> "KappaPoly":
        return cls({}, degree, zeta)

    @classmethod
    def monomial(cls, p: Iterable[int], zeta, coeff=1) -> "KappaPoly":
        p = Partition.from_parts(p)
        return cls({p: coeff}, p.size, zeta)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, p) -> Fraction:
        return self.terms.get(Partition.from_parts(p), Fraction(0))

    def _check(self, other: "KappaPoly") -> None:
        if self.zeta != other.zeta:
            raise ValueError(f"zeta mismatch: {self.zeta} vs {other.zeta}")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "KappaPoly") -> "KappaPoly":
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        degree = self.degree if self.terms or not other.terms else other.degree
        return KappaPoly(terms, degree, self.zeta)

    def __neg__(self) -> "KappaPoly":
        return self.scale(-1)

    def __sub__(self, other: "KappaPoly") -> "KappaPoly":
        return self + (-other)

    def scale(self, c) -> "KappaPoly":
        c = as_fraction(c)
        return KappaPoly({k: c * v for k, v in self.terms.items()}, self.degree, self.zeta)

    def __rmul__(self, c) -> "KappaPoly":
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, KappaPoly):
            return NotImplemented
        return self.terms == other.terms and self.zeta == other.zeta and (
            self.degree == other.degree or not self.terms
        )

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.zeta))

    def __repr__(self):
        if not self.terms:
            return f"KappaPoly(0, degree={self.degree}, zeta={self.zeta})"
        body = " + ".join(f"{c}*k{list(p)}" for p, c in self.terms.items())
        return f"KappaPoly({body}, zeta={self.zeta})"

    def vector(self, basis: Sequence[Partition]) -> list[Fraction]:
        extra = set(self.terms) - set(basis)
        if extra:
            raise ValueError(f"terms outside the coordinate basis: {sorted(extra)}")
        return [self.terms.get(p, Fraction(0)) for p in basis]

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "zeta": format_rational(self.zeta),
            "terms": {partition_label(p): format_rational(c) for p, c in self.terms.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "KappaPoly":
        terms = {tuple(json.loads(k)): v for k, v in obj["terms"].items()}
        return cls(terms, obj.get("degree"), obj.get("zeta", 0))


def _add_into(acc: dict, key: Partition, c: Fraction) -> None:
    v = acc.get(key, Fraction(0)) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# Faber's formula


@lru_cache(maxsize=None)
def _cycle_sums(a: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Multiset of cycle sums over the symmetric group acting on ``a``.

    Returns pairs (sorted tuple of cycle sums, number of permutations).  The
    cycle through the first element is chosen as a subset S of the others
    together with one of (|S|)! cyclic arrangements; the rest recurses.
    """
    if not a:
        return (((), 1),)
    first, rest = a[0], a[1:]
    acc: Counter = Counter()
    counts = Counter(rest)
    values = sorted(counts)
    for take in product(*(range(counts[v] + 1) for v in values)):
        ways = 1
        s = first
        size = 0
        remaining: list[int] = []
        for v, t in zip(values, take):
            ways *= comb(counts[v], t)
            s += v * t
            size += t
            remaining.extend([v] * (counts[v] - t))
        ways *= factorial(size)
        for sums, n in _cycle_sums(tuple(sorted(remaining, reverse=True))):
            acc[tuple(sorted(sums + (s,), reverse=True))] += ways * n
    return tuple(sorted(acc.items()))


def faber_pushforward(a: Sequence[int], zeta) -> KappaPoly:
    """Push forward ``prod psi_{n+i}^{1+a_i}`` over the last ``len(a)`` points.

    Sum over permutations sigma of ``kappa_{sigma(a)}``, where each cycle of
    sigma contributes ``kappa`` of the sum of its entries; a zero cycle sum
    contributes the scalar ``zeta``.
    """
    if any(x < 0 for x in a):
        raise ValueError(f"exponent offsets must be non-negative: {tuple(a)}")
    zeta = as_fraction(zeta)
    key = tuple(sorted(a, reverse=True))
    terms: dict[Partition, Fraction] = {}
    for sums, n in _cycle_sums(key):
        zeros = sum(1 for s in sums if s == 0)
        coeff = n * zeta**zeros
        if coeff:
            _add_into(terms, Partition(s for s in sums if s), coeff)
    return KappaPoly(terms, sum(a), zeta)


# psi monomials with string and dilation


@lru_cache(maxsize=None)
def _psi_pushforward_cached(e: tuple[int, ...], zeta: Fraction) -> tuple[tuple[Partition, Fraction], ...]:
    if not e:
        return ((EMPTY, Fraction(1)),)
    if sum(e) < len(e):
        return ()
    if 0 in e:
        if len(e) == 1:
            return ()
        i = e.index(0)
        rest = e[:i] + e[i + 1 :]
        acc: dict[Partition, Fraction] = {}
        for j, ej in enumerate(rest):
            if ej >= 1:
                lowered = tuple(sorted(rest[:j] + (ej - 1,) + rest[j + 1 :], reverse=True))
                for p, c in _psi_pushforward_cached(lowered, zeta):
                    _add_into(acc, p, c)
        return tuple(acc.items())
    return tuple(faber_pushforward([x - 1 for x in e], zeta).terms.items())


def psi_pushforward(e: Sequence[int], zeta) -> KappaPoly:
    """Push forward ``prod psi_{n+i}^{e_i}``, removing zero exponents by the
    string equation and then applying Faber's formula."""
    if any(x < 0 for x in e):
        raise ValueError(f"psi exponents must be non-negative: {tuple(e)}")
    zeta = as_fraction(zeta)
    key = tuple(sorted(e, reverse=True))
    return KappaPoly(dict(_psi_pushforward_cached(key, zeta)), sum(e) - len(e), zeta)


# bracket classes


def _exponent_multisets(count: int, total: int, largest: int | None = None):
    """Weakly decreasing tuples of ``count`` non-negative ints summing to ``total``."""
    if largest is None:
        largest = total
    if count == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * count < total:
            break
        for rest in _exponent_multisets(count - 1, total - first, first):
            yield (first,) + rest


def _arrangements(ms: tuple[int, ...]) -> int:
    out = factorial(len(ms))
    for m in Counter(ms).values():
        out //= factorial(m)
    return out


@lru_cache(maxsize=None)
def _bracket_cached(p: Partition, zeta: Fraction) -> tuple[tuple[Partition, Fraction], ...]:
    d, ell = p.size, len(p)
    groups = sorted(Counter(p).items(), reverse=True)
    # equal parts are interchangeable, so each group of equal parts takes an
    # exponent multiset weighted by its number of arrangements
    acc: dict[Partition, Fraction] = {}
    target = ell + d

    def rec(gi: int, remaining: int, chosen: tuple[int, ...], weight: int):
        if gi == len(groups):
            if remaining == 0:
                key = tuple(sorted(chosen, reverse=True))
                for q, c in _psi_pushforward_cached(key, zeta):
                    _add_into(acc, q, weight * c)
            return
        value, mult = groups[gi]
        last = gi == len(groups) - 1
        for s in ([remaining] if last else range(remaining + 1)):
            for ms in _exponent_multisets(mult, s):
                rec(gi + 1, remaining - s, chosen + ms, weight * _arrangements(ms) * value**s)

    rec(0, target, (), 1)
    return tuple(acc.items())


def bracket_class(p: Sequence[int], zeta) -> KappaPoly:
    """The degree-``d`` part of the push-forward of ``prod 1/(1 - p_i psi_{n+i})``.

    Expanded as the sum over exponent vectors with ``sum(e) = len(p) + d`` of
    ``prod p_i^{e_i}`` times the push-forward of ``prod psi^{e_i}``.
    """
    p = Partition.from_parts(p)
    if not p:
        raise ValueError("bracket classes need a non-empty partition")
    zeta = as_fraction(zeta)
    return KappaPoly(dict(_bracket_cached(p, zeta)), p.size, zeta)


# change-of-basis matrices


def transform_psi_to_kappa(d: int) -> RationalMatrix:
    """Row ``p``: push-forward of ``prod psi^{1+p_i}`` in kappa coordinates.

    Independent of zeta because no zero cycle sum can occur.
    """
    if d < 1:
        raise ValueError("d must be positive")
    basis = enumerate_partitions(d)
    rows = [faber_pushforward(p, 0).vector(basis) for p in basis]
    return RationalMatrix(rows, basis, basis, kind="psi_to_kappa", d=d)


def transform_bracket_to_kappa(d: int, zeta, check: bool = True) -> RationalMatrix:
    """Row ``p``: the bracket class of ``p`` in kappa coordinates.

    With ``check`` set, a singular result raises ``SingularMatrixError``.
    """
    if d < 1:
        raise ValueError("d must be positive")
    basis = enumerate_partitions(d)
    rows = [bracket_class(p, zeta).vector(basis) for p in basis]
    m = RationalMatrix(rows, basis, basis, kind="bracket_to_kappa", d=d)
    if check and rank(m) < len(basis):
        raise SingularMatrixError(f"bracket transform is singular at d={d}, zeta={zeta}")
    return m
