"""Kappa rings of curves of compact type: dimensions, bases and reduction.

For ``n >= 1`` the monomials ``kappa_p`` with ``p`` of at most
``zeta - d`` parts form a basis in degree ``d``, where ``zeta = 2g - 2 + n``.
Every other monomial is rewritten in that basis using the stable-map
relations, which in kappa coordinates depend on ``(g, n)`` only through zeta.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .kappa import KappaPoly
from .linalg import SingularMatrixError, format_rational, partition_label, solve
from .partitions import EMPTY, Partition, enumerate_bounded, enumerate_partitions
from .relations import relation_rows_kappa


class ReductionError(RuntimeError):
    """The relations failed to eliminate a non-basis monomial."""


@dataclass(frozen=True)
class RingContext:
    g: int
    n: int

    def __post_init__(self):
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if self.n < 1:
            raise ValueError("only n >= 1 is supported")
        if 2 * self.g - 2 + self.n <= 0:
            raise ValueError(f"(g, n) = ({self.g}, {self.n}) is not stable")

    @property
    def zeta(self) -> int:
        return 2 * self.g - 2 + self.n


@dataclass(frozen=True)
class BasisExpression:
    g: int
    n: int
    d: int
    coords: dict = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(self.coords.values())

    def to_json_obj(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "d": self.d,
            "coords": {partition_label(p): format_rational(c) for p, c in self.coords.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def dimension(ctx: RingContext, d: int) -> int:
    if d < 0:
        raise ValueError("degree must be non-negative")
    return len(canonical_basis(ctx, d))


def canonical_basis(ctx: RingContext, d: int) -> tuple[Partition, ...]:
    if d == 0:
        return (EMPTY,)
    return enumerate_bounded(d, max(ctx.zeta - d, 0))


@lru_cache(maxsize=None)
def _rewrite_table(d: int, zeta: int) -> dict[Partition, tuple[Fraction, ...]]:
    """Each non-basis monomial expressed in the canonical basis."""
    basis = enumerate_bounded(d, zeta - d)
    nonbasis = [p for p in enumerate_partitions(d) if p not in set(basis)]
    system = relation_rows_kappa(d, zeta)
    if system.is_empty():
        raise ReductionError(f"no relations available at d={d}, zeta={zeta}")
    rel = system.matrix
    r_nb = rel.submatrix(rel.row_index, nonbasis)
    r_b = rel.submatrix(rel.row_index, basis)
    if r_nb.nrows != r_nb.ncols:
        raise ReductionError("relation count does not match the number of non-basis monomials")
    r_nb_t = r_nb.transpose()
    table = {}
    for k, p in enumerate(nonbasis):
        unit = [Fraction(int(i == k)) for i in range(len(nonbasis))]
        try:
            lam = solve(r_nb_t, unit)
        except SingularMatrixError as exc:
            raise ReductionError(f"relations do not eliminate kappa_{list(p)}") from exc
        # kappa_p - sum_r lam_r * relation_r has no non-basis terms left
        table[p] = tuple(
            -sum((lam[r] * r_b.rows[r][j] for r in range(len(lam))), Fraction(0))
            for j in range(len(basis))
        )
    return table


def reduce(ctx: RingContext, f: KappaPoly) -> BasisExpression:
    """Coordinates of ``f`` in the canonical basis of degree ``f.degree``."""
    if f.zeta != ctx.zeta:
        raise ValueError(f"class has zeta={f.zeta} but the ring has zeta={ctx.zeta}")
    d = f.degree
    basis = canonical_basis(ctx, d)
    full = enumerate_partitions(d) if d >= 0 else ()
    if f.is_zero():
        return BasisExpression(ctx.g, ctx.n, d, {p: Fraction(0) for p in basis})
    if len(basis) == len(full):
        return BasisExpression(ctx.g, ctx.n, d, dict(zip(basis, f.vector(basis))))
    if not basis:
        # zeta <= d: the basis statement gives dimension zero
        return BasisExpression(ctx.g, ctx.n, d, {})
    table = _rewrite_table(d, ctx.zeta)
    coords = {p: f.coefficient(p) for p in basis}
    for p, c in f.terms.items():
        if p in table:
            for q, x in zip(basis, table[p]):
                coords[q] += c * x
    return BasisExpression(ctx.g, ctx.n, d, coords)


def is_zero(ctx: RingContext, f: KappaPoly) -> bool:
    return reduce(ctx, f).is_zero()


def kappa_product(f: KappaPoly, h: KappaPoly) -> KappaPoly:
    if f.zeta != h.zeta:
        raise ValueError("cannot multiply classes with different zeta")
    terms: dict[Partition, Fraction] = {}
    for p, a in f.terms.items():
        for q, b in h.terms.items():
            key = Partition.from_parts(p + q)
            terms[key] = terms.get(key, Fraction(0)) + a * b
    return KappaPoly(terms, f.degree + h.degree, f.zeta)


def kappa_class(terms: Mapping[Iterable[int], object], zeta) -> KappaPoly:
    """Build a class from ``{(i_1, ..., i_k): coefficient}`` meaning
    ``coefficient * kappa_{i_1} ... kappa_{i_k}``; zero indices become zeta."""
    zeta = Fraction(zeta)
    out: dict[Partition, Fraction] = {}
    degree = None
    for idx, c in terms.items():
        idx = tuple(idx)
        c = Fraction(c) * zeta ** sum(1 for i in idx if i == 0)
        key = Partition.from_parts(i for i in idx if i)
        degree = key.size if degree is None else degree
        out[key] = out.get(key, Fraction(0)) + c
    return KappaPoly(out, degree, zeta)


def universality_check(f: KappaPoly, g: int, n: int) -> dict:
    """Compare vanishing on ``M^c_{g,n}`` with vanishing on ``M^c_{0,2g+n}``."""
    ctx = RingContext(g, n)
    genus0 = RingContext(0, 2 * g + n)
    higher = is_zero(ctx, f)
    base = is_zero(genus0, f)
    return {
        "g": g,
        "n": n,
        "genus0_n": 2 * g + n,
        "zeta": ctx.zeta,
        "zero_in_genus_g": higher,
        "zero_in_genus_0": base,
        "consistent": higher == base,
        "reason": "both rings have the same zeta and reduction depends on (g, n) only through zeta",
    }
