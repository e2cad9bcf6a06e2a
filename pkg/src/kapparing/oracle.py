"""Independent push-forward of psi monomials, one forgotten point at a time.

Used only by the test suite and the ``verify --suite oracle`` command; the
production path in :mod:`kapparing.kappa` never imports it.

Forgetting the last of ``k`` extra points, ``pi: M_{g,n+k} -> M_{g,n+k-1}``:

* ``psi_j = pi^* psi_j + D_j`` with ``psi_j . D_j = 0``, so
  ``psi_j^e = pi^* psi_j^e + pi^* psi_j^(e-1) . D_j`` for ``e >= 1``;
* ``kappa_b = pi^* kappa_b + psi_k^b`` for ``b >= 1``;
* ``psi_k . D_j = 0`` and ``D_i . D_j = 0`` for ``i != j``;
* ``pi_*(psi_k^s) = kappa_{s-1}`` with ``kappa_{-1} = 0`` and ``kappa_0`` the
  Euler characteristic ``zeta + k - 1`` of the target; ``pi_*(D_j) = 1``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from math import comb
from typing import Sequence

from .kappa import KappaPoly
from .linalg import as_fraction
from .partitions import Partition

MAX_POINTS = 3
MAX_EXPONENT_SUM = 8


def _split_kappa(kappa: Partition):
    """Yield (pulled-back monomial, total psi_k exponent, multiplicity)."""
    counts = Counter(kappa)
    values = sorted(counts)
    for take in product(*(range(counts[v] + 1) for v in values)):
        mult = 1
        s = 0
        kept: list[int] = []
        for v, t in zip(values, take):
            mult *= comb(counts[v], t)
            s += v * t
            kept.extend([v] * (counts[v] - t))
        yield Partition.from_parts(kept), s, mult


def _forget_last(state: dict, zeta_low: Fraction) -> dict:
    out: dict = {}

    def add(key, c):
        v = out.get(key, Fraction(0)) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for (e, kappa), c in state.items():
        s0, rest = e[-1], e[:-1]
        for kept, s_kappa, mult in _split_kappa(kappa):
            s = s0 + s_kappa
            coeff = c * mult
            if s >= 1:
                if s == 1:
                    add((rest, kept), coeff * zeta_low)
                else:
                    add((rest, Partition.from_parts(kept + (s - 1,))), coeff)
            else:
                for j, ej in enumerate(rest):
                    if ej >= 1:
                        lowered = rest[:j] + (ej - 1,) + rest[j + 1 :]
                        add((lowered, kept), coeff)
    return out


def oracle_pushforward(e: Sequence[int], zeta) -> KappaPoly:
    if any(x < 0 for x in e):
        raise ValueError(f"psi exponents must be non-negative: {tuple(e)}")
    if len(e) > MAX_POINTS or sum(e) > MAX_EXPONENT_SUM:
        raise ValueError(f"oracle limited to <= {MAX_POINTS} points and exponent sum <= {MAX_EXPONENT_SUM}")
    zeta = as_fraction(zeta)
    state = {(tuple(e), Partition()): Fraction(1)}
    for k in range(len(e), 0, -1):
        state = _forget_last(state, zeta + k - 1)
    terms = {kappa: c for ((_, kappa), c) in state.items()}
    return KappaPoly(terms, sum(e) - len(e), zeta)
