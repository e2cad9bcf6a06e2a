"""Integer partitions and the canonical ordering used to index every matrix.

Partitions are immutable tuples of weakly decreasing positive integers.  The
ordering puts longer partitions first and breaks ties lexicographically with
larger parts first, so for d = 6 the partitions of length >= 2 read

    (1^6), (2,1^4), (3,1^3), (2^2,1^2), (4,1^2), (3,2,1), (2^3), (5,1), (4,2), (3,3)
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Comparison operators implement the canonical order, not tuple order.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts in any order; zeros are rejected."""
        return cls(sorted(parts, reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __le__(self, other):
        return sort_key(self) <= sort_key(other)

    def __gt__(self, other):
        return sort_key(self) > sort_key(other)

    def __ge__(self, other):
        return sort_key(self) >= sort_key(other)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        if not self:
            return "()"
        chunks = []
        for value, mult in sorted(Counter(self).items(), reverse=True):
            chunks.append(str(value) if mult == 1 else f"{value}^{mult}")
        return "(" + ",".join(chunks) + ")"


EMPTY = Partition()


def sort_key(p: Sequence[int]) -> tuple:
    """Key realising the canonical order: longer first, then larger parts first."""
    return (-len(p), tuple(-x for x in p))


def sort_partitions(parts: Iterable[Sequence[int]]) -> list[Partition]:
    return sorted((Partition(p) for p in parts), key=sort_key)


def _generate(d: int, largest: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _generate(d - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_partitions(d: int) -> tuple[Partition, ...]:
    """All partitions of ``d`` in canonical order."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return tuple(sort_partitions(_generate(d, d)))


def enumerate_bounded(d: int, k: int) -> tuple[Partition, ...]:
    """Partitions of ``d`` with at most ``k`` parts, canonical order."""
    if d < 0 or k < 0:
        raise ValueError("d and k must be non-negative")
    return tuple(p for p in enumerate_partitions(d) if len(p) <= k)


def enumerate_P_delta(d: int, delta: int) -> tuple[Partition, ...]:
    """Partitions of ``d`` of length at least ``delta + 2``."""
    if not 0 <= delta <= d - 2:
        raise ValueError(f"delta must lie in [0, d-2]; got d={d}, delta={delta}")
    return tuple(p for p in enumerate_partitions(d) if len(p) >= delta + 2)


def aut_order(p: Sequence[int]) -> int:
    """Order of the group permuting equal parts."""
    out = 1
    for mult in Counter(p).values():
        out *= factorial(mult)
    return out


def hat(p: Sequence[int]) -> Partition:
    """Drop all parts equal to 1."""
    return Partition(x for x in p if x != 1)


def minus(p: Sequence[int]) -> Partition:
    """Lower every part by 1 and discard the zeros."""
    return Partition(x - 1 for x in p if x > 1)


def is_all_ones(p: Sequence[int]) -> bool:
    return len(p) > 0 and all(x == 1 for x in p)


def check_alpha(alpha: Sequence[int], d: int, delta: int) -> None:
    """Raise ``ValueError`` unless ``alpha`` is admissible for ``(d, delta)``.

    Admissible means non-empty, non-negative, ``sum(alpha) <= d - 2 - delta``
    and every entry after the first strictly positive.
    """
    if not alpha:
        raise ValueError("alpha must be non-empty")
    if any(a < 0 for a in alpha):
        raise ValueError(f"alpha entries must be non-negative: {tuple(alpha)}")
    if sum(alpha) > d - 2 - delta:
        raise ValueError(f"|alpha| = {sum(alpha)} exceeds d - 2 - delta = {d - 2 - delta}")
    if any(a == 0 for a in alpha[1:]):
        raise ValueError(f"only the first alpha entry may vanish: {tuple(alpha)}")


def alpha_of(p: Sequence[int], d: int, delta: int) -> tuple[int, ...]:
    """The row vector assigned to ``p``: ``(0)`` for ``(1^d)``, else ``p^-``."""
    p = Partition(p)
    if p.size != d or len(p) < delta + 2 or not 0 <= delta <= d - 2:
        raise ValueError(f"{p} is not in P_{delta}({d})")
    alpha = (0,) if is_all_ones(p) else tuple(minus(p))
    check_alpha(alpha, d, delta)
    return alpha


def admissible_alphas(d: int, delta: int) -> list[tuple[int, ...]]:
    """Every admissible alpha up to reordering of the positive entries.

    At most one zero is allowed and it must come first, so each class is a
    partition of some ``s <= d - 2 - delta``, optionally preceded by a 0.
    """
    bound = d - 2 - delta
    out: list[tuple[int, ...]] = []
    for s in range(bound + 1):
        for q in enumerate_partitions(s):
            if q:
                out.append(tuple(q))
            out.append((0,) + tuple(q))
    return out
