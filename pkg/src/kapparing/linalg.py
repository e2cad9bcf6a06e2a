"""Dense matrices over Q, labelled by partitions.

Entries are ``fractions.Fraction`` (always in lowest terms).  Rows and columns
carry partition labels so triangularity is always judged against the
canonical partition order.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence

from .partitions import Partition


class SingularMatrixError(ArithmeticError):
    """Raised when a matrix that must be invertible is not."""


class DimensionError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def partition_label(p: Sequence[int]) -> str:
    return json.dumps(list(p), separators=(",", ":"))


class RationalMatrix:
    """Immutable dense matrix of rationals with partition-labelled axes."""

    __slots__ = ("rows", "row_index", "col_index", "kind", "d", "delta")

    def __init__(self, rows, row_index=None, col_index=None, *, kind=None, d=None, delta=None):
        rows = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        nrows = len(rows)
        ncols = len(rows[0]) if rows else (len(col_index) if col_index is not None else 0)
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        if row_index is None:
            row_index = [Partition([i + 1]) for i in range(nrows)]
        if col_index is None:
            col_index = [Partition([j + 1]) for j in range(ncols)]
        row_index = tuple(Partition(p) for p in row_index)
        col_index = tuple(Partition(p) for p in col_index)
        if len(row_index) != nrows or len(col_index) != ncols:
            raise DimensionError("index length does not match matrix shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "row_index", row_index)
        object.__setattr__(self, "col_index", col_index)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "delta", delta)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def identity(cls, index: Sequence[Sequence[int]]) -> "RationalMatrix":
        n = len(index)
        rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return cls(rows, index, index)

    @classmethod
    def zeros(cls, row_index, col_index) -> "RationalMatrix":
        return cls([[Fraction(0)] * len(col_index) for _ in row_index], row_index, col_index)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_index), len(self.col_index)

    @property
    def nrows(self) -> int:
        return len(self.row_index)

    @property
    def ncols(self) -> int:
        return len(self.col_index)

    def __getitem__(self, key):
        i, j = key
        if not isinstance(i, int):
            i = self.row_index.index(Partition(i))
        if not isinstance(j, int):
            j = self.col_index.index(Partition(j))
        return self.rows[i][j]

    def row(self, p) -> tuple[Fraction, ...]:
        return self.rows[self.row_index.index(Partition(p))]

    def column(self, q) -> tuple[Fraction, ...]:
        j = self.col_index.index(Partition(q))
        return tuple(r[j] for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.row_index == other.row_index
            and self.col_index == other.col_index
        )

    def __hash__(self):
        return hash((self.rows, self.row_index, self.col_index))

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols}, kind={self.kind!r}, d={self.d!r})"

    def __str__(self):
        cells = [[_short(x) for x in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return multiply(self, other)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)) if self.rows else [], self.col_index, self.row_index)

    def submatrix(self, rows: Iterable, cols: Iterable) -> "RationalMatrix":
        rows = [Partition(p) for p in rows]
        cols = [Partition(q) for q in cols]
        ri = [self.row_index.index(p) for p in rows]
        ci = [self.col_index.index(q) for q in cols]
        return RationalMatrix([[self.rows[i][j] for j in ci] for i in ri], rows, cols)

    def scale_columns(self, factors: Sequence[Fraction]) -> "RationalMatrix":
        return RationalMatrix(
            [[x * f for x, f in zip(r, factors)] for r in self.rows],
            self.row_index,
            self.col_index,
        )

    def diagonal(self) -> tuple[Fraction, ...]:
        _require_square(self)
        return tuple(self.rows[i][i] for i in range(self.nrows))

    def with_meta(self, kind=None, d=None, delta=None) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.row_index, self.col_index, kind=kind, d=d, delta=delta)

    # serialisation

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "d": self.d,
            "delta": self.delta,
            "order": [list(p) for p in self.row_index],
            "columns": [list(q) for q in self.col_index],
            "entries": [[format_rational(x) for x in r] for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RationalMatrix":
        rows = [[parse_rational(s) for s in r] for r in obj["entries"]]
        order = obj["order"]
        cols = obj.get("columns", order)
        return cls(rows, order, cols, kind=obj.get("kind"), d=obj.get("d"), delta=obj.get("delta"))

    @classmethod
    def from_json(cls, text: str) -> "RationalMatrix":
        return cls.from_json_obj(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + [partition_label(q) for q in self.col_index])
        for p, r in zip(self.row_index, self.rows):
            writer.writerow([partition_label(p)] + [format_rational(x) for x in r])
        return buf.getvalue()


def _short(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _require_square(m: RationalMatrix) -> None:
    if m.nrows != m.ncols:
        raise DimensionError(f"square matrix required, got {m.nrows}x{m.ncols}")


def multiply(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.ncols != b.nrows or a.col_index != b.row_index:
        raise DimensionError("inner dimensions or index sets do not match")
    cols = list(zip(*b.rows)) if b.rows else [() for _ in b.col_index]
    rows = []
    for r in a.rows:
        nz = [(k, x) for k, x in enumerate(r) if x]
        rows.append([sum((x * c[k] for k, x in nz), Fraction(0)) for c in cols])
    return RationalMatrix(rows, a.row_index, b.col_index)


def _echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int], int]:
    """Row-reduce a private copy in place; returns (rows, pivot columns, swaps)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            swaps += 1
        prow = rows[r]
        inv = 1 / prow[c]
        for i in range(r + 1, nrows):
            f = rows[i][c]
            if f:
                f *= inv
                row = rows[i]
                for k in range(c, ncols):
                    if prow[k]:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return rows, pivots, swaps


def rank(m: RationalMatrix) -> int:
    _, pivots, _ = _echelon([list(r) for r in m.rows])
    return len(pivots)


def determinant(m: RationalMatrix) -> Fraction:
    _require_square(m)
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows, pivots, swaps = _echelon([list(r) for r in m.rows])
    if len(pivots) < n:
        return Fraction(0)
    det = Fraction(-1 if swaps % 2 else 1)
    for i in range(n):
        det *= rows[i][i]
    return det


def is_lower_triangular(m: RationalMatrix) -> bool:
    _require_square(m)
    return all(not m.rows[i][j] for i in range(m.nrows) for j in range(i + 1, m.ncols))


def is_upper_triangular(m: RationalMatrix) -> bool:
    _require_square(m)
    return all(not m.rows[i][j] for i in range(m.nrows) for j in range(i))


def solve(a: RationalMatrix, b: Sequence) -> list[Fraction]:
    """Exact solution of ``a x = b``; raises SingularMatrixError if ``a`` is singular."""
    _require_square(a)
    n = a.nrows
    if len(b) != n:
        raise DimensionError("right-hand side has the wrong length")
    aug = [list(r) + [as_fraction(v)] for r, v in zip(a.rows, b)]
    rows, pivots, _ = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = rows[i][n] - sum((rows[i][k] * x[k] for k in range(i + 1, n)), Fraction(0))
        x[i] = s / rows[i][i]
    return x


def inverse(a: RationalMatrix) -> RationalMatrix:
    _require_square(a)
    n = a.nrows
    cols = [solve(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return RationalMatrix([[cols[j][i] for j in range(n)] for i in range(n)], a.col_index, a.row_index)
