"""Exact rational scalars and fraction-free linear algebra.

Every number in the package is a :class:`fractions.Fraction`.  Determinants
and ranks are computed with Bareiss elimination on an integer copy of the
matrix (rows are cleared of denominators first), so intermediate entries stay
bounded by Hadamard-type estimates instead of growing as nested fractions.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Scalar = Fraction


class DimensionError(ValueError):
    pass


def scalar(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"malformed rational {value!r}") from None
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def scalar_str(x: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when q = 1."""
    return str(x)


def parse_scalar_list(text: str) -> list[Fraction]:
    return [scalar(part) for part in text.split(",") if part.strip()]


class RatMatrix:
    """Immutable rows x cols grid of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(scalar(x) for x in row) for row in entries)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise DimensionError("ragged matrix rows")
        self.entries = grid
        self.rows = len(grid)
        self.cols = cols

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "RatMatrix":
        if not columns:
            return cls([[] for _ in range(rows or 0)], cols=0)
        height = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(height)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries)
        return f"RatMatrix([{body}])"

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.columns(), cols=self.rows)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.columns()
        return RatMatrix(
            [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self.entries],
            cols=other.cols,
        )

    def select_columns(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[row[j] for j in idx] for row in self.entries], cols=len(idx))

    def swap_rows(self, a: int, b: int) -> "RatMatrix":
        rows = list(self.entries)
        rows[a], rows[b] = rows[b], rows[a]
        return RatMatrix(rows, cols=self.cols)


def _integer_rows(entries) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return the rows and the product of the scale factors."""
    out = []
    scale = 1
    for row in entries:
        m = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * m) for x in row])
        scale *= m
    return out, scale


def bareiss_det_int(a: list[list[int]]) -> int:
    """Determinant of a square integer matrix (the list is modified in place)."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def int_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return bareiss_det_int([list(r) for r in rows])


def det(m: RatMatrix) -> Fraction:
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    rows, scale = _integer_rows(m.entries)
    return Fraction(bareiss_det_int(rows), scale)


def det_of(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square list of rows of Fractions (no RatMatrix wrapper)."""
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise DimensionError("determinant of a non-square matrix")
    ints, scale = _integer_rows(rows)
    return Fraction(int_det(ints), scale)


def _bareiss_rank_int(a: list[list[int]]) -> int:
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, n_rows):
            aic = a[i][col]
            row_i, row_r = a[i], a[rank]
            for j in range(col, n_cols):
                row_i[j] = (row_i[j] * p - aic * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _integer_rows(m.entries)
    return _bareiss_rank_int(rows)


def rref(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(row) for row in m.entries]
    pivots = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def nullspace(m: RatMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one tuple per basis vector.

    Vectors are scaled to primitive integer form (as Fractions) with a positive
    leading entry, so the result is canonical for a given matrix.
    """
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -a[row_idx][fc]
        basis.append(primitive(v))
    return basis


def primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a nonzero vector to coprime integers with a positive first nonzero entry."""
    from math import gcd

    den = lcm(*(Fraction(x).denominator for x in v)) if v else 1
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    """True when u = c*v for some nonzero c (both vectors nonzero)."""
    if len(u) != len(v):
        return False
    if not any(u) or not any(v):
        return False
    return primitive(u) == primitive(v)
