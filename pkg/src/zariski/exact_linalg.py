"""Dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` values; floats are
rejected at the boundary so that no rounding can sneak in.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotSymmetric, SingularMatrix

RationalVector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional sign) into a Fraction."""
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in s and int(s.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(s)


def as_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean value {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def to_vector(values: Iterable) -> RationalVector:
    return tuple(as_rational(v) for v in values)


def format_rational(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable row-major matrix of Fractions.

    ``ncols`` is stored explicitly so that matrices with zero rows keep their
    shape.
    """

    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], ncols: int | None = None) -> RationalMatrix:
        data = tuple(to_vector(r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch(f"ragged matrix: expected {ncols} columns, got {len(r)}")
        return cls(data, ncols)

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> RationalMatrix:
        return cls(tuple((Fraction(0),) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> RationalVector:
        return self.rows[i]

    def column(self, j: int) -> RationalVector:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(
            tuple(self.column(j) for j in range(self.ncols)), self.nrows
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> RationalMatrix:
        return RationalMatrix(
            tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx), len(col_idx)
        )

    def principal(self, indices: Sequence[int]) -> RationalMatrix:
        return self.submatrix(indices, indices)

    def leading(self, k: int) -> RationalMatrix:
        return self.principal(range(k))

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = self.nrows
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def apply(self, v: Sequence[Fraction]) -> RationalVector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} against {self.ncols} columns")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            return RationalMatrix(
                tuple(
                    tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
                    for r in self.rows
                ),
                other.ncols,
            )
        return self.apply(to_vector(other))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=0)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def _require_square(a: RationalMatrix) -> int:
    if not a.is_square():
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a.nrows


def _gauss_jordan(a: RationalMatrix, rhs: list[list[Fraction]]) -> list[list[Fraction]]:
    """Reduce ``[a | rhs]`` to ``[I | x]`` in place and return ``x``."""
    n = _require_square(a)
    m = [list(r) for r in a.rows]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix is singular")
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        rhs[col] = [x * inv for x in rhs[col]]
        for r in range(n):
            f = m[r][col]
            if r != col and f != 0:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
                rhs[r] = [x - f * y for x, y in zip(rhs[r], rhs[col])]
    return rhs


def solve_linear_system(a: RationalMatrix, b: Sequence) -> RationalVector:
    """Return the unique ``x`` with ``a @ x == b``."""
    n = _require_square(a)
    b = to_vector(b)
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, expected {n}")
    x = _gauss_jordan(a, [[bi] for bi in b])
    return tuple(r[0] for r in x)


def invert(a: RationalMatrix) -> RationalMatrix:
    n = _require_square(a)
    x = _gauss_jordan(a, [list(r) for r in RationalMatrix.identity(n).rows])
    return RationalMatrix(tuple(tuple(r) for r in x), n)


def _integer_rows(a: RationalMatrix) -> tuple[list[list[int]], int]:
    """Scale every row to integers; return the rows and the product of scales."""
    rows = []
    scale = 1
    for r in a.rows:
        s = math.lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * s) for x in r])
        scale *= s
    return rows, scale


def determinant(a: RationalMatrix) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = _require_square(a)
    if n == 0:
        return Fraction(1)
    m, scale = _integer_rows(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1], scale)


def leading_principal_minors(a: RationalMatrix) -> list[Fraction]:
    """Determinants of the leading 1x1, 2x2, ... blocks of ``a``."""
    n = _require_square(a)
    return [determinant(a.leading(k)) for k in range(1, n + 1)]


def is_negative_definite(a: RationalMatrix) -> bool:
    """Sylvester's criterion: the k-th leading minor must have sign (-1)^k.

    Uses Bareiss elimination without pivoting, whose k-th pivot is exactly the
    k-th leading minor (up to the positive row scaling), and stops at the first
    minor with the wrong sign. The 0x0 matrix counts as negative definite.
    """
    if not a.is_symmetric():
        raise NotSymmetric("negative definiteness needs a symmetric matrix")
    n = a.nrows
    m, _ = _integer_rows(a)
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        if pivot == 0 or (pivot > 0) != (k % 2 == 1):
            return False
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return True
