"""Dense immutable matrices over Q(i).

A matrix is stored as two flat row-major tuples of Python ints (real and
imaginary numerators) over one shared positive denominator, reduced so the
gcd of everything is 1.  That representation is canonical, so equality and
hashing are plain tuple comparisons, and products stay in integer
arithmetic until the final gcd reduction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from operator import mul
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, NotSquare
from .scalar import Scalar


class Matrix:
    __slots__ = ("rows", "cols", "_re", "_im", "_den", "_hash")

    def __init__(self, entries: Iterable[Iterable]):
        grid = [list(row) for row in entries]
        if not grid or not grid[0]:
            raise DimensionMismatch("a matrix needs at least one row and one column")
        cols = len(grid[0])
        for i, row in enumerate(grid):
            if len(row) != cols:
                raise DimensionMismatch(f"row {i} has {len(row)} entries, expected {cols}")
        flat = [Scalar.coerce(x) for row in grid for x in row]
        den = lcm(*(s.re.denominator for s in flat), *(s.im.denominator for s in flat))
        re = [s.re.numerator * (den // s.re.denominator) for s in flat]
        im = [s.im.numerator * (den // s.im.denominator) for s in flat]
        self._init(len(grid), cols, re, im, den)

    def _init(self, rows, cols, re, im, den):
        if im is not None and not any(im):
            im = None
        g = gcd(den, *re, *(im or ()))
        if g != 1:
            den //= g
            re = [x // g for x in re]
            if im is not None:
                im = [x // g for x in im]
        s = object.__setattr__
        s(self, "rows", rows)
        s(self, "cols", cols)
        s(self, "_re", tuple(re))
        s(self, "_im", None if im is None else tuple(im))
        s(self, "_den", den)
        s(self, "_hash", None)

    @classmethod
    def _raw(cls, rows, cols, re, im, den) -> "Matrix":
        m = cls.__new__(cls)
        m._init(rows, cols, re, im, den)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (Matrix._raw, (self.rows, self.cols, self._re, self._im, self._den))

    # construction helpers

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        if n < 1:
            raise DimensionMismatch("identity needs n >= 1")
        return cls._raw(n, n, [int(i == j) for i in range(n) for j in range(n)], None, 1)

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        if rows < 1 or cols < 1:
            raise DimensionMismatch("zero matrix needs positive dimensions")
        return cls._raw(rows, cols, [0] * (rows * cols), None, 1)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every block row/column must be conformal."""
        heights = [row[0].rows for row in grid]
        widths = [m.cols for m in grid[0]]
        for bi, row in enumerate(grid):
            if len(row) != len(widths):
                raise DimensionMismatch(f"block row {bi} has {len(row)} blocks")
            for bj, m in enumerate(row):
                if m.rows != heights[bi] or m.cols != widths[bj]:
                    raise DimensionMismatch(f"block ({bi}, {bj}) has shape {m.shape}")
        den = lcm(*(m._den for row in grid for m in row))
        complex_ = any(m._im is not None for row in grid for m in row)
        total_cols = sum(widths)
        re, im = [], [] if complex_ else None
        for row in grid:
            scaled = [(m, den // m._den) for m in row]
            for i in range(row[0].rows):
                for m, f in scaled:
                    start = i * m.cols
                    re.extend(x * f for x in m._re[start:start + m.cols])
                    if complex_:
                        if m._im is None:
                            im.extend([0] * m.cols)
                        else:
                            im.extend(x * f for x in m._im[start:start + m.cols])
        return cls._raw(sum(heights), total_cols, re, im, den)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        blocks = [b for b in blocks if b is not None]
        if len(blocks) == 1:
            return blocks[0]
        grid = [
            [b if i == j else cls.zero(b.rows, c.cols) for j, c in enumerate(blocks)]
            for i, b in enumerate(blocks)
        ]
        return cls.block(grid)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_real(self) -> bool:
        return self._im is None

    @property
    def denominator(self) -> int:
        return self._den

    def __getitem__(self, index) -> Scalar:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {index} outside {self.shape}")
        k = i * self.cols + j
        im = 0 if self._im is None else Fraction(self._im[k], self._den)
        return Scalar(Fraction(self._re[k], self._den), im)

    def to_rows(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Rows ``r0:r1`` and columns ``c0:c1`` (half-open)."""
        if not (0 <= r0 < r1 <= self.rows and 0 <= c0 < c1 <= self.cols):
            raise DimensionMismatch(f"slice [{r0}:{r1}, {c0}:{c1}] of {self.shape}")
        pick = [i * self.cols + j for i in range(r0, r1) for j in range(c0, c1)]
        re = [self._re[k] for k in pick]
        im = None if self._im is None else [self._im[k] for k in pick]
        return Matrix._raw(r1 - r0, c1 - c0, re, im, self._den)

    def transpose(self) -> "Matrix":
        r, c = self.rows, self.cols
        order = [i * c + j for j in range(c) for i in range(r)]
        re = [self._re[k] for k in order]
        im = None if self._im is None else [self._im[k] for k in order]
        return Matrix._raw(c, r, re, im, self._den)

    def is_zero(self) -> bool:
        return not any(self._re) and self._im is None

    def trace(self) -> Scalar:
        self._require_square("trace")
        step = self.cols + 1
        re = Fraction(sum(self._re[::step]), self._den)
        im = 0 if self._im is None else Fraction(sum(self._im[::step]), self._den)
        return Scalar(re, im)

    def real_embedding(self) -> tuple[list[list[int]], int]:
        """Integer rows of ``den * [[R, -J], [J, R]]`` and the denominator.

        A complex matrix ``(R + iJ)/den`` maps to this real block form; the
        map is an injective algebra homomorphism, so rank doubles and
        inverses correspond block-wise.
        """
        r, c = self.rows, self.cols
        re_rows = [list(self._re[i * c:(i + 1) * c]) for i in range(r)]
        if self._im is None:
            return re_rows, self._den
        im_rows = [list(self._im[i * c:(i + 1) * c]) for i in range(r)]
        top = [re_rows[i] + [-x for x in im_rows[i]] for i in range(r)]
        bottom = [im_rows[i] + re_rows[i] for i in range(r)]
        return top + bottom, self._den

    # arithmetic

    def _require_square(self, what):
        if not self.is_square:
            raise NotSquare(f"{what} needs a square matrix, got {self.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._den == other._den
            and self._re == other._re
            and self._im == other._im
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self._den, self._re, self._im))
            object.__setattr__(self, "_hash", h)
        return h

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        den = lcm(self._den, other._den)
        f, g = den // self._den, den // other._den
        g *= sign
        re = [x * f + y * g for x, y in zip(self._re, other._re)]
        if self._im is None and other._im is None:
            im = None
        else:
            zeros = (0,) * len(re)
            im = [x * f + y * g for x, y in zip(self._im or zeros, other._im or zeros)]
        return Matrix._raw(self.rows, self.cols, re, im, den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        im = None if self._im is None else [-x for x in self._im]
        return Matrix._raw(self.rows, self.cols, [-x for x in self._re], im, self._den)

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, k, m = self.rows, self.cols, other.cols
        ar, ai, br, bi = self._re, self._im, other._re, other._im
        re = _int_matmul(ar, br, n, k, m)
        im = None
        if ai is not None:
            re = [x - y for x, y in zip(re, _int_matmul(ai, bi, n, k, m))] if bi is not None else re
            im = _int_matmul(ai, br, n, k, m)
            if bi is not None:
                im = [x + y for x, y in zip(im, _int_matmul(ar, bi, n, k, m))]
        elif bi is not None:
            im = _int_matmul(ar, bi, n, k, m)
        return Matrix._raw(n, m, re, im, self._den * other._den)

    def scale(self, s) -> "Matrix":
        s = Scalar.coerce(s)
        d = lcm(s.re.denominator, s.im.denominator)
        p = s.re.numerator * (d // s.re.denominator)
        q = s.im.numerator * (d // s.im.denominator)
        re = [p * x for x in self._re]
        if q == 0:
            im = None if self._im is None else [p * x for x in self._im]
        else:
            im = [q * x for x in self._re]
            if self._im is not None:
                re = [x - q * y for x, y in zip(re, self._im)]
                im = [x + p * y for x, y in zip(im, self._im)]
        return Matrix._raw(self.rows, self.cols, re, im, self._den * d)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return NotImplemented
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        self._require_square("power")
        result, base = Matrix.identity(self.rows), self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def add_identity(self, s) -> "Matrix":
        """``self + s*I`` without materialising the scaled identity."""
        self._require_square("add_identity")
        return self + Matrix.identity(self.rows).scale(s)

    def commutes_with(self, other: "Matrix") -> bool:
        return self @ other == other @ self

    # rendering

    def __str__(self):
        cells = [[str(x) for x in row] for row in self.to_rows()]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.to_rows())
        return f"Matrix([{body}])"


def _int_matmul(x, y, n, k, m):
    rows = [x[i * k:(i + 1) * k] for i in range(n)]
    cols = [y[j::m] for j in range(m)]
    return [sum(map(mul, r, c)) for r in rows for c in cols]


def identity(n: int) -> Matrix:
    return Matrix.identity(n)


def zero(rows: int, cols: int | None = None) -> Matrix:
    return Matrix.zero(rows, cols)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return a - b


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def mat_scale(s, a: Matrix) -> Matrix:
    return a.scale(s)
