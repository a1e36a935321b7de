"""Exact kernels: rank, inverse, characteristic polynomial, matrix functions."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DimensionMismatch, NotSquare, Singular
from .matrix import Matrix
from .poly import Polynomial
from .scalar import ZERO, Scalar


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination.

    Every intermediate entry is a minor of the input, so the division by the
    previous pivot is exact and coefficients never leave Z.
    """
    m = [list(r) for r in rows]
    n_rows, n_cols = len(m), len(m[0])
    prev, r = 1, 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pivot, prow = m[r][c], m[r]
        for i in range(r + 1, n_rows):
            row = m[i]
            f = row[c]
            m[i] = [0] * (c + 1) + [(pivot * row[j] - f * prow[j]) // prev for j in range(c + 1, n_cols)]
        prev = pivot
        r += 1
    return r


def rank(a: Matrix) -> int:
    rows, _ = a.real_embedding()
    r = _bareiss_rank(rows)
    return r if a.is_real else r // 2


def _fraction_free_inverse(rows: list[list[int]]) -> tuple[int, list[list[int]]]:
    """Fraction-free Gauss-Jordan on ``[A | I]``.

    Returns ``(d, X)`` with ``A @ X = d * I`` and ``d = +-det(A)``.
    """
    n = len(rows)
    m = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    width = 2 * n
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k]), None)
        if p is None:
            raise Singular("matrix is singular")
        m[k], m[p] = m[p], m[k]
        pivot, prow = m[k][k], m[k]
        for i in range(n):
            if i == k:
                continue
            row = m[i]
            f = row[k]
            new = []
            for j in range(width):
                q, rem = divmod(pivot * row[j] - f * prow[j], prev)
                if rem:
                    raise ArithmeticError("inexact fraction-free step")
                new.append(q)
            m[i] = new
        prev = pivot
    return prev, [row[n:] for row in m]


def mat_inverse(a: Matrix) -> Matrix:
    if not a.is_square:
        raise NotSquare(f"inverse needs a square matrix, got {a.shape}")
    rows, den = a.real_embedding()
    d, x = _fraction_free_inverse(rows)
    n = a.rows
    # inverse of (N / den) is den * N^{-1} = den * X / d
    if a.is_real:
        return _from_int_rows(x, n, n, den, d)
    re = [row[:n] for row in x[:n]]
    im = [row[:n] for row in x[n:]]
    return Matrix._raw(
        n, n, _scaled(re, den, d), _scaled(im, den, d), abs(d)
    )


def _scaled(rows, num, d):
    sign = 1 if d > 0 else -1
    return [sign * num * v for row in rows for v in row]


def _from_int_rows(rows, r, c, num, d):
    return Matrix._raw(r, c, _scaled(rows, num, d), None, abs(d))


def det(a: Matrix) -> Scalar:
    if not a.is_square:
        raise NotSquare(f"determinant needs a square matrix, got {a.shape}")
    # Laplace-free route: det = constant term of the characteristic polynomial.
    cp = char_poly(a)
    c0 = cp.coeffs[0] if cp.coeffs else ZERO
    return c0 if a.rows % 2 == 0 else -c0


def char_poly(a: Matrix) -> Polynomial:
    """Monic ``det(x*I - a)`` by the Faddeev-LeVerrier recursion.

    ``M_k = a M_{k-1} + c_{n-k+1} I`` and ``c_{n-k} = -tr(a M_k) / k``; the
    division by the integer ``k`` is exact in characteristic zero.
    """
    if not a.is_square:
        raise NotSquare(f"char_poly needs a square matrix, got {a.shape}")
    n = a.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = Scalar(1)
    am = Matrix.zero(n)  # a @ M_0
    for k in range(1, n + 1):
        mk = am.add_identity(coeffs[n - k + 1])
        am = a @ mk
        coeffs[n - k] = -am.trace() * Scalar(Fraction(1, k))
    return Polynomial(coeffs)


def eval_poly(p: Polynomial, a: Matrix) -> Matrix:
    """``p(a)`` by Horner's rule in the matrix algebra."""
    if not a.is_square:
        raise NotSquare(f"eval_poly needs a square matrix, got {a.shape}")
    n = a.rows
    if p.is_zero():
        return Matrix.zero(n)
    acc = Matrix.zero(n).add_identity(p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        acc = (acc @ a).add_identity(c)
    return acc


def nilpotency_index(a: Matrix) -> int | None:
    """Smallest ``m >= 1`` with ``a**m == 0``; ``None`` when ``a**n != 0``."""
    if not a.is_square:
        raise NotSquare(f"nilpotency_index needs a square matrix, got {a.shape}")
    p = a
    for m in range(1, a.rows + 1):
        if p.is_zero():
            return m
        if m < a.rows:
            p = p @ a
    return None


def is_nilpotent(a: Matrix) -> bool:
    return nilpotency_index(a) is not None


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q(i) and the pivot columns."""
    m = a.to_rows()
    n_rows, n_cols = a.rows, a.cols
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].reciprocal()
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return Matrix(m), pivots


def nullspace(a: Matrix) -> Matrix | None:
    """Columns spanning ``ker a``; ``None`` when the kernel is trivial."""
    red, pivots = rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    if not free:
        return None
    basis = []
    for f in free:
        v = [ZERO] * a.cols
        v[f] = Scalar(1)
        for row, p in enumerate(pivots):
            v[p] = -red[row, f]
        basis.append(v)
    return Matrix(basis).transpose()


def column_basis(a: Matrix) -> Matrix | None:
    """Linearly independent columns of ``a`` spanning its range."""
    _, pivots = rref(a)
    if not pivots:
        return None
    return Matrix.block([[a.submatrix(0, a.rows, p, p + 1) for p in pivots]])


def rank_factorization(a: Matrix) -> tuple[Matrix, Matrix] | None:
    """``(F, G)`` with ``a = F @ G``, F full column rank, G full row rank."""
    red, pivots = rref(a)
    if not pivots:
        return None
    f = Matrix.block([[a.submatrix(0, a.rows, p, p + 1) for p in pivots]])
    return f, red.submatrix(0, len(pivots), 0, a.cols)


def _check_same_square(*ms: Matrix):
    n = ms[0].rows
    for m in ms:
        if m.shape != (n, n):
            raise DimensionMismatch(f"expected {n}x{n}, got {m.shape}")
