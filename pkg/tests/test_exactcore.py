from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import M, square_matrices
from ginv.errors import DimensionMismatch, NonCoprimeModuli, NotSquare, Singular
from ginv.exactcore import (
    I,
    Matrix,
    Polynomial,
    Scalar,
    char_poly,
    crt_interpolant,
    eval_poly,
    identity,
    is_nilpotent,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_scale,
    mat_sub,
    multiplicity,
    nilpotency_index,
    nullspace,
    poly_divrem,
    poly_gcd,
    rank,
    rank_factorization,
    rref,
    zero,
)

x = Polynomial.x()


# scalars

def test_scalar_canonical_form():
    s = Scalar(Fraction(2, -4))
    assert (s.re, s.im) == (Fraction(-1, 2), 0)
    assert Scalar(0) == Scalar(Fraction(0, 5))
    assert str(Scalar(0)) == "0"


def test_scalar_gaussian_arithmetic():
    assert I * I == Scalar(-1)
    z = Scalar(Fraction(1, 2), 3)
    assert z * z.reciprocal() == Scalar(1)
    assert (z - z) == Scalar(0)
    assert z.conjugate() == Scalar(Fraction(1, 2), -3)
    with pytest.raises(ZeroDivisionError):
        Scalar(0).reciprocal()


def test_scalar_parse_and_str():
    assert Scalar.parse("-3/6") == Scalar(Fraction(-1, 2))
    assert str(Scalar(1, 1)) == "1+i"
    assert str(Scalar(Fraction(1, 3), Fraction(-2, 5))) == "1/3-2/5*i"


# matrix basics

def test_identity_times_m():
    m = M([[1, 1], [0, 0]])
    assert mat_mul(identity(2), m) == m


def test_b_times_a_vanishes():
    assert mat_mul(M([[0, 1], [0, 1]]), M([[1, 1], [0, 0]])) == zero(2, 2)


def test_cube_of_tripotent():
    a = M([[0, 0, 1], [1, 0, 1], [1, 0, 0]])
    assert a @ a @ a == a
    assert a ** 3 == a


def test_add_sub_scale():
    a = M([[1, 2], [3, 4]])
    b = M([[Fraction(1, 2), 0], [0, I]])
    assert mat_sub(mat_add(a, b), b) == a
    assert mat_scale(2, a) == a + a
    assert mat_scale(I, mat_scale(I, a)) == -a


def test_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_add(zero(2, 2), zero(2, 3))
    with pytest.raises(DimensionMismatch):
        mat_mul(zero(2, 3), zero(2, 3))
    with pytest.raises(ValueError):
        Matrix([[1, 2], [3]])


def test_block_and_submatrix():
    a = M([[1, 2], [3, 4]])
    big = Matrix.block([[a, identity(2)], [zero(2, 2), a]])
    assert big.shape == (4, 4)
    assert big.submatrix(0, 2, 2, 4) == identity(2)
    assert big.submatrix(2, 4, 2, 4) == a
    assert Matrix.block_diag(a, identity(1)).shape == (3, 3)


# inverse

@pytest.mark.parametrize(
    "a, expected",
    [
        (identity(3), identity(3)),
        (M([[2]]), M([[Fraction(1, 2)]])),
        (M([[1, 1], [0, 1]]), M([[1, -1], [0, 1]])),
        (M([[0, I], [1, 0]]), M([[0, 1], [-I, 0]])),
    ],
)
def test_inverse_examples(a, expected):
    assert mat_inverse(a) == expected
    assert a @ expected == identity(a.shape[0])


def test_inverse_errors():
    with pytest.raises(Singular):
        mat_inverse(M([[1, 1], [1, 1]]))
    with pytest.raises(NotSquare):
        mat_inverse(zero(2, 3))


# rank

@pytest.mark.parametrize(
    "a, r",
    [(zero(3, 3), 0), (M([[1, 1], [0, 0]]), 1), (identity(4), 4), (M([[1, I], [I, -1]]), 1)],
)
def test_rank_examples(a, r):
    assert rank(a) == r


# characteristic polynomial and evaluation

def test_char_poly_examples():
    assert char_poly(identity(2)) == Polynomial.linear_power(1, 2)
    m = M([[1, 1, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 1, 0, 0]])
    cp = char_poly(m)
    assert cp == Polynomial([0, 1, -1, -1, 1])
    assert cp == x * (x + 1) * (x - 1) * (x - 1)
    jordan = M([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert char_poly(jordan) == x ** 3


def test_eval_poly_examples():
    a = M([[1, 2], [3, 4]])
    assert eval_poly(x, a) == a
    t = M([[0, 0, 1], [1, 0, 1], [1, 0, 0]])
    assert eval_poly(x - x ** 3, t).is_zero()


# polynomials

def test_crt_examples():
    assert crt_interpolant(x - 1, x) == x
    u = crt_interpolant(x ** 2, x - 1)
    assert poly_divrem(u - 1, x ** 2)[1].is_zero()
    assert poly_divrem(u, x - 1)[1].is_zero()
    with pytest.raises(NonCoprimeModuli):
        crt_interpolant(x ** 2, x * (x - 1))


def test_gcd_example():
    assert poly_gcd(x ** 2 - 1, x ** 2 - 2 * x + 1) == x - 1


def test_divrem_identity():
    p = Polynomial([1, 2, 3, 4])
    q = Polynomial([Fraction(1, 2), I])
    quo, rem = poly_divrem(p, q)
    assert quo * q + rem == p
    assert rem.degree < q.degree
    with pytest.raises(ZeroDivisionError):
        poly_divrem(p, Polynomial([]))


def test_multiplicity():
    k, rest = multiplicity(x ** 3 * (x + 1), 0)
    assert k == 3 and rest == x + 1


# nilpotency

@pytest.mark.parametrize(
    "a, k",
    [(zero(2, 2), 1), (M([[0, 1], [0, 0]]), 2), (identity(2), None), (M([[0, 1, 0], [0, 0, 1], [0, 0, 0]]), 3)],
)
def test_nilpotency_index_examples(a, k):
    assert nilpotency_index(a) == k


# properties

@settings(max_examples=60, deadline=None)
@given(square_matrices())
def test_cayley_hamilton(a):
    assert eval_poly(char_poly(a), a).is_zero()


@settings(max_examples=60, deadline=None)
@given(square_matrices(max_dim=3), st.data())
def test_inverse_of_product(a, data):
    n = a.shape[0]
    b = data.draw(square_matrices(max_dim=n, min_dim=n))
    if rank(a) < n or rank(b) < n:
        return
    assert mat_inverse(a @ b) == mat_inverse(b) @ mat_inverse(a)
    assert a @ mat_inverse(a) == identity(n) == mat_inverse(a) @ a


@settings(max_examples=60, deadline=None)
@given(square_matrices(max_dim=5))
def test_rank_nullity(a):
    n = a.shape[0]
    kernel = nullspace(a)
    k = 0 if kernel is None else kernel.shape[1]
    assert rank(a) + k == n
    if kernel is not None:
        assert (a @ kernel).is_zero()
    assert rank(a) == len(rref(a)[1])


@settings(max_examples=60, deadline=None)
@given(square_matrices(max_dim=4))
def test_rank_factorization_reconstructs(a):
    fg = rank_factorization(a)
    if fg is None:
        assert a.is_zero()
    else:
        f, g = fg
        assert f @ g == a
        assert f.shape[1] == rank(a)


@settings(max_examples=60, deadline=None)
@given(square_matrices(max_dim=4))
def test_nilpotent_iff_charpoly_is_power_of_x(a):
    n = a.shape[0]
    assert is_nilpotent(a) == (char_poly(a) == x ** n)


@settings(max_examples=40, deadline=None)
@given(square_matrices(max_dim=4))
def test_strict_upper_part_is_nilpotent(a):
    n = a.shape[0]
    rows = a.to_rows()
    strict = Matrix([[rows[i][j] if j > i else 0 for j in range(n)] for i in range(n)])
    k = nilpotency_index(strict)
    assert k is not None and k <= n
    assert (strict ** k).is_zero()
