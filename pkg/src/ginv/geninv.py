"""Drazin, strongly Drazin and Hirano inverses with self-checking certificates.

Everything is computed from the characteristic polynomial.  Splitting
``char_poly(a)`` into coprime prime-power pieces and solving the Chinese
remainder problem gives polynomials ``u`` for which ``u(a)`` is the spectral
projector onto one generalized eigenspace.  From those projectors:

* ``a^pi = u(a)`` for the eigenvalue 0 and ``a^D = (a + a^pi)^{-1}(1 - a^pi)``;
* when every eigenvalue lies in {-1, 0, 1}, ``t = P_1 - P_{-1}`` is a
  tripotent commuting with ``a`` and ``a - t`` is nilpotent.

Each certificate re-checks all of its defining identities before it is
returned and raises :class:`InternalVerificationFailure` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    DimensionMismatch,
    HypothesisViolated,
    InternalVerificationFailure,
    NotHirano,
    NotSquare,
    VerificationFailure,
)
from .exactcore import (
    Matrix,
    Polynomial,
    char_poly,
    crt_interpolant,
    eval_poly,
    mat_inverse,
    matrix_to_json,
    multiplicity,
    nilpotency_index,
    rank,
)


def _require_square(a: Matrix, what: str):
    if not a.is_square:
        raise NotSquare(f"{what} needs a square matrix, got {a.shape}")


def _nil_power_zero(m: Matrix) -> bool:
    return (m ** m.rows).is_zero()


def _is_idempotent(p: Matrix) -> bool:
    return p @ p == p


@dataclass(frozen=True)
class DrazinCertificate:
    source: Matrix
    inverse: Matrix
    index: int
    spectral_idempotent: Matrix
    core: Matrix
    nil_part: Matrix

    def failed_checks(self) -> list[str]:
        a, x, k, api = self.source, self.inverse, self.index, self.spectral_idempotent
        one = Matrix.identity(a.rows)
        ax = a @ x
        checks = {
            "a aD = aD a": ax == x @ a,
            "aD a aD = aD": x @ ax == x,
            "a^(k+1) aD = a^k": (a ** (k + 1)) @ x == a ** k,
            "a^pi = 1 - a aD": api == one - ax,
            "a^pi idempotent": _is_idempotent(api),
            "a^pi commutes with a": api.commutes_with(a),
            "core = a a aD": self.core == a @ ax,
            "nil_part = a a^pi": self.nil_part == a @ api,
            "core + nil_part = a": self.core + self.nil_part == a,
            "nil_part nilpotent": _nil_power_zero(self.nil_part),
            # (a a^pi)^j = a^j a^pi, so minimality is about the nil part only
            "index minimal": k == 0
            or (((a ** k) @ api).is_zero() and (k == 1 or not ((a ** (k - 1)) @ api).is_zero())),
        }
        invertible = rank(a) == a.rows
        checks["index 0 iff invertible iff a^pi = 0"] = (k == 0) == invertible == api.is_zero()
        return [name for name, ok in checks.items() if not ok]

    def to_json(self) -> dict:
        return {
            "source": matrix_to_json(self.source),
            "inverse": matrix_to_json(self.inverse),
            "index": self.index,
            "spectral_idempotent": matrix_to_json(self.spectral_idempotent),
            "core": matrix_to_json(self.core),
            "nil_part": matrix_to_json(self.nil_part),
        }


@dataclass(frozen=True)
class StronglyDrazinCertificate:
    source: Matrix
    inverse: Matrix
    idempotent: Matrix
    nilpotent: Matrix
    nil_index: int

    def failed_checks(self) -> list[str]:
        a, x, e, n = self.source, self.inverse, self.idempotent, self.nilpotent
        ax = a @ x
        checks = {
            "e^2 = e": _is_idempotent(e),
            "n^nil_index = 0": (n ** self.nil_index).is_zero(),
            "e + n = a": e + n == a,
            "e n = n e": e.commutes_with(n),
            "ax = xa": ax == x @ a,
            "x = xax": x @ ax == x,
            "a - ax nilpotent": nilpotency_index(a - ax) is not None,
        }
        return [name for name, ok in checks.items() if not ok]

    def to_json(self) -> dict:
        return {
            "source": matrix_to_json(self.source),
            "inverse": matrix_to_json(self.inverse),
            "idempotent": matrix_to_json(self.idempotent),
            "nilpotent": matrix_to_json(self.nilpotent),
            "nil_index": self.nil_index,
        }


@dataclass(frozen=True)
class HiranoCertificate:
    source: Matrix
    inverse: Matrix
    tripotent: Matrix
    nilpotent: Matrix
    proj_zero: Matrix
    proj_one: Matrix
    proj_minus_one: Matrix
    defect_index: int

    def failed_checks(self) -> list[str]:
        a, x, t, n = self.source, self.inverse, self.tripotent, self.nilpotent
        projs = (self.proj_zero, self.proj_one, self.proj_minus_one)
        ax = a @ x
        defect = a - a @ a @ a
        m = self.defect_index
        checks = {
            "t^3 = t": t @ t @ t == t,
            "t n = n t": t.commutes_with(n),
            "t + n = a": t + n == a,
            "n^dim = 0": _nil_power_zero(n),
            "P0 + P1 + P-1 = 1": projs[0] + projs[1] + projs[2] == Matrix.identity(a.rows),
            "projectors idempotent": all(_is_idempotent(p) for p in projs),
            "projectors orthogonal": all(
                (p @ q).is_zero() for i, p in enumerate(projs) for j, q in enumerate(projs) if i != j
            ),
            "projectors commute with a": all(p.commutes_with(a) for p in projs),
            "ax = xa": ax == x @ a,
            "x = xax": x @ ax == x,
            "a^2 - ax nilpotent": nilpotency_index(a @ a - ax) is not None,
            "(a - a^3)^m = 0, m minimal": (defect ** m).is_zero()
            and (m == 1 or not (defect ** (m - 1)).is_zero()),
        }
        return [name for name, ok in checks.items() if not ok]

    def to_json(self) -> dict:
        return {
            "source": matrix_to_json(self.source),
            "inverse": matrix_to_json(self.inverse),
            "tripotent": matrix_to_json(self.tripotent),
            "nilpotent": matrix_to_json(self.nilpotent),
            "proj_zero": matrix_to_json(self.proj_zero),
            "proj_one": matrix_to_json(self.proj_one),
            "proj_minus_one": matrix_to_json(self.proj_minus_one),
            "defect_index": self.defect_index,
        }


@dataclass(frozen=True)
class SpectrumSummary:
    mult_zero: int
    mult_one: int
    mult_minus_one: int
    other_factor: Polynomial

    @property
    def dim(self) -> int:
        return self.mult_zero + self.mult_one + self.mult_minus_one + self.other_factor.degree

    @property
    def in_hirano_set(self) -> bool:
        """All eigenvalues lie in {-1, 0, 1}."""
        return self.other_factor.is_one()

    def to_json(self) -> dict:
        return {
            "mult_zero": self.mult_zero,
            "mult_one": self.mult_one,
            "mult_minus_one": self.mult_minus_one,
            "other_factor": [str(c) for c in self.other_factor.coeffs],
        }


def _checked(cert, what):
    failed = cert.failed_checks()
    if failed:
        raise InternalVerificationFailure(what, failed)
    return cert


def _summary_from_charpoly(cp: Polynomial) -> SpectrumSummary:
    m0, rest = multiplicity(cp, 0)
    m1, rest = multiplicity(rest, 1)
    mm, rest = multiplicity(rest, -1)
    return SpectrumSummary(m0, m1, mm, rest)


def spectrum_summary(a: Matrix) -> SpectrumSummary:
    _require_square(a, "spectrum_summary")
    return _summary_from_charpoly(char_poly(a))


def _spectral_projector(a: Matrix, factors: dict, key) -> Matrix:
    """``u(a)`` with ``u = 1`` mod ``factors[key]`` and ``0`` mod the rest."""
    target = factors[key]
    if target.degree == 0:
        return Matrix.zero(a.rows)
    others = Polynomial([1])
    for k, f in factors.items():
        if k != key:
            others = others * f
    if others.degree == 0:
        return Matrix.identity(a.rows)
    return eval_poly(crt_interpolant(target, others), a)


@lru_cache(maxsize=1024)
def drazin(a: Matrix) -> DrazinCertificate:
    _require_square(a, "drazin")
    n = a.rows
    cp = char_poly(a)
    m, q = multiplicity(cp, 0)
    one = Matrix.identity(n)
    api = _spectral_projector(a, {0: Polynomial.x() ** m, 1: q}, 0)
    inv = mat_inverse(a + api) @ (one - api)
    nil_part = a @ api
    index = 0 if m == 0 else nilpotency_index(nil_part)
    if index is None:
        raise InternalVerificationFailure("drazin", ["nil_part nilpotent"])
    cert = DrazinCertificate(
        source=a,
        inverse=inv,
        index=index,
        spectral_idempotent=api,
        core=a @ a @ inv,
        nil_part=nil_part,
    )
    return _checked(cert, "drazin")


def strongly_drazin(a: Matrix) -> StronglyDrazinCertificate | None:
    _require_square(a, "strongly_drazin")
    if nilpotency_index(a - a @ a) is None:
        return None
    d = drazin(a)
    e = a @ d.inverse
    nil = a - e
    nil_index = nilpotency_index(nil)
    if nil_index is None:
        raise InternalVerificationFailure("strongly_drazin", ["a - a aD nilpotent"])
    cert = StronglyDrazinCertificate(a, d.inverse, e, nil, nil_index)
    return _checked(cert, "strongly_drazin")


def is_hirano(a: Matrix) -> int | None:
    """Minimal ``m`` with ``(a - a^3)^m = 0``, or ``None``."""
    _require_square(a, "is_hirano")
    return nilpotency_index(a - a @ a @ a)


@lru_cache(maxsize=1024)
def hirano(a: Matrix) -> HiranoCertificate:
    _require_square(a, "hirano")
    m = is_hirano(a)
    if m is None:
        raise NotHirano("a - a^3 is not nilpotent")
    summary = spectrum_summary(a)
    if not summary.in_hirano_set:
        # a - a^3 nilpotent forces the spectrum into {-1, 0, 1}
        raise InternalVerificationFailure("hirano", ["spectrum inside {-1, 0, 1}"])
    x = Polynomial.x()
    factors = {
        0: x ** summary.mult_zero,
        1: Polynomial.linear_power(1, summary.mult_one),
        -1: Polynomial.linear_power(-1, summary.mult_minus_one),
    }
    p1 = _spectral_projector(a, factors, 1)
    pm = _spectral_projector(a, factors, -1)
    p0 = Matrix.identity(a.rows) - p1 - pm
    t = p1 - pm
    cert = HiranoCertificate(
        source=a,
        inverse=drazin(a).inverse,
        tripotent=t,
        nilpotent=a - t,
        proj_zero=p0,
        proj_one=p1,
        proj_minus_one=pm,
        defect_index=m,
    )
    return _checked(cert, "hirano")


def cline_hirano(A: Matrix, B: Matrix) -> Matrix:
    """``(BA)^H`` computed as ``B [(AB)^H]^2 A`` and cross-checked."""
    if A.rows != B.cols or A.cols != B.rows:
        raise DimensionMismatch(f"need A m x n and B n x m, got {A.shape} and {B.shape}")
    ab = A @ B
    if is_hirano(ab) is None:
        raise NotHirano("AB is not Hirano invertible")
    x = hirano(ab).inverse
    via_ab = B @ x @ x @ A
    try:
        direct = hirano(B @ A).inverse
    except NotHirano:
        raise VerificationFailure("AB is Hirano invertible but BA is not") from None
    if via_ab != direct:
        raise VerificationFailure("B[(AB)^H]^2 A differs from (BA)^H")
    return via_ab


def _require_hirano(**named):
    for name, m in named.items():
        if is_hirano(m) is None:
            raise HypothesisViolated(f"{name} in A^H")


def _sum_inverse(a: Matrix, b: Matrix) -> Matrix:
    s = a + b
    if is_hirano(s) is None:
        raise NotHirano("a + b is not Hirano invertible although the hypotheses hold")
    return hirano(s).inverse


def hirano_sum_orthogonal(a: Matrix, b: Matrix) -> Matrix:
    """``(a+b)^H`` for Hirano ``a, b`` with ``ab = 0``."""
    _require_hirano(a=a, b=b)
    ab = a @ b
    if not ab.is_zero():
        raise HypothesisViolated("ab = 0", ab)
    return _sum_inverse(a, b)


def hirano_sum_225(a: Matrix, b: Matrix) -> Matrix:
    """``(a+b)^H`` for Hirano ``a, b`` with ``aba = 0`` and ``ab^2 = 0``."""
    _require_hirano(a=a, b=b)
    ab = a @ b
    aba = ab @ a
    if not aba.is_zero():
        raise HypothesisViolated("aba = 0", aba)
    abb = ab @ b
    if not abb.is_zero():
        raise HypothesisViolated("ab^2 = 0", abb)
    return _sum_inverse(a, b)
