"""Univariate polynomials over Q(i), coefficients stored lowest degree first."""

from __future__ import annotations

from typing import Iterable

from ..errors import NonCoprimeModuli
from .scalar import ONE, ZERO, Scalar


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Scalar.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.coeffs,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def linear_power(cls, root, k: int) -> "Polynomial":
        """``(x - root)**k``."""
        return cls([-Scalar.coerce(root), 1]) ** k

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (ONE,)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial([other])
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return poly_divrem(self, other)[0]

    def __mod__(self, other):
        return poly_divrem(self, other)[1]

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        inv = self.lead.reciprocal()
        return Polynomial([c * inv for c in self.coeffs])

    def __call__(self, value):
        """Evaluate at a scalar by Horner's rule."""
        value = Scalar.coerce(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c) if c.is_real else f"({c})")
                continue
            mono = "x" if k == 1 else f"x^{k}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            elif c.is_real:
                terms.append(f"{c}*{mono}")
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial({self})"


def poly_divrem(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial]:
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = q.degree
    if len(rem) - 1 < dq:
        return Polynomial(), p
    inv = q.lead.reciprocal()
    quot = [ZERO] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = rem[k + dq] * inv
        quot[k] = c
        if c:
            for j, qc in enumerate(q.coeffs):
                rem[k + j] = rem[k + j] - c * qc
    return Polynomial(quot), Polynomial(rem[:dq])


def poly_ext_gcd(p: Polynomial, q: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return ``(g, s, t)`` with ``s*p + t*q = g`` and ``g`` monic (or zero)."""
    r0, r1 = p, q
    s0, s1 = Polynomial([1]), Polynomial()
    t0, t1 = Polynomial(), Polynomial([1])
    while r1:
        quo, rem = poly_divrem(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.lead.reciprocal()
    return r0 * inv, s0 * inv, t0 * inv


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    return poly_ext_gcd(p, q)[0]


def crt_interpolant(m1: Polynomial, m2: Polynomial) -> Polynomial:
    """The unique ``u`` of degree below ``deg(m1*m2)`` with ``u = 1 mod m1``
    and ``u = 0 mod m2``."""
    g, _, t = poly_ext_gcd(m1, m2)
    if g.degree != 0:
        raise NonCoprimeModuli(f"gcd({m1}, {m2}) = {g}")
    return (t * m2) % (m1 * m2)


def multiplicity(p: Polynomial, root) -> tuple[int, Polynomial]:
    """How often ``(x - root)`` divides ``p``, and the cofactor."""
    if p.is_zero():
        raise ValueError("multiplicity of a root in the zero polynomial")
    factor = Polynomial([-Scalar.coerce(root), 1])
    k = 0
    while True:
        quo, rem = poly_divrem(p, factor)
        if rem:
            return k, p
        p, k = quo, k + 1
