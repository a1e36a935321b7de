"""Anti-triangular block matrices, Peirce splitting and the theorem checkers.

A checker evaluates each hypothesis of a registered statement as an exact
matrix equation (or a certified membership test), and only when all of them
hold does it build the conclusion matrix and try to certify it as Hirano
invertible.  A report never claims a conclusion it did not compute.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from .errors import DimensionMismatch, MissingInput, NotIdempotent, UnknownTheorem
from .exactcore import Matrix, matrix_to_json
from .geninv import HiranoCertificate, drazin, hirano, is_hirano, spectrum_summary, strongly_drazin


def build_anti_triangular(a: Matrix, b: Matrix) -> Matrix:
    """The ``2n x 2n`` block matrix ``[[a, I], [b, 0]]``."""
    if not (a.is_square and a.shape == b.shape):
        raise DimensionMismatch(f"a and b must be square of equal size, got {a.shape} and {b.shape}")
    n = a.rows
    return Matrix.block([[a, Matrix.identity(n)], [b, Matrix.zero(n)]])


@dataclass(frozen=True)
class PeirceBlocks:
    alpha: Matrix
    beta: Matrix
    gamma: Matrix
    delta: Matrix
    idempotent: Matrix

    def total(self) -> Matrix:
        return self.alpha + self.beta + self.gamma + self.delta


def peirce_split(x: Matrix, e: Matrix) -> PeirceBlocks:
    """``x = exe + ex(1-e) + (1-e)xe + (1-e)x(1-e)`` for an idempotent ``e``."""
    if not (x.is_square and x.shape == e.shape):
        raise DimensionMismatch(f"x and e must be square of equal size, got {x.shape} and {e.shape}")
    if e @ e != e:
        raise NotIdempotent("e^2 != e")
    f = Matrix.identity(e.rows) - e
    ex, fx = e @ x, f @ x
    blocks = PeirceBlocks(ex @ e, ex @ f, fx @ e, fx @ f, e)
    assert blocks.total() == x
    return blocks


def anti_triangular_idempotent(b: Matrix) -> Matrix:
    """``diag(b b^D, I)``, the idempotent used to split ``[[a, I], [b, 0]]``."""
    n = b.rows
    return Matrix.block_diag(b @ drazin(b).inverse, Matrix.identity(n))


# registry


Inputs = Mapping[str, Matrix]


@dataclass(frozen=True)
class Hypothesis:
    name: str
    equation: str
    evaluate: Callable[[Inputs], tuple[bool, Matrix | None]]


@dataclass(frozen=True)
class HypothesisResult:
    name: str
    equation: str
    holds: bool
    residual: Matrix | None = None


@dataclass(frozen=True)
class Theorem:
    id: str
    anchor: str
    roles: tuple[str, ...]
    hypotheses: tuple[Hypothesis, ...]
    conclusion: Callable[[Inputs], Matrix]
    conclusion_text: str

    @property
    def hypothesis_names(self) -> frozenset[str]:
        return frozenset(h.name for h in self.hypotheses)

    def without(self, *names: str) -> "Theorem":
        """A copy with the named hypotheses removed (for mutation tests)."""
        unknown = set(names) - self.hypothesis_names
        if unknown:
            raise KeyError(f"{self.id} has no hypotheses {sorted(unknown)}")
        kept = tuple(h for h in self.hypotheses if h.name not in names)
        return replace(self, hypotheses=kept)


def _dpow(m: Matrix) -> Matrix:
    return m ** m.rows


def _hirano_member(label: str, expr: Callable[[Inputs], Matrix]) -> Hypothesis:
    def evaluate(inp):
        m = expr(inp)
        if is_hirano(m) is not None:
            return True, None
        return False, _dpow(m - m @ m @ m)

    return Hypothesis(f"{label}_hirano", f"{label} in A^H", evaluate)


def _sdrazin_member(label: str, expr: Callable[[Inputs], Matrix]) -> Hypothesis:
    def evaluate(inp):
        m = expr(inp)
        if strongly_drazin(m) is not None:
            return True, None
        return False, _dpow(m - m @ m)

    return Hypothesis(f"{label}_sdrazin", f"{label} in A^sD", evaluate)


def _eigen_01(label: str, expr: Callable[[Inputs], Matrix]) -> Hypothesis:
    def evaluate(inp):
        m = expr(inp)
        s = spectrum_summary(m)
        if s.mult_minus_one == 0 and s.other_factor.is_one():
            return True, None
        return False, _dpow(m - m @ m)

    return Hypothesis(f"{label}_eigen01", f"eigenvalues of {label} in {{0, 1}}", evaluate)


def _equation(name: str, equation: str, lhs, rhs=None) -> Hypothesis:
    def evaluate(inp):
        residual = lhs(inp) if rhs is None else lhs(inp) - rhs(inp)
        if residual.is_zero():
            return True, None
        return False, residual

    return Hypothesis(name, equation, evaluate)


def _D(m: Matrix) -> Matrix:
    return drazin(m).inverse


def _pi(m: Matrix) -> Matrix:
    return drazin(m).spectral_idempotent


def _anti(inp) -> Matrix:
    return build_anti_triangular(inp["a"], inp["b"])


def _square_block(inp, tl, tr, bl, br) -> Matrix:
    n = inp["a"].rows
    pick = lambda k: Matrix.zero(n) if k is None else inp[k]  # noqa: E731
    return Matrix.block([[pick(tl), pick(tr)], [pick(bl), pick(br)]])


a_ = lambda i: i["a"]  # noqa: E731
b_ = lambda i: i["b"]  # noqa: E731
d_ = lambda i: i["d"]  # noqa: E731
bc_ = lambda i: i["b"] @ i["c"]  # noqa: E731
cb_ = lambda i: i["c"] @ i["b"]  # noqa: E731

_A_H = _hirano_member("a", a_)
_B_H = _hirano_member("b", b_)
_D_H = _hirano_member("d", d_)
_B_SD = _sdrazin_member("b", b_)
_BDA = _equation("bDa_zero", "b^D a = 0", lambda i: _D(i["b"]) @ i["a"])


REGISTRY: dict[str, Theorem] = {}


def _register(*args, **kwargs):
    t = Theorem(*args, **kwargs)
    REGISTRY[t.id] = t


_register(
    "lem2.2",
    "If a, b in A^H, then [[a, c], [0, b]] in M2(A)^H",
    ("a", "b", "c"),
    (_A_H, _B_H),
    lambda i: _square_block(i, "a", "c", None, "b"),
    "[[a, c], [0, b]]",
)
_register(
    "lem2.4",
    "If a, b in A^H and ab = 0, then a + b in A^H",
    ("a", "b"),
    (_A_H, _B_H, _equation("ab_zero", "ab = 0", lambda i: i["a"] @ i["b"])),
    lambda i: i["a"] + i["b"],
    "a + b",
)
_register(
    "thm2.5",
    "If a, b in A^H, aba = 0 and ab^2 = 0, then a + b in A^H",
    ("a", "b"),
    (
        _A_H,
        _B_H,
        _equation("aba_zero", "aba = 0", lambda i: i["a"] @ i["b"] @ i["a"]),
        _equation("abb_zero", "ab^2 = 0", lambda i: i["a"] @ i["b"] @ i["b"]),
    ),
    lambda i: i["a"] + i["b"],
    "a + b",
)
_register(
    "thm3.1",
    "If a in A^H, b in A^sD, b^D a = 0 and b a b^pi = 0, then [[a, 1], [b, 0]] in M2(A)^H",
    ("a", "b"),
    (
        _A_H,
        _B_SD,
        _BDA,
        _equation("bab_pi_zero", "b a b^pi = 0", lambda i: i["b"] @ i["a"] @ _pi(i["b"])),
    ),
    _anti,
    "[[a, I], [b, 0]]",
)
_register(
    "cor3.2",
    "If a, d in A^H, bc in A^sD, (bc)^D a = 0, bca(bc)^pi = 0, bdc = 0 and bd^2 = 0, "
    "then [[a, b], [c, d]] in M2(A)^H",
    ("a", "b", "c", "d"),
    (
        _A_H,
        _D_H,
        _sdrazin_member("bc", bc_),
        _equation("bcDa_zero", "(bc)^D a = 0", lambda i: _D(bc_(i)) @ i["a"]),
        _equation("bca_bcpi_zero", "bca(bc)^pi = 0", lambda i: bc_(i) @ i["a"] @ _pi(bc_(i))),
        _equation("bdc_zero", "bdc = 0", lambda i: i["b"] @ i["d"] @ i["c"]),
        _equation("bdd_zero", "bd^2 = 0", lambda i: i["b"] @ i["d"] @ i["d"]),
    ),
    lambda i: _square_block(i, "a", "b", "c", "d"),
    "[[a, b], [c, d]]",
)
_register(
    "cor3.3",
    "If a, d in A^H, bc in A^sD, (bc)^D a = 0, a(bc)^pi = 0 and bd = 0, "
    "then [[a, b], [c, d]] in M2(A)^H",
    ("a", "b", "c", "d"),
    (
        _A_H,
        _D_H,
        _sdrazin_member("bc", bc_),
        _equation("bcDa_zero", "(bc)^D a = 0", lambda i: _D(bc_(i)) @ i["a"]),
        _equation("a_bcpi_zero", "a(bc)^pi = 0", lambda i: i["a"] @ _pi(bc_(i))),
        _equation("bd_zero", "bd = 0", lambda i: i["b"] @ i["d"]),
    ),
    lambda i: _square_block(i, "a", "b", "c", "d"),
    "[[a, b], [c, d]]",
)
_register(
    "thm3.5",
    "If B^D A = 0, B A B^pi = 0 and the eigenvalues of A and B are 0 or 1, "
    "then [[A, I], [B, 0]] is Hirano invertible",
    ("a", "b"),
    (
        _eigen_01("a", a_),
        _eigen_01("b", b_),
        _BDA,
        _equation("bab_pi_zero", "b a b^pi = 0", lambda i: i["b"] @ i["a"] @ _pi(i["b"])),
    ),
    _anti,
    "[[a, I], [b, 0]]",
)
_register(
    "thm4.1",
    "If a in A^H, b in A^sD, b^D a = 0 and a b b^pi = b a b^pi, then [[a, 1], [b, 0]] in M2(A)^H",
    ("a", "b"),
    (
        _A_H,
        _B_SD,
        _BDA,
        _equation(
            "abbpi_eq_babpi",
            "a b b^pi = b a b^pi",
            lambda i: i["a"] @ i["b"] @ _pi(i["b"]),
            lambda i: i["b"] @ i["a"] @ _pi(i["b"]),
        ),
    ),
    _anti,
    "[[a, I], [b, 0]]",
)
_register(
    "cor4.2",
    "If a in A^H, cb in A^sD, acb = cba and (cb)^D a = 0, then [[a, c], [b, 0]] in M2(A)^H",
    ("a", "b", "c"),
    (
        _A_H,
        _sdrazin_member("cb", cb_),
        _equation("acb_eq_cba", "acb = cba", lambda i: i["a"] @ cb_(i), lambda i: cb_(i) @ i["a"]),
        _equation("cbDa_zero", "(cb)^D a = 0", lambda i: _D(cb_(i)) @ i["a"]),
    ),
    lambda i: _square_block(i, "a", "c", "b", None),
    "[[a, c], [b, 0]]",
)
_register(
    "cor4.3",
    "If a, b in A^sD, b^D a = 0 and ab = ba, then [[a, 1], [b, 0]] in M2(A)^H",
    ("a", "b"),
    (
        _sdrazin_member("a", a_),
        _B_SD,
        _BDA,
        _equation("ab_eq_ba", "ab = ba", lambda i: i["a"] @ i["b"], lambda i: i["b"] @ i["a"]),
    ),
    _anti,
    "[[a, I], [b, 0]]",
)
_register(
    "thm4.4",
    "If a in A^H, b in A^sD and b = ba, then [[a, 1], [b, 0]] in M2(A)^H",
    ("a", "b"),
    (_A_H, _B_SD, _equation("b_eq_ba", "b = ba", b_, lambda i: i["b"] @ i["a"])),
    _anti,
    "[[a, I], [b, 0]]",
)
_register(
    "cor4.5",
    "If a in A^H, b in A^sD and b = ab, then [[a, 1], [b, 0]] in M2(A)^H",
    ("a", "b"),
    (_A_H, _B_SD, _equation("b_eq_ab", "b = ab", b_, lambda i: i["a"] @ i["b"])),
    _anti,
    "[[a, I], [b, 0]]",
)


def get_theorem(theorem: str | Theorem) -> Theorem:
    if isinstance(theorem, Theorem):
        return theorem
    try:
        return REGISTRY[theorem]
    except KeyError:
        raise UnknownTheorem(theorem) from None


# reports


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    inputs: dict[str, Matrix]
    hypotheses: tuple[HypothesisResult, ...]
    conclusion_matrix: Matrix
    conclusion_attempted: bool
    conclusion_verified: bool
    certificate: HiranoCertificate | None = field(default=None, compare=False)

    @property
    def all_hold(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    @property
    def violated(self) -> list[HypothesisResult]:
        return [h for h in self.hypotheses if not h.holds]

    @property
    def counterexample(self) -> bool:
        """Every hypothesis holds yet the conclusion failed."""
        return self.all_hold and not self.conclusion_verified

    def to_json(self) -> dict:
        hyps = []
        for h in self.hypotheses:
            entry = {"name": h.name, "equation": h.equation, "holds": h.holds}
            if h.residual is not None:
                entry["residual"] = matrix_to_json(h.residual)
            hyps.append(entry)
        out = {
            "theorem": self.theorem_id,
            "hypotheses": hyps,
            "conclusion_verified": self.conclusion_verified,
        }
        if self.certificate is not None:
            out["defect_index"] = self.certificate.defect_index
        return out

    def render(self) -> str:
        lines = [f"{self.theorem_id}: conclusion matrix {REGISTRY_TEXT.get(self.theorem_id, '')}".rstrip()]
        for h in self.hypotheses:
            mark = "ok  " if h.holds else "FAIL"
            lines.append(f"  [{mark}] {h.equation}")
            if h.residual is not None:
                lines.extend("         " + line for line in str(h.residual).splitlines())
        if not self.conclusion_attempted:
            lines.append("  conclusion: not attempted (hypotheses violated)")
        elif self.conclusion_verified:
            lines.append(
                f"  conclusion: verified Hirano invertible, (x - x^3)^{self.certificate.defect_index} = 0"
            )
        else:
            lines.append("  conclusion: FAILED, x - x^3 is not nilpotent (counterexample)")
        return "\n".join(lines)


REGISTRY_TEXT = {tid: t.conclusion_text for tid, t in REGISTRY.items()}


def _validated_inputs(theorem: Theorem, inputs: Inputs) -> dict[str, Matrix]:
    missing = [r for r in theorem.roles if r not in inputs]
    if missing:
        raise MissingInput(f"{theorem.id} needs inputs {', '.join(theorem.roles)}; missing {', '.join(missing)}")
    picked = {r: inputs[r] for r in theorem.roles}
    n = picked[theorem.roles[0]].rows
    for role, m in picked.items():
        if m.shape != (n, n):
            raise DimensionMismatch(f"input {role} is {m.rows}x{m.cols}, expected {n}x{n}")
    return picked


def evaluate_hypotheses(theorem: str | Theorem, inputs: Inputs) -> tuple[HypothesisResult, ...]:
    theorem = get_theorem(theorem)
    picked = _validated_inputs(theorem, inputs)
    results = []
    for h in theorem.hypotheses:
        holds, residual = h.evaluate(picked)
        results.append(HypothesisResult(h.name, h.equation, holds, residual))
    return tuple(results)


def check_theorem(theorem: str | Theorem, inputs: Inputs) -> TheoremReport:
    theorem = get_theorem(theorem)
    picked = _validated_inputs(theorem, inputs)
    results = evaluate_hypotheses(theorem, picked)
    x = theorem.conclusion(picked)
    attempted = all(r.holds for r in results)
    cert = None
    if attempted and is_hirano(x) is not None:
        cert = hirano(x)
    return TheoremReport(
        theorem_id=theorem.id,
        inputs=picked,
        hypotheses=results,
        conclusion_matrix=x,
        conclusion_attempted=attempted,
        conclusion_verified=cert is not None,
        certificate=cert,
    )
