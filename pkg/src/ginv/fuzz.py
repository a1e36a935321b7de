"""Seeded instance generators, independent oracles and fuzz campaigns.

Hypotheses such as ``b^D a = 0`` are exact annihilation conditions that
random sampling essentially never hits, so every generator builds its
instance in a basis adapted to the hypotheses (``b = diag(b1, b2)`` with
``b1`` invertible and ``b2`` nilpotent, ``a`` block triangular, ...) and
then conjugates all inputs by one random invertible ``S``.  All hypotheses
are similarity invariant, so they survive the conjugation.

Randomness for a trial comes from ``(seed, trial)`` only, so any failure can
be replayed from those two numbers.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .antitri import REGISTRY, TheoremReport, check_theorem, evaluate_hypotheses, get_theorem
from .errors import GenerationExhausted, UnknownTheorem
from .exactcore import (
    Matrix,
    Scalar,
    column_basis,
    mat_inverse,
    matrix_to_json,
    nilpotency_index,
    nullspace,
    rank,
    rank_factorization,
)
from .geninv import is_hirano, strongly_drazin

MAX_ATTEMPTS = 50
COMPLEX_RATE = 0.25


# oracles


def oracle_verify_hirano(a: Matrix, x: Matrix) -> bool:
    """Check ``ax = xa``, ``x = xax`` and ``a^2 - ax`` nilpotent directly."""
    if not (a.is_square and a.shape == x.shape):
        return False
    ax = a @ x
    return ax == x @ a and x @ ax == x and nilpotency_index(a @ a - ax) is not None


def drazin_core_nilpotent(a: Matrix) -> Matrix:
    """Drazin inverse through the core-nilpotent splitting.

    With ``k`` the index, ``V = [range(a^k) | ker(a^k)]`` block-diagonalises
    ``a`` as ``diag(C, N)`` with ``C`` invertible; then
    ``a^D = V diag(C^{-1}, 0) V^{-1}``.  Shares nothing with the spectral
    projector route beyond basic arithmetic.
    """
    n = a.rows
    p, r = a, rank(a)
    while True:
        nxt = p @ a
        r_next = rank(nxt)
        if r_next == r:
            break
        p, r = nxt, r_next
    if r == 0:
        return Matrix.zero(n)
    if r == n:
        return mat_inverse(a)
    v = Matrix.block([[column_basis(p), nullspace(p)]])
    v_inv = mat_inverse(v)
    c = (v_inv @ a @ v).submatrix(0, r, 0, r)
    return v @ Matrix.block_diag(mat_inverse(c), Matrix.zero(n - r)) @ v_inv


# random building blocks


def _scalar(rng, bound, cx):
    re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) if cx and rng.random() < 0.5 else 0
    return Scalar(re, im)


def _random(rng, r, c, bound, cx, density=0.7):
    return Matrix([[_scalar(rng, bound, cx) if rng.random() < density else 0 for _ in range(c)] for _ in range(r)])


def _invertible(rng, n, bound, cx):
    for _ in range(100):
        s = _random(rng, n, n, bound, cx, density=0.8)
        if rank(s) == n:
            return s
    raise GenerationExhausted("could not draw an invertible matrix")


def _triangular(rng, n, diag, bound, cx):
    """Upper triangular with diagonal entries drawn from ``diag``."""
    return Matrix(
        [
            [rng.choice(diag) if i == j else (_scalar(rng, bound, cx) if j > i and rng.random() < 0.6 else 0)
             for j in range(n)]
            for i in range(n)
        ]
    )


HIRANO_DIAG = (-1, 0, 1)


def _blocks(sizes, entries: dict) -> Matrix:
    """Block matrix on the partition ``sizes``; absent blocks are zero and
    empty parts are skipped."""
    live = [i for i, s in enumerate(sizes) if s > 0]
    grid = []
    for i in live:
        row = []
        for j in live:
            m = entries.get((i, j))
            row.append(Matrix.zero(sizes[i], sizes[j]) if m is None else m)
        grid.append(row)
    return Matrix.block(grid)


def _maybe(builder, size):
    return builder(size) if size > 0 else None


def _split(rng, n, parts):
    """Random composition of ``n`` into ``parts`` non-negative sizes."""
    cuts = sorted(rng.randint(0, n) for _ in range(parts - 1))
    bounds = [0, *cuts, n]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def _conjugate(ms: dict, s: Matrix) -> dict:
    s_inv = mat_inverse(s)
    return {k: s @ m @ s_inv for k, m in ms.items()}


def _sd_block(rng, n, bound, cx):
    """``diag(U, N)``: unit-diagonal upper triangular U, strictly upper N."""
    k = rng.randint(0, n)
    return _blocks(
        [k, n - k],
        {
            (0, 0): _maybe(lambda s: _triangular(rng, s, (1,), bound, cx), k),
            (1, 1): _maybe(lambda s: _triangular(rng, s, (0,), bound, cx), n - k),
        },
    )


def _poly_in(rng, nil: Matrix, constant, bound, cx) -> Matrix:
    acc = Matrix.identity(nil.rows).scale(constant)
    power = nil
    for _ in range(1, nil.rows):
        if rng.random() < 0.7:
            acc = acc + power.scale(_scalar(rng, bound, cx))
        power = power @ nil
    return acc


# per-theorem constructions in an adapted basis


def _gen_lem22(rng, n, bound, cx, active):
    a = _triangular(rng, n, HIRANO_DIAG, bound, cx)
    b = _triangular(rng, n, HIRANO_DIAG, bound, cx)
    b = _conjugate({"b": b}, _invertible(rng, n, bound, cx))["b"]
    return {"a": a, "b": b, "c": _random(rng, n, n, bound, cx)}


def _gen_lem24(rng, n, bound, cx, active):
    # range(b) inside span(e_1..e_k), which a annihilates
    k, m = _split(rng, n, 2)
    hir = lambda s: _triangular(rng, s, HIRANO_DIAG, bound, cx)  # noqa: E731
    rnd = lambda r, c: _random(rng, r, c, bound, cx) if r and c else None  # noqa: E731
    a = _blocks([k, m], {(0, 1): rnd(k, m), (1, 1): _maybe(hir, m)})
    b = _blocks([k, m], {(0, 0): _maybe(hir, k), (0, 1): rnd(k, m)})
    return {"a": a, "b": b}


def _gen_thm25(rng, n, bound, cx, active):
    # ranges of a and b lie in V1+V2, b maps V1+V2 into V1, and a kills V1,
    # so ab vanishes on range(a) + range(b) while ab itself need not be 0
    k1, k2, k3 = _split(rng, n, 3)
    hir = lambda s: _triangular(rng, s, HIRANO_DIAG, bound, cx)  # noqa: E731
    rnd = lambda r, c: _random(rng, r, c, bound, cx) if r and c else None  # noqa: E731
    sizes = [k1, k2, k3]
    a = _blocks(sizes, {(0, 1): rnd(k1, k2), (0, 2): rnd(k1, k3), (1, 1): _maybe(hir, k2), (1, 2): rnd(k2, k3)})
    b = _blocks(
        sizes,
        {(0, 0): _maybe(hir, k1), (0, 1): rnd(k1, k2), (0, 2): rnd(k1, k3), (1, 2): rnd(k2, k3)},
    )
    return {"a": a, "b": b}


def _anti_pair(rng, n, bound, cx, diag, zero_top=True, nil_coupled=True):
    """``a``, ``b`` with ``b = diag(b1, b2)``, ``b^D a = 0`` and ``b2 a2 = 0``.

    ``b1`` is unit upper triangular; the nilpotent block is split as
    ``(r, q)`` with ``a2 = [[T, Y], [0, 0]]`` and ``b2 = [[0, Z], [0, N]]``, so
    ``b2`` kills the range of ``a2``.  With ``zero_top=False`` the first block
    row of ``a`` gets a Hirano ``a0`` instead of zero, which breaks
    ``b^D a = 0`` on purpose.
    """
    k, r, q = _split(rng, n, 3)
    rnd = lambda rr, cc: _random(rng, rr, cc, bound, cx) if rr and cc else None  # noqa: E731
    tri = lambda s, dg: _triangular(rng, s, dg, bound, cx) if s else None  # noqa: E731
    sizes = [k, r, q]
    a = _blocks(
        sizes,
        {
            (0, 0): None if zero_top else tri(k, diag),
            (1, 0): rnd(r, k),
            (2, 0): rnd(q, k),
            (1, 1): tri(r, diag) if nil_coupled else None,
            (1, 2): rnd(r, q) if nil_coupled else None,
        },
    )
    b = _blocks(sizes, {(0, 0): tri(k, (1,)), (1, 2): rnd(r, q), (2, 2): tri(q, (0,))})
    return a, b


def _gen_thm31(rng, n, bound, cx, active):
    a, b = _anti_pair(rng, n, bound, cx, HIRANO_DIAG, zero_top="bDa_zero" in active)
    return {"a": a, "b": b}


def _gen_thm35(rng, n, bound, cx, active):
    a, b = _anti_pair(rng, n, bound, cx, (0, 1), zero_top="bDa_zero" in active)
    return {"a": a, "b": b}


def _commuting_pair(rng, n, bound, cx, a_consts, with_a1):
    """``b = diag(b1, b2)``, ``a = [[0, 0], [a1, a2]]`` with ``a2, b2``
    polynomials in one shared strictly upper triangular nilpotent."""
    k, m = _split(rng, n, 2)
    b1 = _triangular(rng, k, (1,), bound, cx) if k else None
    if m:
        nil = _triangular(rng, m, (0,), bound, cx)
        a2 = _poly_in(rng, nil, rng.choice(a_consts), bound, cx)
        b2 = _poly_in(rng, nil, 0, bound, cx)
    else:
        a2 = b2 = None
    a1 = _random(rng, m, k, bound, cx) if with_a1 and m and k else None
    a = _blocks([k, m], {(1, 0): a1, (1, 1): a2})
    b = _blocks([k, m], {(0, 0): b1, (1, 1): b2})
    return a, b


def _gen_thm41(rng, n, bound, cx, active):
    a, b = _commuting_pair(rng, n, bound, cx, HIRANO_DIAG, with_a1=True)
    return {"a": a, "b": b}


def _gen_cor43(rng, n, bound, cx, active):
    a, b = _commuting_pair(rng, n, bound, cx, (0, 1), with_a1=False)
    return {"a": a, "b": b}


def _gen_cor42(rng, n, bound, cx, active):
    a, g = _commuting_pair(rng, n, bound, cx, HIRANO_DIAG, with_a1=False)
    # factor g = c b through [F | Z] R and R^{-1} [G; 0]
    fac = rank_factorization(g)
    rmix = _invertible(rng, n, bound, cx)
    if fac is None:
        c, b = _random(rng, n, n, bound, cx), Matrix.zero(n)
    else:
        f, gg = fac
        r = f.cols
        if r < n:
            f = Matrix.block([[f, _random(rng, n, n - r, bound, cx)]])
            gg = Matrix.block([[gg], [Matrix.zero(n - r, n)]])
        c, b = f @ rmix, mat_inverse(rmix) @ gg
    return {"a": a, "b": b, "c": c}


def _factor_bcd(rng, g, bound, cx, coupled):
    """``b, c, d`` with ``bc = g`` and ``bdc = 0``, ``bd^2 = 0``
    (``bd = 0`` as well when not ``coupled``).

    Coordinates split as ``V1 (k) + V2 (n-k)`` with ``b = [Bcol | 0]`` so
    ``ker b`` contains ``V2``, ``d = [[D11, 0], [D21, D22]]`` with
    ``D11 = [[0, X], [0, 0]]`` (square zero), and ``c``'s ``V1`` part taking
    values in ``ker D11``.
    """
    n = g.rows
    fac = rank_factorization(g)
    r = 0 if fac is None else fac[0].cols
    s = rng.randint(r, n)
    k = rng.randint(s, n)
    if k == 0:
        k = s = 1  # r = 0 here, so b = [Bcol | 0] with c's V1 row zero
    if fac is None:
        bcol = _random(rng, n, k, bound, cx)
        c1 = Matrix.zero(k, n)
    else:
        f, gg = fac
        w = _invertible(rng, s, bound, cx)
        w_inv = mat_inverse(w)
        e1 = w.submatrix(0, s, 0, r)
        l1 = w_inv.submatrix(0, r, 0, s)
        e = e1 if k == s else Matrix.block([[e1], [Matrix.zero(k - s, r)]])
        e_left = l1 if k == s else Matrix.block([[l1, _random(rng, r, k - s, bound, cx)]])
        bcol, c1 = f @ e_left, e @ gg
    rest = n - k
    b = bcol if rest == 0 else Matrix.block([[bcol, Matrix.zero(n, rest)]])
    c = c1 if rest == 0 else Matrix.block([[c1], [_random(rng, rest, n, bound, cx)]])
    x = _random(rng, s, k - s, bound, cx) if coupled and s and k - s else None
    d11 = _blocks([s, k - s], {(0, 1): x})
    d = _blocks(
        [k, rest],
        {
            (0, 0): d11,
            (1, 0): _random(rng, rest, k, bound, cx) if rest else None,
            (1, 1): _triangular(rng, rest, HIRANO_DIAG, bound, cx) if rest else None,
        },
    )
    return b, c, d


def _gen_cor32(rng, n, bound, cx, active):
    a, g = _anti_pair(rng, n, bound, cx, HIRANO_DIAG)
    mixed = _conjugate({"a": a, "g": g}, _invertible(rng, n, bound, cx))
    b, c, d = _factor_bcd(rng, mixed["g"], bound, cx, coupled=True)
    return {"a": mixed["a"], "b": b, "c": c, "d": d}


def _gen_cor33(rng, n, bound, cx, active):
    # a (bc)^pi = 0 forces a2 = 0 in the split basis of bc
    a, g = _anti_pair(rng, n, bound, cx, HIRANO_DIAG, nil_coupled=False)
    mixed = _conjugate({"a": a, "g": g}, _invertible(rng, n, bound, cx))
    b, c, d = _factor_bcd(rng, mixed["g"], bound, cx, coupled=False)
    return {"a": mixed["a"], "b": b, "c": c, "d": d}


def _gen_thm44(rng, n, bound, cx, active):
    # basis (W, K) with K inside ker b and a = 1 on W modulo K, so b(a - 1) = 0
    w, k = _split(rng, n, 2)
    a = _blocks(
        [w, k],
        {
            (0, 0): Matrix.identity(w) if w else None,
            (1, 0): _random(rng, k, w, bound, cx) if w and k else None,
            (1, 1): _triangular(rng, k, HIRANO_DIAG, bound, cx) if k else None,
        },
    )
    b = _blocks(
        [w, k],
        {
            (0, 0): _sd_block(rng, w, bound, cx) if w else None,
            (1, 0): _random(rng, k, w, bound, cx) if w and k else None,
        },
    )
    return {"a": a, "b": b}


def _gen_cor45(rng, n, bound, cx, active):
    # range(b) inside span(R), on which a acts as the identity: (a - 1) b = 0
    w, k = _split(rng, n, 2)
    a = _blocks(
        [w, k],
        {
            (0, 0): Matrix.identity(w) if w else None,
            (0, 1): _random(rng, w, k, bound, cx) if w and k else None,
            (1, 1): _triangular(rng, k, HIRANO_DIAG, bound, cx) if k else None,
        },
    )
    b = _blocks(
        [w, k],
        {
            (0, 0): _sd_block(rng, w, bound, cx) if w else None,
            (0, 1): _random(rng, w, k, bound, cx) if w and k else None,
        },
    )
    return {"a": a, "b": b}


GENERATORS: dict[str, Callable] = {
    "lem2.2": _gen_lem22,
    "lem2.4": _gen_lem24,
    "thm2.5": _gen_thm25,
    "thm3.1": _gen_thm31,
    "cor3.2": _gen_cor32,
    "cor3.3": _gen_cor33,
    "thm3.5": _gen_thm35,
    "thm4.1": _gen_thm41,
    "cor4.2": _gen_cor42,
    "cor4.3": _gen_cor43,
    "thm4.4": _gen_thm44,
    "cor4.5": _gen_cor45,
}


# public generators


def _trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{trial}")


def gen_strongly_drazin(dim: int, seed: int, entry_bound: int = 3) -> Matrix:
    """``S diag(U, N) S^{-1}`` with U unit upper triangular, N strictly upper."""
    rng = _trial_rng(seed, 0)
    cx = rng.random() < COMPLEX_RATE
    j = _sd_block(rng, dim, entry_bound, cx)
    out = _conjugate({"j": j}, _invertible(rng, dim, entry_bound, cx))["j"]
    if strongly_drazin(out) is None:
        raise GenerationExhausted("strongly Drazin generator produced an invalid matrix")
    return out


def gen_hirano(dim: int, seed: int, entry_bound: int = 3) -> Matrix:
    """``S T S^{-1}`` with T upper triangular, diagonal in {-1, 0, 1}."""
    rng = _trial_rng(seed, 0)
    cx = rng.random() < COMPLEX_RATE
    t = _triangular(rng, dim, HIRANO_DIAG, entry_bound, cx)
    out = _conjugate({"t": t}, _invertible(rng, dim, entry_bound, cx))["t"]
    if is_hirano(out) is None:
        raise GenerationExhausted("Hirano generator produced an invalid matrix")
    return out


@dataclass(frozen=True)
class GenSpec:
    theorem_id: str
    dim: int = 2
    seed: int = 0
    entry_bound: int = 3
    trials: int = 1
    dim_max: int | None = None

    def __post_init__(self):
        if self.dim < 1 or self.trials < 1 or self.entry_bound < 1:
            raise ValueError("dim, trials and entry_bound must all be >= 1")
        if self.dim_max is not None and self.dim_max < self.dim:
            raise ValueError("dim_max must be >= dim")

    def dim_for(self, trial: int) -> int:
        if self.dim_max is None:
            return self.dim
        return self.dim + trial % (self.dim_max - self.dim + 1)

    def to_json(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "dim": self.dim,
            "dim_max": self.dim_max,
            "seed": self.seed,
            "entry_bound": self.entry_bound,
            "trials": self.trials,
        }


def _generate(theorem, rng, n, bound):
    if theorem.id not in GENERATORS:
        raise UnknownTheorem(theorem.id)
    gen = GENERATORS[theorem.id]
    active = theorem.hypothesis_names
    for attempt in range(MAX_ATTEMPTS):
        cx = rng.random() < COMPLEX_RATE
        raw = gen(rng, n, bound, cx, active)
        inputs = _conjugate(raw, _invertible(rng, n, bound, cx))
        if all(h.holds for h in evaluate_hypotheses(theorem, inputs)):
            return inputs, attempt
    raise GenerationExhausted(f"{theorem.id}: no valid instance after {MAX_ATTEMPTS} attempts")


def gen_instance(spec: GenSpec, trial: int = 0, disabled: tuple[str, ...] = ()) -> dict[str, Matrix]:
    theorem = get_theorem(spec.theorem_id).without(*disabled)
    inputs, _ = _generate(theorem, _trial_rng(spec.seed, trial), spec.dim_for(trial), spec.entry_bound)
    return inputs


# campaigns


@dataclass(frozen=True)
class FuzzFailure:
    trial: int
    dim: int
    reason: str
    inputs: dict[str, Matrix]
    report: TheoremReport

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "dim": self.dim,
            "reason": self.reason,
            "inputs": {k: matrix_to_json(v) for k, v in self.inputs.items()},
            "conclusion_matrix": matrix_to_json(self.report.conclusion_matrix),
            "report": self.report.to_json(),
        }


@dataclass(frozen=True)
class FuzzReport:
    spec: GenSpec
    passed: int
    hypothesis_rejections: int
    failures: tuple[FuzzFailure, ...] = field(default=())
    disabled: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {
            "spec": self.spec.to_json(),
            "passed": self.passed,
            "hypothesis_rejections": self.hypothesis_rejections,
            "failures": [f.to_json() for f in self.failures],
        }
        if self.disabled:
            out["disabled_hypotheses"] = list(self.disabled)
        return out

    def render(self) -> str:
        s = self.spec
        dims = f"{s.dim}" if s.dim_max is None else f"{s.dim}-{s.dim_max}"
        head = (
            f"{s.theorem_id}: {self.passed}/{s.trials} passed "
            f"(dims {dims}, seed {s.seed}, rejections {self.hypothesis_rejections})"
        )
        lines = [head]
        for f in self.failures[:5]:
            lines.append(f"  trial {f.trial} (dim {f.dim}): {f.reason}")
        if len(self.failures) > 5:
            lines.append(f"  ... {len(self.failures) - 5} more")
        return "\n".join(lines)


def _run_trial(theorem_id, disabled, seed, trial, n, bound):
    theorem = REGISTRY[theorem_id].without(*disabled)
    inputs, rejections = _generate(theorem, _trial_rng(seed, trial), n, bound)
    report = check_theorem(theorem, inputs)
    if not report.all_hold:
        reason = "generated instance violates " + ", ".join(h.equation for h in report.violated)
    elif not report.conclusion_verified:
        reason = "conclusion not Hirano invertible"
    elif not oracle_verify_hirano(report.conclusion_matrix, report.certificate.inverse):
        reason = "certificate inverse rejected by the axiom oracle"
    else:
        return rejections, None
    return rejections, FuzzFailure(trial, n, reason, inputs, report)


def run_fuzz(spec: GenSpec, disabled: tuple[str, ...] = (), workers: int = 1) -> FuzzReport:
    """Generate, check and oracle-verify ``spec.trials`` instances.

    ``disabled`` drops named hypotheses from the checker (and the generator
    stops enforcing them), which is how the harness is shown to catch false
    statements.  Results are assembled in trial order whatever ``workers``.
    """
    get_theorem(spec.theorem_id).without(*disabled)  # fail fast on bad ids
    jobs = [
        (spec.theorem_id, tuple(disabled), spec.seed, t, spec.dim_for(t), spec.entry_bound)
        for t in range(spec.trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, *zip(*jobs), chunksize=4))
    else:
        results = [_run_trial(*job) for job in jobs]
    failures = tuple(f for _, f in results if f is not None)
    return FuzzReport(
        spec=spec,
        passed=spec.trials - len(failures),
        hypothesis_rejections=sum(r for r, _ in results),
        failures=failures,
        disabled=tuple(disabled),
    )
