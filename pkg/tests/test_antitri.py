import pytest

from conftest import M
from ginv.antitri import (
    REGISTRY,
    anti_triangular_idempotent,
    build_anti_triangular,
    check_theorem,
    evaluate_hypotheses,
    get_theorem,
    peirce_split,
)
from ginv.errors import DimensionMismatch, MissingInput, NotIdempotent, UnknownTheorem
from ginv.exactcore import Matrix, identity, zero
from ginv.fuzz import GenSpec, gen_instance
from ginv.geninv import drazin, is_hirano
from ginv.worked_examples import EX36_A, EX36_B, EX36_M, EX52_A, EX52_B, EX52_X, EX53_A, EX53_B

N2 = M([[0, 1], [0, 0]])


def test_build_examples():
    assert build_anti_triangular(EX36_A, EX36_B) == EX36_M
    assert build_anti_triangular(zero(1, 1), zero(1, 1)) == N2
    assert build_anti_triangular(EX52_A, EX52_B) == M(
        [[0, 0, 1, 0], [0, 1, 0, 1], [1, 0, 0, 0], [1, 0, 0, 0]]
    )
    with pytest.raises(DimensionMismatch):
        build_anti_triangular(zero(2, 2), zero(1, 1))


def test_peirce_trivial_idempotents():
    x = M([[1, 2], [3, 4]])
    p = peirce_split(x, identity(2))
    assert p.alpha == x and p.beta.is_zero() and p.gamma.is_zero() and p.delta.is_zero()
    p = peirce_split(x, zero(2, 2))
    assert p.delta == x and p.alpha.is_zero() and p.beta.is_zero() and p.gamma.is_zero()
    with pytest.raises(NotIdempotent):
        peirce_split(x, M([[2, 0], [0, 0]]))


def test_peirce_anti_triangular_blocks():
    a, b = EX52_A, EX52_B
    e = anti_triangular_idempotent(b)
    p = peirce_split(EX52_X, e)
    assert p.total() == EX52_X
    b_pi = identity(2) - b @ drazin(b).inverse
    expected = Matrix.block([[b_pi @ a, b_pi], [b @ b_pi, zero(2, 2)]])
    assert p.beta + p.gamma + p.delta == expected
    assert EX52_X - p.alpha == expected


def test_peirce_annihilation_relations():
    # e x (1-e) lives only in the beta corner, etc.
    x = gen_instance(GenSpec("thm3.1", dim=3, seed=4))
    big = build_anti_triangular(x["a"], x["b"])
    e = anti_triangular_idempotent(x["b"])
    f = identity(6) - e
    p = peirce_split(big, e)
    assert (f @ p.alpha).is_zero() and (p.alpha @ f).is_zero()
    assert (p.beta @ e).is_zero() and (f @ p.beta).is_zero()
    assert (p.gamma @ f).is_zero() and (e @ p.gamma).is_zero()
    assert (e @ p.delta).is_zero() and (p.delta @ e).is_zero()


def test_thm31_sub_claims():
    # under the thm3.1 hypotheses the delta block is nilpotent and alpha is Hirano
    for seed in range(10):
        inp = gen_instance(GenSpec("thm3.1", dim=3, seed=seed))
        big = build_anti_triangular(inp["a"], inp["b"])
        p = peirce_split(big, anti_triangular_idempotent(inp["b"]))
        assert is_hirano(p.delta) is not None
        assert is_hirano(p.alpha) is not None
        assert is_hirano(big) is not None


def test_registry_ids():
    assert set(REGISTRY) == {
        "lem2.2", "lem2.4", "thm2.5", "thm3.1", "cor3.2", "cor3.3",
        "thm3.5", "thm4.1", "cor4.2", "cor4.3", "thm4.4", "cor4.5",
    }
    with pytest.raises(UnknownTheorem):
        get_theorem("thm9.9")


def test_check_example_52():
    r = check_theorem("thm3.1", {"a": EX52_A, "b": EX52_B})
    assert len(r.hypotheses) == 4
    assert r.all_hold and r.conclusion_verified
    assert r.certificate.source == r.conclusion_matrix == EX52_X


def test_check_example_53():
    r = check_theorem("thm4.1", {"a": EX53_A, "b": EX53_B})
    assert r.all_hold and r.conclusion_verified


def test_check_deliberate_violation():
    r = check_theorem("thm3.1", {"a": identity(2), "b": identity(2)})
    bad = [h for h in r.hypotheses if h.name == "bDa_zero"][0]
    assert not bad.holds and bad.residual == identity(2)
    assert not r.conclusion_attempted and not r.conclusion_verified
    assert not r.counterexample


def test_check_cor43_nilpotent_pair():
    r = check_theorem("cor4.3", {"a": N2, "b": N2})
    assert r.all_hold and r.conclusion_verified


def test_thm44_counterexample():
    one = M([[1]])
    r = check_theorem("thm4.4", {"a": one, "b": one})
    assert r.all_hold
    assert r.conclusion_matrix == M([[1, 1], [1, 0]])
    assert not r.conclusion_verified and r.counterexample
    r = check_theorem("cor4.5", {"a": one, "b": one})
    assert r.counterexample


def test_report_json_keys():
    r = check_theorem("thm3.1", {"a": EX52_A, "b": EX52_B})
    out = r.to_json()
    assert out["theorem"] == "thm3.1" and out["conclusion_verified"] is True
    assert {"name", "equation", "holds"} <= set(out["hypotheses"][0])
    assert out["defect_index"] == r.certificate.defect_index
    assert "conclusion: verified" in r.render()


def test_input_validation():
    with pytest.raises(MissingInput):
        check_theorem("cor3.2", {"a": N2, "b": N2})
    with pytest.raises(DimensionMismatch):
        check_theorem("lem2.4", {"a": N2, "b": zero(3, 3)})


def test_without_drops_hypothesis():
    t = get_theorem("thm3.1").without("bDa_zero")
    assert "bDa_zero" not in t.hypothesis_names
    assert len(evaluate_hypotheses(t, {"a": identity(2), "b": identity(2)})) == 3
    with pytest.raises(KeyError):
        get_theorem("thm3.1").without("nope")
