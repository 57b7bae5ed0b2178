import json
from fractions import Fraction as F

import pytest

from nfcert.certifier import (CertifyError, Constraint, candidate_exponents,
                              certify_prime_value, certify_value,
                              congruence_filter, parity_filter,
                              reproduce_theorem, unit_exclusion,
                              verify_certificate, witness_search)

W2T3 = Constraint(2, torsion=3)
W2T5 = Constraint(2, torsion=5)
ALL3 = Constraint(3, lam=None)


def L(lam):
    return Constraint(3, lam=F(lam))


def test_constraint_validation():
    with pytest.raises(CertifyError):
        Constraint(2)
    with pytest.raises(CertifyError):
        Constraint(2, torsion=7)
    with pytest.raises(CertifyError):
        Constraint(3, torsion=3)
    with pytest.raises(CertifyError):
        Constraint(4)


def test_candidate_exponents():
    assert candidate_exponents(5) == {2, 3, 4, 5}
    assert candidate_exponents(7) == {2, 3, 4, 7}
    assert candidate_exponents(97) == {2, 3, 4, 7, 97}


def test_parity_filter():
    assert parity_filter({2, 3, 4, 5}) == {3, 5}
    assert parity_filter({2, 3, 4, 7}) == {3, 7}
    assert parity_filter({2, 3, 4, 7, 97}) == {3, 7, 97}


def test_congruence_filter():
    # 5 = -1 mod 3 kills d = 3 and keeps d = 5 only at p = 1 mod 3
    out = congruence_filter(3, 5, {3, 5})
    assert out[3] == [] and out[5] == [1]
    out = congruence_filter(5, -11, {3, 5, 11})
    assert out[3] == []
    out = congruence_filter(3, 7, {3})
    assert out[3] == [2]  # 1 + p + p^2 = 1 mod 3 exactly at p = 2 mod 3


def test_unit_exclusion():
    for cx in (ALL3, W2T3, W2T5, L(8)):
        assert certify_value(1, cx).verdict["status"] == "excluded"
        assert certify_value(-1, cx).verdict["status"] == "excluded"


def test_certify_rejects_bad_targets():
    with pytest.raises(CertifyError):
        certify_value(4, ALL3)
    with pytest.raises(CertifyError):
        certify_value(103, ALL3)


def test_prime_examples_weight3():
    assert certify_prime_value(5, ALL3).verdict["status"] == "excluded"
    v = certify_value(-5, L(1)).verdict
    assert v["status"] == "witness" and v["n"] == 9
    assert certify_value(-5, L(8)).verdict["status"] == "excluded"


def test_prime_examples_weight2():
    assert certify_value(5, W2T3).verdict["status"] == "excluded"
    assert certify_value(-11, W2T5).verdict["status"] == "excluded"
    # -3 = 0 mod 3 leaves the infinite d = 3 family open
    v = certify_value(-3, W2T3).verdict
    assert v["status"] == "inconclusive"


def test_composite_examples():
    # the claimed exclusion of +25 fails recomputation: a(5) = 0 at the inert
    # prime 5 gives a(25) = 25, so the verdict is a witness (documented
    # divergence; see the acceptance suite)
    v = certify_value(25, L(1)).verdict
    assert v["status"] == "witness" and v["n"] == 25
    v = certify_value(-25, L(1)).verdict
    assert v["status"] == "excluded"
    v = certify_value(-69, L(8)).verdict
    assert v["status"] == "witness" and v["n"] == 169
    assert certify_value(-7, W2T3).verdict["status"] == "excluded"
    v = certify_value(99, L(8)).verdict
    assert v["status"] == "witness" and v["n"] == 225
    v = certify_value(81, L(8)).verdict
    assert v["status"] == "witness" and v["n"] == 81


def test_twin_lambdas_agree():
    for alpha in (-69, 11, -11, 9, -9, 99, -99):
        a = certify_value(alpha, L(8)).verdict["status"]
        b = certify_value(alpha, L("1/8")).verdict["status"]
        assert a == b, alpha


def test_grh_handling():
    cert = certify_value(-41, Constraint(3, lam=None, grh=True))
    assert cert.verdict["status"] == "excluded-under-grh" and cert.grh_used
    cert = certify_value(-41, Constraint(3, lam=None, grh=False))
    assert cert.verdict["status"] == "inconclusive"
    # monotonicity: anything excluded without grh stays excluded with it
    for alpha in (5, -7, 21, 33):
        assert certify_value(alpha, Constraint(3, lam=None, grh=False)).verdict["status"] == "excluded"
        assert certify_value(alpha, Constraint(3, lam=None, grh=True)).verdict["status"] == "excluded"


def test_all_lambda_keeps_unprovable_values_open():
    # values the uniform scenario must not claim: each has a surviving locus
    for alpha in (-5, 7, 23, -37, 27, 75, -21):
        v = certify_value(alpha, ALL3).verdict
        assert v["status"] == "inconclusive", alpha


def test_witness_search():
    assert witness_search(-5, F(1), 200) == [9]
    assert witness_search(99, F(8), 300) == [225]
    assert witness_search(2, F(8), 300) == []
    assert witness_search(-11, F(1), 200) == [81]
    assert witness_search(55, F(1), 1400) == []  # the published 27^2 value is 559
    assert witness_search(559, F(1), 1400) == [729]


def test_locus_validity():
    """Surviving loci satisfy the defining equation, primality, parity, and
    the coefficient bound."""
    from nfcert.arith import is_prime
    from nfcert.certifier import _certify_core, _u_value

    for alpha in (-5, 7, 23, 27, 75, -37, -93, 81):
        core = _certify_core(alpha, ALL3)
        for s in core["survivors"]:
            assert is_prime(s["p"]) and s["p"] % 2 == 1
            assert s["a"] % 2 == 0
            assert s["a"] ** 2 <= 4 * s["p"] ** 2
            assert _u_value(s["a"], s["chi"] * s["p"] ** 2, s["d"]) == alpha


def test_certificate_roundtrip_and_replay():
    cert = certify_value(-69, L(8))
    doc = json.loads(cert.to_json())
    ok, msg = verify_certificate(doc)
    assert ok, msg
    doc["verdict"]["status"] = "excluded"
    ok, msg = verify_certificate(doc)
    assert not ok and "verdict" in msg


def test_certificate_replay_detects_step_tampering():
    cert = certify_value(5, ALL3)
    doc = json.loads(cert.to_json())
    for step in doc["steps"]:
        if step.get("kind") == "equation" and step["solutions"]:
            step["solutions"] = step["solutions"][1:]
            break
    ok, msg = verify_certificate(doc)
    assert not ok


def test_reproduce_report_shape():
    r = reproduce_theorem("1.1-2", grh=False)
    assert r["ok"] and len(r["values"]) == 6
    r = reproduce_theorem("1.2-λ8", grh=False)  # alias spelling
    assert r["ok"]
    assert any(w["n"] == 169 for w in r["witnesses"])


def test_soundness_no_excluded_value_is_attained():
    """Scan every expansion for every excluded value of its case."""
    from nfcert.certifier import _claims
    from nfcert.newform import SINGULAR_LAMBDAS

    doc = _claims()
    for case, claims in doc["cases"].items():
        if claims["weight"] != 3 or claims["lambdas"] == ["all"]:
            continue
        divergent = {d["alpha"] for d in doc["known_divergences"].get(case, [])}
        for lam_s in claims["lambdas"]:
            lam = F(lam_s)
            cx = Constraint(3, lam=lam, grh=True)
            for alpha in claims["unconditional"] + claims["grh"]:
                status = certify_value(alpha, cx).verdict["status"]
                hits = [n for n in witness_search(alpha, lam, 2048) if n > 1]
                if status in ("excluded", "excluded-under-grh"):
                    assert not hits, (case, lam_s, alpha, hits)
                else:
                    assert alpha in divergent, (case, lam_s, alpha, status)
