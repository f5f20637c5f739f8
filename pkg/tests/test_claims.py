import json

import pytest

from overschur.claims import (
    FAMILIES,
    CongruenceClaim,
    FamilyError,
    claim_budget,
    claims_from_json,
    claims_to_json,
    instantiate_family,
    known_progressions,
    printed_variant_claims,
    prewarm,
    run_claim,
    theorem_claims,
)
from overschur.verify import BANK, replay_counterexample


def test_family_instantiation_examples():
    for i in range(1, 5):
        c = instantiate_family("s3_padic_mod3", p=5, alpha=0, i=i)
        assert (c.a, c.b, c.m) == (600, 120 * i + 300, 3)
    c = instantiate_family("s3_5adic_mod3", alpha=0, i=1)
    assert (c.a, c.b, c.m) == (600, 220, 3)
    c = instantiate_family("s9_padic_mod12", p=5, alpha=0, i=2)
    assert (c.a, c.b, c.m) == (150, 135, 12)
    c = instantiate_family("s9_5adic_mod6", alpha=0, i=2)
    assert (c.a, c.b, c.m) == (150, 85, 6)


def test_coefficient_families():
    c = instantiate_family("s3_scaling_mod8", p=5, j=1)
    assert (c.kind, c.a, c.b, c.a2, c.b2, c.factor, c.m) == ("coefficient_identity", 300, 50, 12, 2, -5, 8)
    c = instantiate_family("s3_scaling_mod8_printed", p=5, j=1)
    assert (c.a, c.b) == (300, 25)
    c = instantiate_family("s3_descent_mod8", p=5, j=1, r=0)
    assert (c.a, c.b, c.a2, c.b2, c.factor) == (300, 50, 12, 2, -5)


def test_eigen_offsets():
    c = instantiate_family("s3_eigen_mod8", p=5, k=1)
    assert (c.a, c.b, c.m) == (300, 110, 8)
    c = instantiate_family("s3_eigen_mod8_printed", p=5, k=1)
    assert (c.a, c.b) == (300, 50)


@pytest.mark.parametrize("family,params", [
    ("s3_padic_mod3", {"p": 7, "alpha": 0, "i": 1}),
    ("s3_padic_mod3", {"p": 9, "alpha": 0, "i": 1}),
    ("s3_5adic_mod3", {"alpha": -1, "i": 1}),
    ("s3_5adic_mod3", {"alpha": 0}),
    ("s3_descent_mod8", {"p": 5, "j": 1, "r": 1}),
    ("no_such_family", {}),
])
def test_family_errors(family, params):
    with pytest.raises(FamilyError):
        instantiate_family(family, **params)


def test_json_round_trip():
    claims = theorem_claims() + printed_variant_claims()
    back = claims_from_json(claims_to_json(claims))
    assert back == claims
    assert [c.family_params for c in back] == [c.family_params for c in claims]


def test_suite_file_rejects_unknown_fields():
    d = theorem_claims()[0].to_dict()
    d["bogus"] = 1
    with pytest.raises(ValueError):
        claims_from_json(json.dumps([d]))
    with pytest.raises(ValueError):
        claims_from_json("{}")
    with pytest.raises(ValueError):
        CongruenceClaim("x", "nonsense", 3)
    with pytest.raises(ValueError):
        CongruenceClaim("x", "progression", 3, a=0)


def test_ids_unique():
    ids = [c.id for c in theorem_claims() + printed_variant_claims()]
    assert len(ids) == len(set(ids))


def test_budget():
    c = CongruenceClaim("x", "progression", 3, 12, 7, 8, 100)
    assert claim_budget(c) == (3, 8, 1208)
    assert claim_budget(c, n_max=10) == (3, 8, 128)
    s = CongruenceClaim("y", "series_congruence", 3, 24, 4, 3, rhs="2 * f1^4", trunc=300)
    assert claim_budget(s) == (3, 3, 24 * 299 + 5)


@pytest.fixture(scope="module")
def warmed():
    prewarm(theorem_claims() + printed_variant_claims())
    return BANK


@pytest.mark.parametrize("claim", theorem_claims(), ids=lambda c: c.id)
def test_theorem_claim_verifies(warmed, claim):
    rep = run_claim(claim)
    assert rep.passed, rep.summary()


@pytest.mark.parametrize("claim", printed_variant_claims(), ids=lambda c: c.id)
def test_printed_variant_fails(warmed, claim):
    rep = run_claim(claim)
    assert rep.verdict == "counterexample", rep.summary()
    replayed = replay_counterexample(rep, limit=120)
    assert replayed in (True, None)


def test_family_report_params(warmed):
    c = instantiate_family("s3_padic_mod3", 20, p=5, alpha=0, i=2)
    rep = run_claim(c)
    assert rep.params["family"] == "s3_padic_mod3"
    assert rep.params["family_params"] == {"p": 5, "alpha": 0, "i": 2}


def test_rerun_identical(warmed):
    c = theorem_claims()[5]
    assert run_claim(c).to_dict(timing=False) == run_claim(c).to_dict(timing=False)


def test_two_power_moduli():
    # the moduli that hold for 8n+j at t = 8 and 16
    for k in (3, 4):
        stated = [instantiate_family("power_of_2_8n", 200, k=k, j=j).m for j in range(1, 8)]
        observed = [instantiate_family("power_of_2_8n_observed", 200, k=k, j=j).m for j in range(1, 8)]
        assert stated == [2, 4, 8, 2, 8, 8, 32]
        assert observed == [2, 2, 4, 2, 8, 4, 16]


def test_s8_small_value_breaks_stated_modulus():
    rep = run_claim(instantiate_family("power_of_2_8n", 10, k=3, j=2))
    assert rep.counterexample["n"] == 0 and rep.counterexample["value"] == "2"


def test_known_progressions():
    assert {(6, 5, 4), (12, 7, 8), (12, 11, 16)} <= known_progressions(3)
    assert set(FAMILIES) >= {"s3_padic_mod3", "s9_padic_mod12", "power_of_2_8n"}
