import pytest

from overschur.combinatorics import schur_over_oracle
from overschur.report import VerificationReport
from overschur.verify import (
    MAX_PRECISION,
    PrecisionBudgetError,
    SeriesBank,
    check_coefficient_identity,
    check_mod4_classification,
    check_progression,
    check_series_congruence,
    mod4_expected,
    replay_counterexample,
    scan,
)


@pytest.fixture(scope="module")
def bank():
    return SeriesBank()


def test_progression_examples(bank):
    assert check_progression(3, 6, 5, 4, 500, bank=bank).passed
    assert check_progression(3, 24, 0, 3, 500, exclusions=(0,), bank=bank).passed
    rep = check_progression(3, 2, 0, 5, 10, bank=bank)
    assert rep.verdict == "counterexample"
    # the first failure is n = 0 (S3(0) = 1); with it excluded, n = 1 and S3(2) = 2
    assert rep.counterexample == {"n": 0, "value": "1", "residue": 1}
    rep = check_progression(3, 2, 0, 5, 10, exclusions=(0,), bank=bank)
    assert rep.counterexample == {"n": 1, "value": "2", "residue": 2}


def test_zero_needs_exclusion(bank):
    rep = check_progression(3, 24, 0, 3, 500, bank=bank)
    assert rep.counterexample["n"] == 0 and rep.counterexample["value"] == "1"


def test_series_congruence_examples(bank):
    assert check_series_congruence((3, 24, 4), "2 * f1^4", 3, 300, bank=bank).passed
    assert check_series_congruence((3, 12, 2), "2 * f1^4", 8, 300, bank=bank).passed
    assert check_series_congruence((3, 24, 12), "psi(q) * psi(q^3)", 3, 300, bank=bank).passed
    rep = check_series_congruence((3, 24, 4), "f1^4", 3, 300, bank=bank)
    assert rep.counterexample["n"] == 0 and rep.counterexample["residue"] == 1


def test_coefficient_identity_examples(bank):
    assert check_coefficient_identity(3, 27, 0, 3, 0, 1, 3, 300, bank=bank).passed
    assert check_coefficient_identity(3, 300, 50, 12, 2, -5, 8, 80, bank=bank).passed
    assert check_coefficient_identity(5, 7, 3, 7, 3, 1, 11, 50, bank=bank).passed


def test_scaling_example_with_odd_offset_fails(bank):
    # offset p^2 instead of 2 p^2: n = 0 happens to agree (206 = -10 mod 8), n = 1 does not
    rep = check_coefficient_identity(3, 300, 25, 12, 2, -5, 8, 80, bank=bank)
    assert rep.verdict == "counterexample"
    assert rep.counterexample["n"] == 1
    assert (schur_over_oracle(3, 325) + 5 * schur_over_oracle(3, 14)) % 8 != 0


def test_mod4_expected_examples():
    assert mod4_expected(3, 9) == 2 and schur_over_oracle(3, 9) % 4 == 2
    assert all(mod4_expected(t, 0, r) == 1 for t in (3, 9) for r in ("literal", "corrected"))
    assert mod4_expected(9, 9) == 0 and schur_over_oracle(9, 9) % 4 == 0
    # square t: 2 t j^2 is predicted 2 by the literal rule but S9(18) = 0 mod 4
    assert mod4_expected(9, 18, "literal") == 2
    assert mod4_expected(9, 18, "corrected") == 0
    assert schur_over_oracle(9, 18) % 4 == 0
    with pytest.raises(ValueError):
        mod4_expected(9, 5, "other")


@pytest.mark.parametrize("t", [3, 5, 7, 15])
def test_mod4_non_square(bank, t):
    assert check_mod4_classification(t, 3000, bank=bank).passed


@pytest.mark.parametrize("t,first", [(9, 18), (25, 50)])
def test_mod4_square_literal_and_corrected(bank, t, first):
    lit = check_mod4_classification(t, 3000, "literal", bank=bank)
    assert lit.counterexample["n"] == first
    assert check_mod4_classification(t, 3000, "corrected", bank=bank).passed


def test_mod4_rejects_even_t(bank):
    with pytest.raises(ValueError):
        check_mod4_classification(8, 10, bank=bank)


def test_reports_are_reproducible(bank):
    a = check_progression(3, 12, 7, 8, 1000, bank=bank).to_dict(timing=False)
    b = check_progression(3, 12, 7, 8, 1000, bank=SeriesBank()).to_dict(timing=False)
    assert a == b
    c = check_progression(3, 2, 0, 5, 10, bank=bank)
    assert VerificationReport.from_dict(c.to_dict()).to_dict() == c.to_dict()


@pytest.mark.parametrize("args", [(3, 2, 0, 5, 10), (3, 4, 1, 3, 10), (5, 3, 2, 4, 10), (9, 5, 3, 7, 10), (7, 1, 0, 8, 40)])
def test_counterexample_replay(bank, args):
    rep = check_progression(*args, bank=bank)
    assert rep.verdict == "counterexample"
    assert replay_counterexample(rep) is True


def test_replay_out_of_reach(bank):
    rep = check_progression(3, 1000, 999, 2, 3, bank=bank)
    if rep.verdict == "counterexample":
        assert replay_counterexample(rep) is None
    assert replay_counterexample(check_progression(3, 6, 5, 4, 10, bank=bank)) is None


def test_precision_budget(bank):
    with pytest.raises(PrecisionBudgetError):
        check_progression(3, 10**6, 0, 2, 100, bank=bank)
    with pytest.raises(PrecisionBudgetError):
        bank.get(3, MAX_PRECISION + 1)
    with pytest.raises(ValueError):
        check_progression(3, 0, 0, 2, 10, bank=bank)


def test_bank_reuses_and_grows():
    b = SeriesBank()
    s = b.get(3, 100, 8)
    assert b.get(3, 50, 8) is s
    big = b.get(3, 110, 8)
    assert big.precision >= 125
    assert big.coeffs[:100].tolist() == s.coeffs.tolist()
    b.clear()
    assert b.get(3, 10, 8).precision == 10


def test_scan_rediscovers_known(bank):
    t3 = {(c.a, c.b, c.m) for c in scan(3, 12, [4, 8, 16], 200, bank=bank)}
    assert {(6, 5, 4), (12, 7, 8), (12, 11, 16)} <= t3
    t9 = {(c.a, c.b, c.m) for c in scan(9, 6, [4, 6, 8], 200, bank=bank)}
    assert {(6, 3, 4), (6, 4, 6), (6, 5, 8)} <= t9
    assert scan(3, 12, [10**9 + 7], 200, bank=bank) == []


def test_scan_candidates_hold_and_are_flagged(bank):
    cands = scan(3, 12, [4], 200, known=[(6, 5, 4)], bank=bank)
    assert any(c.known for c in cands if (c.a, c.b) == (6, 5))
    for c in cands:
        assert c.support == 201
        assert check_progression(3, c.a, c.b, c.m, 200, bank=bank).passed


def test_scan_arguments(bank):
    with pytest.raises(ValueError):
        scan(3, 6, [4], 200, min_support=4, bank=bank)
    with pytest.raises(ValueError):
        scan(3, 6, [4], 10, bank=bank)
