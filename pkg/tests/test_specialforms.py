import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from overschur import qseries as qs
from overschur.combinatorics import count_partitions, schur_over_oracle, unrestricted
from overschur.specialforms import (
    PrecisionUnderflow,
    cache_enabled,
    clear_cache,
    eta_power,
    eta_quotient,
    expand,
    f1_pentagonal,
    f1_product,
    frobenius_fold,
    named_series,
    pochhammer,
    set_cache_enabled,
    theta_sum,
)


def test_pentagonal_matches_product():
    assert f1_pentagonal(400) == f1_product(400)
    assert f1_pentagonal(16).tolist() == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]


def test_inverse_of_f1_counts_partitions():
    p = eta_power(1, -1, 60)
    assert p.tolist() == [count_partitions(n, unrestricted()) for n in range(60)]


def test_schur_over_first_terms():
    assert named_series("schur_over", 3, 10).tolist() == [1, 2, 2, 2, 2, 4, 6, 8, 10, 10]


@pytest.mark.parametrize("t", [3, 5, 7, 9, 15])
def test_schur_over_against_oracle(t):
    s = named_series("schur_over", t, 31)
    assert s.tolist() == [schur_over_oracle(t, n) for n in range(31)]


def test_overpartitions_into_odd_parts():
    assert named_series("overpartition_odd", None, 7).tolist() == [1, 2, 2, 4, 6, 8, 12]


def test_pochhammer_is_finite_product():
    # (q^5; q^25)_inf to q^31 has only the factors 1 - q^5 and 1 - q^30
    x = pochhammer(5, 25, 31)
    expect = [0] * 31
    expect[0], expect[5], expect[30] = 1, -1, -1
    assert x.tolist() == expect


def test_theta_specials():
    psi = theta_sum(1, 3, 1, 1, 40)
    tri = {n * (n + 1) // 2 for n in range(10)}
    assert psi.tolist() == [1 if n in tri else 0 for n in range(40)]
    phi_neg = theta_sum(1, 1, -1, -1, 50)
    sq = {n * n: (-1) ** n * (2 if n else 1) for n in range(8)}
    assert phi_neg.tolist() == [sq.get(n, 0) for n in range(50)]


@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([1, -1]), st.sampled_from([1, -1]))
def test_jacobi_triple_product(r, s, sr, ss):
    """f(a, b) = (-a; ab)(-b; ab)(ab; ab)."""
    n = 150
    lhs = theta_sum(r, s, sr, ss, n)
    w = sr * ss
    rhs = pochhammer(r, r + s, n, c=-sr, w=w) * pochhammer(s, r + s, n, c=-ss, w=w) * pochhammer(r + s, r + s, n, c=w, w=w)
    assert lhs == rhs


def test_jacobi_triple_product_ten_random_specs():
    rng = random.Random(20240611)
    for _ in range(10):
        r, s = rng.randint(1, 9), rng.randint(1, 9)
        sr, ss = rng.choice([1, -1]), rng.choice([1, -1])
        w = sr * ss
        lhs = theta_sum(r, s, sr, ss, 150)
        rhs = pochhammer(r, r + s, 150, c=-sr, w=w) * pochhammer(s, r + s, 150, c=-ss, w=w) * pochhammer(r + s, r + s, 150, c=w, w=w)
        assert lhs == rhs


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_binomial_congruence(p, k, m):
    """f_{pm}^{p^(k-1)} = f_m^{p^k} mod p^k."""
    n = 200
    mod = p ** k
    assert eta_power(p * m, p ** (k - 1), n, mod) == eta_power(m, p ** k, n, mod)


@pytest.mark.parametrize("m", [2, 3, 5, 7, 4, 6, 9])
def test_eager_and_lazy_agree(m):
    for text in ["schur_over(3)", "schur_over(9)", "f2^3 * f3^2 / (f1^5 * f6)", "extract(schur_over(3), 12, 2) - 2 * f1^4"]:
        assert expand(text, 400, m, eager=True) == expand(text, 400, m)


def test_frobenius_fold():
    # f1^-2 mod 3: floor-fold at index 1 gives f1 * f3^-1
    assert frobenius_fold({1: -2}, 3, 100, floor_at=(1,)) == {1: 1, 3: -1}
    assert frobenius_fold({1: 7}, 3, 100) == {1: 1, 3: 2}
    # f1^-4 = f2^-2 = f4^-1 mod 2
    assert frobenius_fold({1: -4, 3: 1}, 2, 100) == {3: 1, 4: -1}


def test_eta_quotient_matches_naive_product():
    exps = {2: 3, 3: 2, 12: 1, 1: -2, 4: -1, 6: -3}
    naive = qs.one(300)
    for k, e in exps.items():
        naive = naive * qs.power(qs.dilate(f1_product(300 // k + 1), k), e)
    assert eta_quotient(exps, 300) == qs.truncate(naive, 300)


def test_product_form_of_generating_function():
    prod = expand("poch(-q, q^2) * poch(q^3, q^6) / (poch(-q^3, q^6) * poch(q, q^2))", 300)
    assert prod == named_series("schur_over", 3, 300)


def test_lazy_expansion_tracks_precision():
    # extract needs p(N-1)+j+1 terms of its argument
    e = expand("extract(f1, 5, 2)", 20)
    assert e.precision == 20
    assert e == qs.extract(f1_pentagonal(5 * 19 + 3), 5, 2)


def test_trunc_must_be_positive():
    with pytest.raises((PrecisionUnderflow, ValueError)):
        expand("f1", 0)


def test_cache_toggle_does_not_change_results():
    before = cache_enabled()
    try:
        set_cache_enabled(False)
        a = expand("f1^-7 * f2^3", 500)
        set_cache_enabled(True)
        clear_cache()
        b = expand("f1^-7 * f2^3", 500)
        c = expand("f1^-7 * f2^3", 500)
    finally:
        set_cache_enabled(before)
    assert a == b == c
