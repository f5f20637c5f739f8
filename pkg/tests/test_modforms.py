import dataclasses
import math
import random
from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given
from hypothesis import strategies as st

from overschur.modforms import (
    ETA4_6Z,
    Cusp,
    EtaQuotient,
    InsufficientPrecision,
    cusp_order,
    cusp_orders,
    cusps,
    eigen_check,
    hecke_Tp,
    kronecker,
    modform_expansion,
    ono_conditions,
)


@pytest.fixture(scope="module")
def eta4():
    return modform_expansion(ETA4_6Z, 3000)


def test_kronecker_against_gmpy2():
    rng = random.Random(7)
    for _ in range(3000):
        a = rng.randint(-10**6, 10**6)
        n = rng.randint(-10**4, 10**4)
        assert kronecker(a, n) == gmpy2.kronecker(a, n), (a, n)


def _primes(limit):
    return [p for p in range(3, limit) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def test_kronecker_euler_criterion():
    rng = random.Random(11)
    ps = _primes(400)
    for _ in range(200):
        p = rng.choice(ps)
        a = rng.randint(-1000, 1000)
        e = pow(a % p, (p - 1) // 2, p)
        assert kronecker(a, p) == (0 if a % p == 0 else (1 if e == 1 else -1))


@given(st.integers(-500, 500), st.integers(1, 300), st.integers(1, 300))
def test_kronecker_multiplicative_in_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_kronecker_special_bottoms():
    assert kronecker(-3, 5) == -1
    assert kronecker(1, 0) == 1 and kronecker(2, 0) == 0
    assert kronecker(-5, -1) == -1 and kronecker(5, -1) == 1
    assert [kronecker(a, 2) for a in (1, 3, 5, 7, 4)] == [1, -1, -1, 1, 0]


def test_ono_conditions_eta4():
    oc = ono_conditions(ETA4_6Z)
    assert oc.weight == 2
    assert oc.sum_delta == 24 and oc.sum_inverse == 24
    assert oc.holds
    assert oc.character_s == 1296


def test_ono_conditions_fractional():
    oc = ono_conditions(EtaQuotient(12, {1: -2, 2: 3, 3: 2, 6: -1}))
    assert oc.weight == 1
    assert oc.character_s_rational == Fraction(2 ** 3 * 3 ** 2, 6)
    half = ono_conditions(EtaQuotient(4, {1: 1}))
    assert half.weight == Fraction(1, 2) and not half.holds


def test_cusp_orders_eta4():
    assert cusp_orders(ETA4_6Z) == {d: 1 for d in (1, 2, 3, 4, 6, 9, 12, 18, 36)}


def test_cusp_order_independent_of_numerator():
    e = EtaQuotient(36, {1: -2, 2: 5, 6: 1, 18: -1, 36: 3})
    for d in (1, 2, 3, 4, 6, 9, 12, 18, 36):
        vals = {cusp_order(e, Cusp(c, d)) for c in range(-40, 40) if math.gcd(c, d) == 1}
        assert len(vals) == 1


def test_cusp_orders_delta():
    # Delta = eta(z)^24 vanishes to order 1 at infinity, level 1
    assert cusp_orders(EtaQuotient(1, {1: 24})) == {1: 1}
    assert [c.d for c in cusps(12)] == [1, 2, 3, 4, 6, 12]


def test_expansion_values(eta4):
    assert eta4.a(1) == 1
    assert eta4.a(7) == -4 and eta4.a(49) == 9
    assert all(eta4.a(n) == 0 for n in range(3000) if n % 6 != 1)
    frozen = {5: 0, 7: -4, 11: 0, 13: 2, 17: 0, 19: 8, 23: 0, 29: 0, 31: -4, 37: -10, 41: 0, 43: 8}
    assert {p: eta4.a(p) for p in frozen} == frozen


def test_multiplicative_coefficients(eta4):
    assert eta4.a(7 * 13) == eta4.a(7) * eta4.a(13)
    assert eta4.a(49) == eta4.a(7) ** 2 - 7 * eta4.chi(7)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_eigen_check(eta4, p):
    rep = eigen_check(eta4, p, 3000 // p - 1)
    assert rep.passed, rep.summary()


def test_eigenvalues(eta4):
    assert eigen_check(eta4, 5, 100).params["lambda"] == 0
    assert eigen_check(eta4, 7, 100).params["lambda"] == -4


def test_eigen_check_detects_non_eigenform():
    h = modform_expansion(ETA4_6Z, 600)
    bad = dataclasses.replace(h, coeffs=tuple(c + (1 if n == 25 else 0) for n, c in enumerate(h.coeffs)))
    rep = eigen_check(bad, 5, 100)
    assert rep.verdict == "counterexample"
    assert rep.counterexample["n"] == 5


def test_eigen_check_needs_normalization():
    h = modform_expansion(EtaQuotient(36, {6: 8}), 200)
    with pytest.raises(ValueError):
        eigen_check(h, 5, 10)


def test_hecke_descent_relation(eta4):
    # lambda(5) = 0 and chi(5) = 1 give a(25 m) = -5 a(m)
    for m in range(1, 110):
        assert eta4.a(25 * m) == -5 * eta4.a(m)


def test_insufficient_precision():
    f = modform_expansion(ETA4_6Z, 100)
    with pytest.raises(InsufficientPrecision):
        f.a(100)
    with pytest.raises(InsufficientPrecision):
        hecke_Tp(f, 5, 40)


def test_eta_quotient_validation():
    with pytest.raises(ValueError):
        EtaQuotient(36, {5: 1})
    with pytest.raises(ValueError):
        EtaQuotient(36, {})
    with pytest.raises(ValueError):
        Cusp(2, 4)
    with pytest.raises(ValueError):
        modform_expansion(EtaQuotient(4, {1: 1}), 10)
