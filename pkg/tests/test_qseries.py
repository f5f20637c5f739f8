import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from overschur import qseries as qs
from overschur.qseries import ModulusMismatch, NonUnitError

N = 64
coeffs = st.lists(st.integers(-9, 9), min_size=N, max_size=N)
units = coeffs.map(lambda c: [1] + c[1:])


def S(c, m=None):
    return qs.series(c, modulus=m)


@given(coeffs, coeffs, coeffs)
def test_ring_laws(a, b, c):
    x, y, z = S(a), S(b), S(c)
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + qs.zero(N) == x
    assert x * qs.one(N) == x
    assert x - x == qs.zero(N)


@given(coeffs, coeffs)
def test_kronecker_product_matches_schoolbook(a, b):
    assert qs.mul(S(a), S(b)) == qs.mul_schoolbook(S(a), S(b))


@given(coeffs, coeffs, st.sampled_from([2, 3, 8, 12, 10**9 + 7, 2**70 + 1]))
def test_modular_product_is_reduction_of_integer_product(a, b, m):
    exact = qs.reduce_mod(qs.mul(S(a), S(b)), m)
    assert qs.mul(S(a, m), S(b, m)) == exact
    assert qs.mul_schoolbook(S(a, m), S(b, m)) == exact


@given(units)
def test_inverse_round_trip(a):
    x = S(a)
    assert x * qs.inv(x) == qs.one(N)
    assert qs.inv(qs.inv(x)) == x


@given(units, st.sampled_from([2, 3, 5, 9, 16]))
def test_inverse_mod_m(a, m):
    x = S(a, m)
    assert x * qs.inv(x) == qs.one(N, m)


@given(coeffs, st.integers(1, 7))
def test_extract_undoes_dilate(a, k):
    x = S(a)
    d = qs.dilate(x, k)
    assert d.precision == k * N
    assert qs.extract(d, k, 0) == x
    for j in range(1, k):
        assert qs.extract(d, k, j).is_zero()


@given(coeffs, st.integers(1, 6))
def test_dissection_reassembles(a, p):
    x = S(a)
    parts = [(1, qs.shift(qs.dilate(qs.extract(x, p, j), p), j)) for j in range(p)]
    whole = qs.linear_combine(parts)
    n = min(whole.precision, x.precision)
    assert qs.truncate(whole, n) == qs.truncate(x, n)


@given(units, st.integers(-4, 6))
def test_power_matches_repeated_product(a, e):
    x = S(a)
    expect = qs.one(N)
    base = x if e >= 0 else qs.inv(x)
    for _ in range(abs(e)):
        expect = expect * base
    assert qs.power(x, e) == expect


def test_precision_contract():
    a = qs.series(range(1, 11))
    b = qs.series(range(1, 6))
    assert (a * b).precision == 5
    assert qs.linear_combine([(1, a), (2, b)]).precision == 5
    assert qs.dilate(b, 3).precision == 15
    assert qs.extract(a, 3, 1).precision == 3  # indices 1, 4, 7
    assert qs.extract(a, 3, 0).precision == 4
    assert qs.shift(b, 4).precision == 9
    assert qs.inv(a).precision == 10
    assert qs.power(a, 3).precision == 10
    assert qs.precision_for_extract(3, 3, 1) == 8


def test_extract_precision_is_ceiling():
    for n in range(1, 30):
        for p in range(1, 7):
            for j in range(min(p, n)):
                a = qs.series([1] * n)
                assert qs.extract(a, p, j).precision == qs.ceil_div(n - j, p)


def test_geometric_series():
    g = qs.inv(qs.series([1, -1], 20))
    assert g.tolist() == [1] * 20


def test_large_coefficients_survive_packing():
    big = 10**40
    a = qs.series([big, -big, 3, -(big**2)])
    assert qs.mul(a, a) == qs.mul_schoolbook(a, a)


def test_modulus_errors():
    with pytest.raises(ModulusMismatch):
        qs.series([1, 2], modulus=3) + qs.series([1, 2], modulus=5)
    with pytest.raises(ModulusMismatch):
        qs.reduce_mod(qs.series([1], modulus=4), 3)
    with pytest.raises(NonUnitError):
        qs.inv(qs.series([2, 1]))
    with pytest.raises(NonUnitError):
        qs.inv(qs.series([3, 1], modulus=6))
    with pytest.raises(ValueError):
        qs.extract(qs.series([1, 2]), 3, 3)
    with pytest.raises(ValueError):
        qs.truncate(qs.series([1, 2]), 5)


def test_series_are_immutable():
    a = qs.series([1, 2, 3])
    with pytest.raises(ValueError):
        a.coeffs[0] = 5


def test_reduce_mod_canonical_residues():
    a = qs.reduce_mod(qs.series([-1, -7, 5, 12]), 6)
    assert a.tolist() == [5, 5, 5, 0]
    assert a.coeffs.dtype == np.int64


def test_operators_with_ints():
    a = qs.series([1, 1, 0, 0])
    assert (a * 3).tolist() == [3, 3, 0, 0]
    assert (1 - a).tolist() == [0, -1, 0, 0]
    assert (a / a) == qs.one(4)
    assert (a ** 2).tolist() == [1, 2, 1, 0]
