"""Expansions of eta products, theta functions and named generating functions.

Everything is built from :mod:`overschur.qseries`.  ``f_k`` is the
product (q^k; q^k)_inf, expanded through Euler's pentagonal number
theorem; an eta quotient is assembled so that factors in q^g are
computed at precision N/g and dilated, which keeps full-size
multiplications to a minimum.
"""
from __future__ import annotations

import math
import threading
from collections import OrderedDict
from typing import Mapping

import numpy as np

from . import qseries as qs
from .qseries import TruncSeries, ceil_div
from .seriesspec import (
    Dilation,
    EtaPower,
    Extract,
    Monomial,
    Named,
    Pochhammer,
    Power,
    Product,
    Quotient,
    SeriesSpec,
    Sum,
    Theta,
    parse,
)

__all__ = [
    "f1_pentagonal",
    "f1_product",
    "eta_power",
    "eta_quotient",
    "pochhammer",
    "theta",
    "theta_sum",
    "named_eta_exponents",
    "named_series",
    "expand",
    "PrecisionUnderflow",
    "set_cache_enabled",
    "cache_enabled",
    "clear_cache",
]


class PrecisionUnderflow(ValueError):
    pass


def _check_trunc(trunc: int) -> int:
    trunc = int(trunc)
    if trunc < 1:
        raise PrecisionUnderflow(f"precision must be >= 1, got {trunc}")
    return trunc


# --- memo cache -------------------------------------------------------------

class _SeriesCache:
    """Small LRU keyed by (exponent, precision, modulus); thread-safe."""

    def __init__(self, maxsize: int = 24):
        self.maxsize = maxsize
        self.enabled = True
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        if not self.enabled:
            return None
        with self._lock:
            val = self._data.get(key)
            if val is not None:
                self._data.move_to_end(key)
            return val

    def put(self, key, val):
        if not self.enabled:
            return
        with self._lock:
            self._data[key] = val
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def clear(self):
        with self._lock:
            self._data.clear()


_CACHE = _SeriesCache()


def set_cache_enabled(flag: bool) -> None:
    _CACHE.enabled = bool(flag)
    if not flag:
        _CACHE.clear()


def cache_enabled() -> bool:
    return _CACHE.enabled


def clear_cache() -> None:
    _CACHE.clear()


# --- f_1 and eta powers -----------------------------------------------------

def f1_pentagonal(trunc: int, modulus: int | None = None) -> TruncSeries:
    """(q; q)_inf from the pentagonal number theorem."""
    trunc = _check_trunc(trunc)
    c = [0] * trunc
    c[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 >= trunc:
            break
        sign = -1 if k % 2 else 1
        c[g1] = sign
        g2 = k * (3 * k + 1) // 2
        if g2 < trunc:
            c[g2] = sign
        k += 1
    return qs.series(c, trunc, modulus)


def f1_product(trunc: int, modulus: int | None = None) -> TruncSeries:
    """(q; q)_inf as the finite product over n < trunc.  Slow; a test oracle."""
    trunc = _check_trunc(trunc)
    c = [0] * trunc
    c[0] = 1
    for n in range(1, trunc):
        for i in range(trunc - 1, n - 1, -1):
            c[i] -= c[i - n]
    return qs.series(c, trunc, modulus)


def _f1_power(e: int, trunc: int, modulus: int | None) -> TruncSeries:
    if e == 0:
        return qs.one(trunc, modulus)
    key = (e, trunc, modulus)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    base = f1_pentagonal(trunc, modulus)
    if e == 1:
        out = base
    elif e > 0:
        out = qs.power(base, e)
    else:
        out = qs.power(qs.inv(base), -e)
    _CACHE.put(key, out)
    return out


def eta_power(k: int, e: int, trunc: int, modulus: int | None = None) -> TruncSeries:
    """f_k^e to precision ``trunc``."""
    trunc = _check_trunc(trunc)
    if k < 1:
        raise ValueError(f"eta index must be >= 1, got {k}")
    if e == 0:
        return qs.one(trunc, modulus)
    inner = _f1_power(e, ceil_div(trunc, k), modulus)
    return qs.truncate(qs.dilate(inner, k), trunc) if k > 1 else inner


def eta_quotient(exps: Mapping[int, int], trunc: int, modulus: int | None = None) -> TruncSeries:
    """prod_k f_k^{e_k}.

    The terms are split recursively: a common divisor g of all indices is
    pulled out by dilation, and the even-index part is handled by the
    same recursion in q^2.
    """
    trunc = _check_trunc(trunc)
    exps = {int(k): int(e) for k, e in exps.items() if e}
    for k in exps:
        if k < 1:
            raise ValueError(f"eta index must be >= 1, got {k}")
    return _eta_quotient(tuple(sorted(exps.items())), trunc, modulus)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2)) if n < 1 << 40 else False


def frobenius_fold(exps: Mapping[int, int], p: int, trunc: int, floor_at=()) -> dict[int, int]:
    """Rewrite exponents using f_k^p = f_{pk} (mod p), for p prime.

    Each e_k is written as p*u + v and f_k^{pu} is moved to f_{pk}^u.
    By default v takes the sign of e (|v| < p); for indices in
    ``floor_at`` v is taken in [0, p), which turns a negative power of
    f_k into a positive one.  Indices at or beyond the precision
    contribute 1 and are dropped.
    """
    work = {k: e for k, e in exps.items() if e}
    out: dict[int, int] = {}
    while work:
        k = min(work)
        e = work.pop(k)
        if k in floor_at or e >= 0:
            u, v = divmod(e, p)
        else:
            u, v = -((-e) // p), -((-e) % p)
        if v:
            out[k] = v
        if u and p * k < trunc:
            work[p * k] = work.get(p * k, 0) + u
            if not work[p * k]:
                del work[p * k]
    return out


def _eta_quotient(items: tuple, trunc: int, modulus: int | None) -> TruncSeries:
    if not items:
        return qs.one(trunc, modulus)
    g = 0
    for k, _ in items:
        g = math.gcd(g, k)
    if g > 1:
        inner = _eta_quotient(tuple((k // g, e) for k, e in items), ceil_div(trunc, g), modulus)
        return qs.truncate(qs.dilate(inner, g), trunc)
    if modulus is not None and _is_prime(modulus):
        # a negative power at index 1 costs a full-size inversion; fold it away
        folded = frobenius_fold(dict(items), modulus, trunc, floor_at=(1,))
        items = tuple(sorted(folded.items()))
        if not items:
            return qs.one(trunc, modulus)
        if math.gcd(*(k for k, _ in items)) > 1:
            return _eta_quotient(items, trunc, modulus)
    odd = [(k, e) for k, e in items if k % 2]
    even = tuple((k, e) for k, e in items if k % 2 == 0)
    # largest index first: those factors are the cheapest, smallest-precision ones
    acc = None
    for k, e in sorted(odd, reverse=True):
        term = eta_power(k, e, trunc, modulus)
        acc = term if acc is None else qs.mul(acc, term)
    if even:
        acc = qs.mul(acc, _eta_quotient(even, trunc, modulus))
    return acc


# --- Pochhammer and theta ---------------------------------------------------

def pochhammer(a: int, b: int, trunc: int, modulus: int | None = None, *, c: int = 1, w: int = 1) -> TruncSeries:
    """(c q^a; w q^b)_inf = prod_{n>=0} (1 - c w^n q^{a+bn}), with c, w = +-1."""
    trunc = _check_trunc(trunc)
    if a < 1 or b < 1:
        raise ValueError("pochhammer needs a >= 1 and b >= 1")
    coef = [0] * trunc
    coef[0] = 1
    n = 0
    while a + b * n < trunc:
        d = a + b * n
        s = c * (w if n % 2 else 1)
        # multiply by (1 - s q^d) in place, high indices first
        for i in range(trunc - 1, d - 1, -1):
            if coef[i - d]:
                coef[i] -= s * coef[i - d]
        n += 1
    return qs.series(coef, trunc, modulus)


def theta_sum(r: int, s: int, sign_r: int, sign_s: int, trunc: int, modulus: int | None = None) -> TruncSeries:
    """f(a, b) = sum_n a^{n(n+1)/2} b^{n(n-1)/2} with a = sign_r q^r, b = sign_s q^s."""
    trunc = _check_trunc(trunc)
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("theta f(a, b) needs r, s >= 0 and r + s >= 1")
    coef = [0] * trunc
    bound = math.isqrt(2 * trunc // (r + s) + 1) + 2
    for n in range(-bound, bound + 1):
        ea = n * (n + 1) // 2
        eb = n * (n - 1) // 2
        d = r * ea + s * eb
        if 0 <= d < trunc:
            sign = (sign_r if ea % 2 else 1) * (sign_s if eb % 2 else 1)
            coef[d] += sign
    return qs.series(coef, trunc, modulus)


def theta(spec: Theta, trunc: int, modulus: int | None = None) -> TruncSeries:
    r, s, sr, ss = spec.as_general()
    return theta_sum(r, s, sr, ss, trunc, modulus)


# --- named generating functions ---------------------------------------------

def _accumulate(pairs) -> dict[int, int]:
    out: dict[int, int] = {}
    for k, e in pairs:
        out[k] = out.get(k, 0) + e
    return {k: e for k, e in out.items() if e}


def named_eta_exponents(id: str, t: int | None = None) -> dict[int, int]:
    """Eta-quotient exponents {k: e} of a named generating function."""
    if id == "schur_over":
        if t is None or t < 2:
            raise ValueError("schur_over needs t >= 2")
        return _accumulate([(2, 3), (t, 2), (4 * t, 1), (1, -2), (4, -1), (2 * t, -3)])
    if id == "schur":
        if t is None or t < 3 or t % 2 == 0:
            raise ValueError("schur needs odd t >= 3")
        return _accumulate([(2, 1), (t, 1), (1, -1), (2 * t, -1)])
    if t is not None:
        raise ValueError(f"{id} takes no parameter")
    if id == "overpartition":
        return {1: -2, 2: 1}
    if id == "overpartition_odd":
        return {1: -2, 2: 3, 4: -1}
    if id == "P_neg":
        return {1: 1, 2: -2, 3: -2, 4: 1, 6: 5, 12: -2}
    if id == "A_cubed":
        return {3: 1, 6: -2, 9: -2, 12: 1, 18: 5, 36: -2}
    raise ValueError(f"unknown named series {id!r}")


def named_series(id: str, t: int | None, trunc: int, modulus: int | None = None) -> TruncSeries:
    return eta_quotient(named_eta_exponents(id, t), trunc, modulus)


# --- evaluator --------------------------------------------------------------

def expand(spec: SeriesSpec | str, trunc: int, modulus: int | None = None, eager: bool = False) -> TruncSeries:
    """Expand a series expression to precision ``trunc``.

    With ``modulus`` the result is reduced mod m.  By default the
    expansion is done over the integers and reduced at the end; with
    ``eager=True`` all arithmetic happens mod m.  Both give the same
    result whenever the integer expansion exists.
    """
    if isinstance(spec, str):
        spec = parse(spec)
    trunc = _check_trunc(trunc)
    if eager and modulus is not None:
        return _expand(spec, trunc, int(modulus))
    out = _expand(spec, trunc, None)
    return qs.reduce_mod(out, modulus) if modulus is not None else out


def _flatten(node: SeriesSpec, e: int, out: list) -> None:
    """Collect (leaf, exponent) pairs of a product/quotient/power tree."""
    if isinstance(node, Product):
        for f in node.factors:
            _flatten(f, e, out)
    elif isinstance(node, Quotient):
        _flatten(node.num, e, out)
        _flatten(node.den, -e, out)
    elif isinstance(node, Power):
        _flatten(node.base, e * node.e, out)
    else:
        out.append((node, e))


def _expand(node: SeriesSpec, n: int, m: int | None) -> TruncSeries:
    if n < 1:
        raise PrecisionUnderflow("intermediate precision dropped below 1")
    if isinstance(node, Sum):
        return qs.linear_combine([(1, _expand(t, n, m)) for t in node.terms])
    if isinstance(node, (Product, Quotient, Power)):
        return _expand_product(node, n, m)
    if isinstance(node, Monomial):
        return qs.monomial(node.c, node.d, n, m)
    if isinstance(node, EtaPower):
        return eta_power(node.k, node.e, n, m)
    if isinstance(node, Pochhammer):
        return pochhammer(node.a, node.b, n, m, c=node.c, w=node.w)
    if isinstance(node, Theta):
        return theta(node, n, m)
    if isinstance(node, Named):
        return named_series(node.id, node.t, n, m)
    if isinstance(node, Dilation):
        inner = _expand(node.base, ceil_div(n, node.k), m)
        return qs.truncate(qs.dilate(inner, node.k), n)
    if isinstance(node, Extract):
        inner = _expand(node.base, qs.precision_for_extract(n, node.p, node.j), m)
        return qs.extract(inner, node.p, node.j)
    raise TypeError(f"not a series spec: {node!r}")


def _expand_product(node: SeriesSpec, n: int, m: int | None) -> TruncSeries:
    leaves: list = []
    _flatten(node, 1, leaves)
    etas: dict[int, int] = {}
    scalar = 1
    shift = 0
    rest: list = []
    for leaf, e in leaves:
        if isinstance(leaf, EtaPower):
            etas[leaf.k] = etas.get(leaf.k, 0) + leaf.e * e
        elif isinstance(leaf, Named):
            for k, x in named_eta_exponents(leaf.id, leaf.t).items():
                etas[k] = etas.get(k, 0) + x * e
        elif isinstance(leaf, Monomial) and (e > 0 or (leaf.d == 0 and leaf.c in (1, -1))):
            scalar *= leaf.c ** abs(e)
            shift += leaf.d * e
        else:
            rest.append((leaf, e))
    if shift >= n or scalar == 0 or (m is not None and scalar % m == 0):
        return qs.zero(n, m)
    inner_n = n - shift
    acc = eta_quotient(etas, inner_n, m)
    for leaf, e in rest:
        acc = qs.mul(acc, qs.power(_expand(leaf, inner_n, m), e))
    if scalar != 1:
        acc = acc * scalar
    if shift:
        acc = qs.shift(acc, shift)
    return acc
