"""Eta quotients as modular forms: weight, character, cusp orders, Hecke action.

Only the checkable parts are computed.  Membership of a quotient in a
space of cusp forms is not proved here; what can be evaluated exactly
(the two sums mod 24, the vanishing orders at cusps, the Hecke
recurrences on coefficients) is.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .qseries import TruncSeries, shift
from .report import VerificationReport, timer
from .specialforms import eta_quotient

__all__ = [
    "EtaQuotient",
    "Cusp",
    "OnoConditions",
    "ModformExpansion",
    "kronecker",
    "ono_conditions",
    "cusp_order",
    "cusp_orders",
    "cusps",
    "modform_expansion",
    "hecke_Tp",
    "eigen_check",
    "InsufficientPrecision",
    "ETA4_6Z",
]


class InsufficientPrecision(ValueError):
    pass


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass(frozen=True)
class EtaQuotient:
    """prod over delta | level of eta(delta z)^r_delta."""

    level: int
    exps: tuple[tuple[int, int], ...]

    def __init__(self, level: int, exps: Mapping[int, int]):
        if level < 1:
            raise ValueError("level must be positive")
        items = tuple(sorted((int(d), int(r)) for d, r in exps.items() if r != 0))
        if not items:
            raise ValueError("an eta quotient needs at least one nonzero exponent")
        for d, _ in items:
            if d < 1 or level % d:
                raise ValueError(f"{d} does not divide the level {level}")
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "exps", items)

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def __str__(self):
        body = " ".join(f"eta({d}z)^{r}" if r != 1 else f"eta({d}z)" for d, r in self.exps)
        return f"{body} [level {self.level}]"


@dataclass(frozen=True)
class Cusp:
    c: int
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if math.gcd(self.c, self.d) != 1:
            raise ValueError(f"gcd({self.c}, {self.d}) != 1")


def kronecker(top: int, bottom: int) -> int:
    """Kronecker symbol (top / bottom).

    Conventions: (a/1) = 1; (a/0) = 1 if a = +-1 else 0; (a/-1) = -1 for
    a < 0 and 1 otherwise; (a/2) = 0 for even a, 1 for a = +-1 mod 8 and
    -1 for a = +-3 mod 8.  The symbol is completely multiplicative in the
    bottom argument; odd prime bottoms use quadratic reciprocity.
    """
    a, n = int(top), int(bottom)
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out powers of two from the bottom
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # now n is odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class OnoConditions:
    weight: Fraction
    sum_delta: int
    sum_inverse: int
    cond_delta: bool
    cond_inverse: bool
    character_s_rational: Fraction
    character_s: int

    @property
    def holds(self) -> bool:
        return self.cond_delta and self.cond_inverse and self.weight.denominator == 1

    def to_dict(self) -> dict:
        return {
            "weight": str(self.weight),
            "sum_delta": self.sum_delta,
            "sum_inverse": self.sum_inverse,
            "cond_delta": self.cond_delta,
            "cond_inverse": self.cond_inverse,
            "character_s": self.character_s,
            "character_s_rational": str(self.character_s_rational),
        }


def ono_conditions(e: EtaQuotient) -> OnoConditions:
    """Weight and the two mod-24 conditions for e to be a modular form.

    ``character_s`` is prod delta^r_delta as an exact rational, turned
    into an integer with the same Kronecker symbol against every d
    coprime to it (numerator times denominator).
    """
    weight = Fraction(sum(r for _, r in e.exps), 2)
    sd = sum(d * r for d, r in e.exps)
    si = sum((e.level // d) * r for d, r in e.exps)
    s = Fraction(1)
    for d, r in e.exps:
        s *= Fraction(d) ** r
    return OnoConditions(weight, sd, si, sd % 24 == 0, si % 24 == 0, s, s.numerator * s.denominator)


def cusp_order(e: EtaQuotient, cusp: Cusp) -> Fraction:
    """Order of vanishing of e at c/d; depends on d only."""
    N, d = e.level, cusp.d
    if N % d:
        raise ValueError(f"{d} does not divide the level {N}")
    total = Fraction(0)
    for delta, r in e.exps:
        total += Fraction(math.gcd(d, delta) ** 2 * r, delta)
    return Fraction(N, 24) * total / (math.gcd(d, N // d) * d)


def cusps(level: int) -> list[Cusp]:
    """One representative c/d per divisor d of the level (c = 1)."""
    return [Cusp(1, d) for d in _divisors(level)]


def cusp_orders(e: EtaQuotient) -> dict[int, Fraction]:
    return {c.d: cusp_order(e, c) for c in cusps(e.level)}


@dataclass(frozen=True)
class ModformExpansion:
    """q-expansion sum a(n) q^n of an eta quotient of integral weight."""

    coeffs: tuple[int, ...]
    weight: int
    sign: int
    s: int

    def __len__(self):
        return len(self.coeffs)

    def a(self, n: int) -> int:
        if n < 0:
            return 0
        if n >= len(self.coeffs):
            raise InsufficientPrecision(f"a({n}) needs precision {n + 1}, have {len(self.coeffs)}")
        return self.coeffs[n]

    def chi(self, d: int) -> int:
        return kronecker(self.sign * self.s, d)


def modform_expansion(e: EtaQuotient, trunc: int) -> ModformExpansion:
    """Coefficients of q^(sum delta r / 24) prod f_delta^r_delta below q^trunc."""
    oc = ono_conditions(e)
    if oc.weight.denominator != 1:
        raise ValueError("only integral weight is supported")
    if oc.sum_delta % 24 or oc.sum_delta < 0:
        raise ValueError("the leading exponent sum(delta r)/24 must be a nonnegative integer")
    lead = oc.sum_delta // 24
    k = int(oc.weight)
    if lead >= trunc:
        coeffs = (0,) * trunc
    else:
        body: TruncSeries = eta_quotient(e.as_dict, trunc - lead)
        coeffs = tuple(int(x) for x in shift(body, lead).tolist())
    return ModformExpansion(coeffs, k, (-1) ** k, oc.character_s)


def hecke_Tp(f: ModformExpansion, p: int, n_out: int | None = None) -> list[int]:
    """Coefficients 0..n_out-1 of T_p f: a(pn) + chi(p) p^(k-1) a(n/p)."""
    if n_out is None:
        n_out = (len(f) - 1) // p + 1
    if p * (n_out - 1) >= len(f):
        raise InsufficientPrecision(f"T_{p} to {n_out} terms needs precision {p * (n_out - 1) + 1}, have {len(f)}")
    c = f.chi(p) * p ** (f.weight - 1)
    return [f.a(p * n) + (c * f.a(n // p) if n % p == 0 else 0) for n in range(n_out)]


def eigen_check(f: ModformExpansion, p: int, n_max: int) -> VerificationReport:
    """Check T_p f = a(p) f coefficientwise for 0 <= n <= n_max (a(1) = 1)."""
    if f.a(1) != 1:
        raise ValueError("expansion must be normalized with a(1) = 1")
    with timer() as t:
        tp = hecke_Tp(f, p, n_max + 1)
        lam = f.a(p)
        bad = next((n for n in range(n_max + 1) if tp[n] != lam * f.a(n)), None)
    params = {"p": p, "lambda": lam, "weight": f.weight, "chi_p": f.chi(p)}
    if bad is None:
        return VerificationReport(f"hecke_eigen_p{p}", params, n_max, "verified", None, t[0])
    d = tp[bad] - lam * f.a(bad)
    return VerificationReport(f"hecke_eigen_p{p}", params, n_max, "counterexample", {"n": bad, "value": str(d), "residue": d}, t[0])


ETA4_6Z = EtaQuotient(36, {6: 4})
