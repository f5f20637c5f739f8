"""The table of congruence claims and the parametrized families behind it.

Claims are plain data (:class:`CongruenceClaim`) so a suite can be
written to or read from JSON.  ``run_claim`` dispatches to the checkers
in :mod:`overschur.verify`.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Iterable

from .report import VerificationReport
from .verify import (
    BANK,
    SeriesBank,
    check_coefficient_identity,
    check_mod4_classification,
    check_progression,
    check_series_congruence,
)

__all__ = [
    "CongruenceClaim",
    "FamilyError",
    "FAMILIES",
    "instantiate_family",
    "run_claim",
    "claim_budget",
    "prewarm",
    "theorem_claims",
    "printed_variant_claims",
    "known_progressions",
    "claims_to_json",
    "claims_from_json",
]

KINDS = ("progression", "series_congruence", "coefficient_identity", "classification_mod4", "family")


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class CongruenceClaim:
    """One checkable statement about S_t.

    progression           S_t(a n + b) = 0 mod m, n <= n_max, minus exclusions
    series_congruence     sum S_t(a n + b) q^n = rhs mod m through q^(trunc-1)
    coefficient_identity  S_t(a n + b) = factor * S_t(a2 n + b2) mod m
    classification_mod4   S_t(n) mod 4 against the square/non-square rule
    family                instantiated through :func:`instantiate_family`
    """

    id: str
    kind: str
    t: int
    a: int = 1
    b: int = 0
    m: int = 2
    n_max: int = 200
    exclusions: tuple = ()
    rhs: str = ""
    trunc: int = 300
    a2: int = 1
    b2: int = 0
    factor: int = 1
    rule: str = "literal"
    family: str = ""
    family_params: dict = field(default_factory=dict, hash=False)
    expect: str = "verified"
    note: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown claim kind {self.kind!r}")
        if self.kind != "family":
            if self.a < 1 or self.b < 0 or self.m < 2:
                raise ValueError(f"{self.id}: need a >= 1, b >= 0, m >= 2")
        object.__setattr__(self, "exclusions", tuple(self.exclusions))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exclusions"] = list(self.exclusions)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CongruenceClaim":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown claim fields {sorted(unknown)}")
        return cls(**d)


def claims_to_json(claims: Iterable[CongruenceClaim]) -> str:
    return json.dumps([c.to_dict() for c in claims], indent=1, sort_keys=True)


def claims_from_json(text: str) -> list[CongruenceClaim]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("a suite file holds a JSON array of claims")
    return [CongruenceClaim.from_dict(d) for d in data]


# --- families -----------------------------------------------------------------

def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _need(params: dict, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise FamilyError(f"missing family parameters {missing}")
    return [params[n] for n in names]


def _prime_5_mod_6(p: int) -> None:
    if not _is_prime(p) or p % 6 != 5:
        raise FamilyError(f"p = {p} must be a prime congruent to 5 mod 6")


def _alpha(alpha: int) -> None:
    if alpha < 0:
        raise FamilyError("alpha must be nonnegative")


def _fam_s3_5adic(p):
    alpha, i = _need(p, "alpha", "i")
    _alpha(alpha)
    if not 1 <= i <= 4:
        raise FamilyError("i must lie in 1..4")
    return dict(t=3, a=24 * 5 ** (2 * alpha + 2), b=24 * 5 ** (2 * alpha + 1) * i + 4 * 5 ** (2 * alpha + 2), m=3)


def _fam_s3_padic(p):
    q, alpha, i = _need(p, "p", "alpha", "i")
    _prime_5_mod_6(q)
    _alpha(alpha)
    if not 1 <= i <= q - 1:
        raise FamilyError(f"i must lie in 1..{q - 1}")
    return dict(t=3, a=24 * q ** (2 * alpha + 2), b=24 * q ** (2 * alpha + 1) * i + 12 * q ** (2 * alpha + 2), m=3)


def _fam_s3_9adic(p):
    alpha, which = _need(p, "alpha", "which")
    _alpha(alpha)
    base = {1: (36, 33), 2: (108, 45)}.get(which)
    if base is None:
        raise FamilyError("which must be 1 (36n+33) or 2 (108n+45)")
    return dict(t=3, a=9 ** alpha * base[0], b=9 ** alpha * base[1], m=6)


def _fam_s3_eigen_mod8(p):
    """j = 0 case: S_3(12 p^2 n + 12 p k + 2 p^2) = 0 mod 8, p = 5 mod 6, p not dividing k."""
    q, k = _need(p, "p", "k")
    _prime_5_mod_6(q)
    if k % q == 0:
        raise FamilyError("k must not be divisible by p")
    a = 12 * q * q
    return dict(t=3, a=a, b=(12 * q * k + 2 * q * q) % a, m=8)


def _fam_s3_eigen_mod8_printed(p):
    """The same family with the offset (12 p k + 2 p) p read off the display."""
    q, k = _need(p, "p", "k")
    if not _is_prime(q) or q < 5:
        raise FamilyError("p must be a prime >= 5")
    if k % q == 0:
        raise FamilyError("k must not be divisible by p")
    a = 12 * q * q
    return dict(t=3, a=a, b=((12 * q * k + 2 * q) * q) % a, m=8)


def _fam_s3_eigen_mod8_any_prime(p):
    """Offset form of the j = 0 case for any prime p >= 5.

    Holds exactly when the Hecke eigenvalue a(p) of eta^4(6z) is 0 mod 4
    (p = 7, 19, 31 work; p = 13 with a(13) = 2 does not).
    """
    q, k = _need(p, "p", "k")
    if not _is_prime(q) or q < 5:
        raise FamilyError("p must be a prime >= 5")
    if k % q == 0:
        raise FamilyError("k must not be divisible by p")
    a = 12 * q * q
    return dict(t=3, a=a, b=(12 * q * k + 2 * q * q) % a, m=8)


def _fam_s3_eigen_mod8_iterated(p):
    q, j, k = _need(p, "p", "j", "k")
    _prime_5_mod_6(q)
    if j < 0 or k % q == 0:
        raise FamilyError("need j >= 0 and k not divisible by p")
    a = 12 * q ** (2 * j + 2)
    return dict(t=3, a=a, b=(12 * q ** (2 * j + 1) * k + 2 * q ** (2 * j + 2)) % a, m=8)


def _fam_s3_eigen_mod8_iterated_odd(p):
    """Offset 12 p^(2j+1) k + p^(2j+2): the odd companion of the family above."""
    q, j, k = _need(p, "p", "j", "k")
    _prime_5_mod_6(q)
    if j < 0 or k % q == 0:
        raise FamilyError("need j >= 0 and k not divisible by p")
    a = 12 * q ** (2 * j + 2)
    return dict(t=3, a=a, b=(12 * q ** (2 * j + 1) * k + q ** (2 * j + 2)) % a, m=8)


def _fam_s3_scaling_mod8(p):
    """S_3(12 p^(2j) n + 2 p^(2j)) = (-p)^j S_3(12 n + 2) mod 8."""
    q, j = _need(p, "p", "j")
    _prime_5_mod_6(q)
    if j < 1:
        raise FamilyError("j must be positive")
    return dict(t=3, a=12 * q ** (2 * j), b=2 * q ** (2 * j), a2=12, b2=2, factor=(-q) ** j, m=8,
                kind="coefficient_identity")


def _fam_s3_scaling_mod8_printed(p):
    q, j = _need(p, "p", "j")
    _prime_5_mod_6(q)
    if j < 1:
        raise FamilyError("j must be positive")
    return dict(t=3, a=12 * q ** (2 * j), b=q ** (2 * j), a2=12, b2=2, factor=(-q) ** j, m=8,
                kind="coefficient_identity")


def _fam_s3_descent_mod8(p):
    """S_3(12 p^(j+1) n + 12 p r + 10 p) = -p S_3(12 p^(j-1) n + (12 r + 10)/p) mod 8."""
    q, j, r = _need(p, "p", "j", "r")
    _prime_5_mod_6(q)
    if j < 1 or r < 0:
        raise FamilyError("need j >= 1 and r >= 0")
    if (12 * r + 10) % q:
        raise FamilyError("p must divide 12 r + 10")
    return dict(t=3, a=12 * q ** (j + 1), b=12 * q * r + 10 * q, a2=12 * q ** (j - 1), b2=(12 * r + 10) // q,
                factor=-q, m=8, kind="coefficient_identity")


def _fam_s9_5adic(p):
    alpha, i = _need(p, "alpha", "i")
    _alpha(alpha)
    if not 1 <= i <= 4:
        raise FamilyError("i must lie in 1..4")
    return dict(t=9, a=6 * 5 ** (2 * alpha + 2), b=6 * 5 ** (2 * alpha + 1) * i + 5 ** (2 * alpha + 2), m=6)


def _fam_s9_padic(p):
    q, alpha, i = _need(p, "p", "alpha", "i")
    _prime_5_mod_6(q)
    _alpha(alpha)
    if not 1 <= i <= q - 1:
        raise FamilyError(f"i must lie in 1..{q - 1}")
    return dict(t=9, a=6 * q ** (2 * alpha + 2), b=6 * q ** (2 * alpha + 1) * i + 3 * q ** (2 * alpha + 2), m=12)


def _fam_s9_4adic(p):
    (alpha,) = _need(p, "alpha")
    _alpha(alpha)
    return dict(t=9, a=3 * 4 ** (alpha + 2), b=10 * 4 ** (alpha + 1), m=9)


def _fam_power_of_3(p):
    k, alpha = _need(p, "k", "alpha")
    _alpha(alpha)
    if k < 2:
        raise FamilyError("k must be at least 2")
    return dict(t=3 ** k, a=9 ** (alpha + 1), b=6 * 9 ** alpha, m=3)


# moduli for S_(2^k)(8n + j), j = 1..7, as stated and as observed (gcd over n <= 1000)
_EIGHT = {1: 2, 2: 4, 3: 8, 4: 2, 5: 8, 6: 8, 7: 32}
_EIGHT_OBSERVED = {1: 2, 2: 2, 3: 4, 4: 2, 5: 8, 6: 4, 7: 16}


def _power_of_2(p, table):
    k, j = _need(p, "k", "j")
    if k < 3:
        raise FamilyError("k must be at least 3")
    if j not in table:
        raise FamilyError("j must lie in 1..7")
    return dict(t=2 ** k, a=8, b=j, m=table[j])


def _fam_power_of_2(p):
    return _power_of_2(p, _EIGHT)


def _fam_power_of_2_observed(p):
    return _power_of_2(p, _EIGHT_OBSERVED)


FAMILIES = {
    "s3_5adic_mod3": _fam_s3_5adic,
    "s3_padic_mod3": _fam_s3_padic,
    "s3_9adic_mod6": _fam_s3_9adic,
    "s3_eigen_mod8": _fam_s3_eigen_mod8,
    "s3_eigen_mod8_printed": _fam_s3_eigen_mod8_printed,
    "s3_eigen_mod8_any_prime": _fam_s3_eigen_mod8_any_prime,
    "s3_eigen_mod8_iterated": _fam_s3_eigen_mod8_iterated,
    "s3_eigen_mod8_iterated_odd": _fam_s3_eigen_mod8_iterated_odd,
    "s3_scaling_mod8": _fam_s3_scaling_mod8,
    "s3_scaling_mod8_printed": _fam_s3_scaling_mod8_printed,
    "s3_descent_mod8": _fam_s3_descent_mod8,
    "s9_5adic_mod6": _fam_s9_5adic,
    "s9_padic_mod12": _fam_s9_padic,
    "s9_4adic_mod9": _fam_s9_4adic,
    "power_of_3_mod3": _fam_power_of_3,
    "power_of_2_8n": _fam_power_of_2,
    "power_of_2_8n_observed": _fam_power_of_2_observed,
}


def instantiate_family(family: str, n_max: int = 200, claim_id: str | None = None, expect: str = "verified",
                       **params) -> CongruenceClaim:
    """Turn a family plus parameters into a concrete claim.

    >>> c = instantiate_family("s3_padic_mod3", p=5, alpha=0, i=1)
    >>> (c.a, c.b, c.m)
    (600, 420, 3)
    """
    if family not in FAMILIES:
        raise FamilyError(f"unknown family {family!r}")
    spec = FAMILIES[family](params)
    kind = spec.pop("kind", "progression")
    tag = "_".join(f"{k}{v}" for k, v in sorted(params.items()))
    return CongruenceClaim(claim_id or f"{family}_{tag}", kind, n_max=n_max, family=family,
                           family_params=dict(params), expect=expect, **spec)


# --- running ------------------------------------------------------------------

def claim_budget(c: CongruenceClaim, n_max: int | None = None, trunc: int | None = None) -> tuple[int, int, int]:
    """(t, modulus, precision) of the expansion a claim reads."""
    if c.kind == "family":
        c = instantiate_family(c.family, c.n_max, c.id, c.expect, **c.family_params)
    nm = c.n_max if n_max is None else n_max
    if c.kind == "series_congruence":
        tr = c.trunc if trunc is None else trunc
        return c.t, c.m, c.a * (tr - 1) + c.b + 1
    if c.kind == "coefficient_identity":
        return c.t, c.m, max(c.a * nm + c.b, c.a2 * nm + c.b2) + 1
    if c.kind == "classification_mod4":
        return c.t, 4, nm + 1
    return c.t, c.m, c.a * nm + c.b + 1


def prewarm(claims: Iterable[CongruenceClaim], n_max: int | None = None, trunc: int | None = None,
            bank: SeriesBank | None = None) -> None:
    """Expand each (t, modulus) once, at the largest precision the claims need."""
    bank = bank or BANK
    top: dict[tuple[int, int], int] = {}
    for c in claims:
        t, m, n = claim_budget(c, n_max, trunc)
        top[(t, m)] = max(top.get((t, m), 0), n)
    for (t, m), n in sorted(top.items()):
        bank.get(t, n, m)


def run_claim(c: CongruenceClaim, n_max: int | None = None, trunc: int | None = None,
              bank: SeriesBank | None = None) -> VerificationReport:
    """Check one claim; ``n_max``/``trunc`` override the claim's own range."""
    bank = bank or BANK
    if c.kind == "family":
        inst = instantiate_family(c.family, c.n_max, c.id, c.expect, **c.family_params)
        return run_claim(inst, n_max, trunc, bank)
    nm = c.n_max if n_max is None else n_max
    if c.kind == "progression":
        rep = check_progression(c.t, c.a, c.b, c.m, nm, c.exclusions, c.id, bank)
    elif c.kind == "series_congruence":
        rep = check_series_congruence((c.t, c.a, c.b), c.rhs, c.m, c.trunc if trunc is None else trunc, c.id, bank)
    elif c.kind == "coefficient_identity":
        rep = check_coefficient_identity(c.t, c.a, c.b, c.a2, c.b2, c.factor, c.m, nm, c.id, bank)
    else:
        rep = check_mod4_classification(c.t, nm, c.rule, c.id, bank)
    if c.family:
        rep.params["family"] = c.family
        rep.params["family_params"] = dict(c.family_params)
    return rep


def _prog(cid, t, a, b, m, n_max, note="", exclusions=()):
    return CongruenceClaim(cid, "progression", t, a, b, m, n_max, tuple(exclusions), note=note)


def theorem_claims() -> list[CongruenceClaim]:
    """Every congruence, each at the range it is checked at by default."""
    out: list[CongruenceClaim] = []
    # classification mod 4
    for t in (3, 5, 7, 15):
        out.append(CongruenceClaim(f"mod4_classification_t{t}", "classification_mod4", t, n_max=5000))
    for t in (9, 25):
        out.append(CongruenceClaim(f"mod4_classification_t{t}_corrected", "classification_mod4", t, n_max=5000,
                                   rule="corrected", note="square t, rule with the 2tj^2 case removed"))
    # base congruences for t = 3
    out += [
        _prog("s3_6n5_mod4", 3, 6, 5, 4, 2000),
        _prog("s3_12n7_mod8", 3, 12, 7, 8, 2000),
        _prog("s3_12n11_mod16", 3, 12, 11, 16, 2000),
    ]
    for k in (3, 4):
        for j in range(1, 8):
            if _EIGHT[j] == _EIGHT_OBSERVED[j]:
                out.append(instantiate_family("power_of_2_8n", 1000, f"s{2 ** k}_8n{j}_mod{_EIGHT[j]}", k=k, j=j))
            else:
                out.append(instantiate_family("power_of_2_8n_observed", 1000, f"s{2 ** k}_8n{j}_mod{_EIGHT_OBSERVED[j]}",
                                              k=k, j=j))
    for k in (2, 3):
        for alpha in (0, 1):
            out.append(instantiate_family("power_of_3_mod3", 500, f"s{3 ** k}_9adic_alpha{alpha}_mod3", k=k, alpha=alpha))
    # mod 3 for t = 3
    out += [
        _prog("s3_9n6_mod3", 3, 9, 6, 3, 2000),
        _prog("s3_24n_mod3", 3, 24, 0, 3, 2000, "fails at n = 0 since S3(0) = 1", exclusions=(0,)),
        CongruenceClaim("s3_24n4_is_2f1^4_mod3", "series_congruence", 3, 24, 4, 3, rhs="2 * f1^4", trunc=300),
        CongruenceClaim("s3_24n12_is_psi_psi3_mod3", "series_congruence", 3, 24, 12, 3, rhs="psi(q) * psi(q^3)", trunc=300),
        _prog("s3_24n16_mod3", 3, 24, 16, 3, 2000),
        CongruenceClaim("s3_27n_vs_3n_mod3", "coefficient_identity", 3, 27, 0, 3, n_max=300, a2=3, b2=0, factor=1),
    ]
    for alpha in (0, 1):
        for i in range(1, 5):
            out.append(instantiate_family("s3_5adic_mod3", 200, f"s3_5adic_mod3_alpha{alpha}_i{i}", alpha=alpha, i=i))
    for p in (5, 11):
        for i in range(1, p):
            out.append(instantiate_family("s3_padic_mod3", 100, f"s3_padic_mod3_p{p}_i{i}", p=p, alpha=0, i=i))
    # mod 8, 6, 12 for t = 3
    out += [
        CongruenceClaim("s3_12n2_is_2f1^4_mod8", "series_congruence", 3, 12, 2, 8, n_max=2000, rhs="2 * f1^4", trunc=2001),
        _prog("s3_12n6_mod6", 3, 12, 6, 6, 2000),
        _prog("s3_12n10_mod12", 3, 12, 10, 12, 2000),
    ]
    for alpha in (0, 1):
        for which in (1, 2):
            out.append(instantiate_family("s3_9adic_mod6", 300, f"s3_9adic_mod6_{which}_alpha{alpha}", alpha=alpha, which=which))
    for k in (1, 2, 3, 4, 6):
        out.append(instantiate_family("s3_eigen_mod8", 200, f"s3_eigen_mod8_p5_k{k}", p=5, k=k))
    for k in (1, 2, 3, 4, 6):
        out.append(instantiate_family("s3_eigen_mod8_iterated", 80, f"s3_eigen_mod8_iterated_p5_j1_k{k}", p=5, j=1, k=k))
        out.append(instantiate_family("s3_eigen_mod8_iterated_odd", 80, f"s3_eigen_mod8_iterated_odd_p5_j1_k{k}",
                                      p=5, j=1, k=k))
    for p in (7, 19):
        for k in (1, 2):
            out.append(instantiate_family("s3_eigen_mod8_any_prime", 100, f"s3_eigen_mod8_p{p}_k{k}", p=p, k=k))
    out.append(instantiate_family("s3_scaling_mod8", 80, "s3_scaling_mod8_p5_j1", p=5, j=1))
    for j, r in ((1, 0), (1, 5), (1, 10), (2, 0), (2, 5)):
        out.append(instantiate_family("s3_descent_mod8", 80, f"s3_descent_mod8_p5_j{j}_r{r}", p=5, j=j, r=r))
    out.append(instantiate_family("s3_descent_mod8", 80, "s3_descent_mod8_p11_j1_r1", p=11, j=1, r=1))
    # t = 9
    out += [
        _prog("s9_6n3_mod4", 9, 6, 3, 4, 2000),
        _prog("s9_6n4_mod6", 9, 6, 4, 6, 2000),
        _prog("s9_6n5_mod8", 9, 6, 5, 8, 2000),
        _prog("s9_6n6_mod12", 9, 6, 6, 12, 2000),
        _prog("s9_12n11_mod16", 9, 12, 11, 16, 1000),
        _prog("s9_24n23_mod32", 9, 24, 23, 32, 1000),
    ]
    for alpha in (0, 1):
        for i in range(1, 5):
            out.append(instantiate_family("s9_5adic_mod6", 200, f"s9_5adic_mod6_alpha{alpha}_i{i}", alpha=alpha, i=i))
    for i in range(1, 5):
        out.append(instantiate_family("s9_padic_mod12", 100, f"s9_padic_mod12_p5_i{i}", p=5, alpha=0, i=i))
    out += [
        _prog("s9_12n4_mod6", 9, 12, 4, 6, 1000),
        _prog("s9_12n10_mod18", 9, 12, 10, 18, 1000),
    ]
    for alpha in (0, 1):
        out.append(instantiate_family("s9_4adic_mod9", 300, f"s9_4adic_mod9_alpha{alpha}", alpha=alpha))
    return out


def printed_variant_claims() -> list[CongruenceClaim]:
    """Forms that were checked and found false; each is expected to fail."""
    out = [
        CongruenceClaim("mod4_classification_t9_literal", "classification_mod4", 9, n_max=5000, rule="literal",
                        expect="counterexample", note="the 2tj^2 case is wrong for square t: S9(18) = 0 mod 4"),
        CongruenceClaim("mod4_classification_t25_literal", "classification_mod4", 25, n_max=5000, rule="literal",
                        expect="counterexample", note="the 2tj^2 case is wrong for square t: S25(50) = 0 mod 4"),
        instantiate_family("s3_scaling_mod8_printed", 80, "s3_scaling_mod8_printed_p5_j1", expect="counterexample", p=5, j=1),
        _prog("s3_24n_mod3_including_0", 3, 24, 0, 3, 2000, "S3(0) = 1"),
    ]
    out[-1] = CongruenceClaim(**{**out[-1].to_dict(), "expect": "counterexample"})
    for k in (1, 2, 3, 4, 6):
        out.append(instantiate_family("s3_eigen_mod8_printed", 200, f"s3_eigen_mod8_printed_p5_k{k}",
                                      expect="counterexample", p=5, k=k))
    out.append(instantiate_family("s3_eigen_mod8_any_prime", 100, "s3_eigen_mod8_p13_k2",
                                  expect="counterexample", p=13, k=2))
    for k in (3, 4):
        for j in range(1, 8):
            if _EIGHT[j] != _EIGHT_OBSERVED[j]:
                out.append(instantiate_family("power_of_2_8n", 1000, f"s{2 ** k}_8n{j}_mod{_EIGHT[j]}",
                                              expect="counterexample", k=k, j=j))
    return out


def known_progressions(t: int) -> set[tuple[int, int, int]]:
    """(a, b, m) triples of the plain progression claims for this t."""
    return {(c.a, c.b, c.m) for c in theorem_claims() if c.kind == "progression" and c.t == t and not c.exclusions}
