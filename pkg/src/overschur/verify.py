"""Finite-range verification of congruences for the t-Schur overpartition counts.

All checks read coefficients from :class:`SeriesBank`, which expands the
generating function of S_t once per (t, modulus) at the largest
precision asked for so far and shares it read-only.  Every check works
out the precision it needs up front and refuses to run with less.
"""
from __future__ import annotations

import math
import threading
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import qseries as qs
from .combinatorics import schur_over_oracle
from .qseries import TruncSeries
from .report import VerificationReport, timer
from .specialforms import expand, named_series

__all__ = [
    "SeriesBank",
    "BANK",
    "PrecisionBudgetError",
    "check_progression",
    "check_series_congruence",
    "check_coefficient_identity",
    "check_mod4_classification",
    "mod4_expected",
    "Candidate",
    "scan",
    "replay_counterexample",
]

# hard ceiling on a single expansion; keeps a mistyped claim from eating memory
MAX_PRECISION = 8_000_000


class PrecisionBudgetError(ValueError):
    pass


class SeriesBank:
    """Shared expansions of sum S_t(n) q^n, reduced mod m (m=None for exact)."""

    def __init__(self):
        self._store: dict[tuple[int, int | None], TruncSeries] = {}
        self._lock = threading.Lock()

    def get(self, t: int, precision: int, modulus: int | None = None) -> TruncSeries:
        if precision > MAX_PRECISION:
            raise PrecisionBudgetError(f"precision {precision} exceeds the ceiling {MAX_PRECISION}")
        key = (t, modulus)
        with self._lock:
            have = self._store.get(key)
            if have is not None and have.precision >= precision:
                return have
            # grow with some slack so a run of slightly larger requests stays cheap
            n = precision if have is None else max(precision, min(have.precision * 5 // 4, MAX_PRECISION))
            s = named_series("schur_over", t, n, modulus)
            self._store[key] = s
            return s

    def coefficients(self, t: int, a: int, b: int, count: int, modulus: int | None = None) -> np.ndarray:
        """S_t(a n + b) for n = 0 .. count-1 (reduced mod modulus if given)."""
        need = a * (count - 1) + b + 1
        s = self.get(t, need, modulus)
        return s.coeffs[b:need:a]

    def clear(self):
        with self._lock:
            self._store.clear()


BANK = SeriesBank()


def _budget(need: int) -> None:
    if need > MAX_PRECISION:
        raise PrecisionBudgetError(f"check needs precision {need}, ceiling is {MAX_PRECISION}")


def check_progression(t: int, a: int, b: int, m: int, n_max: int, exclusions: Iterable[int] = (),
                      claim_id: str | None = None, bank: SeriesBank | None = None) -> VerificationReport:
    """S_t(a n + b) = 0 mod m for every admissible 0 <= n <= n_max."""
    if a < 1 or b < 0 or m < 2 or n_max < 0:
        raise ValueError("need a >= 1, b >= 0, m >= 2, n_max >= 0")
    bank = bank or BANK
    _budget(a * n_max + b + 1)
    excl = set(exclusions)
    params = {"t": t, "a": a, "b": b, "m": m}
    if excl:
        params["exclusions"] = sorted(excl)
    cid = claim_id or f"S{t}({a}n+{b})=0_mod{m}"
    with timer() as tm:
        vals = bank.coefficients(t, a, b, n_max + 1, m)
        bad = [int(n) for n in np.nonzero(vals)[0] if int(n) not in excl]
    if not bad:
        return VerificationReport(cid, params, n_max, "verified", None, tm[0])
    n = bad[0]
    exact = bank.coefficients(t, a, b, n + 1, None)[n] if a * n + b < 20000 else None
    value = str(exact) if exact is not None else f"{int(vals[n])} (mod {m})"
    return VerificationReport(cid, params, n_max, "counterexample", {"n": n, "value": value, "residue": int(vals[n])}, tm[0])


def check_series_congruence(lhs: tuple[int, int, int], rhs, m: int, trunc: int,
                            claim_id: str | None = None, bank: SeriesBank | None = None) -> VerificationReport:
    """sum S_t(a n + b) q^n = rhs (mod m) through q^(trunc-1)."""
    if trunc < 2:
        raise ValueError("trunc must be at least 2")
    t, a, b = lhs
    bank = bank or BANK
    _budget(a * (trunc - 1) + b + 1)
    text = rhs if isinstance(rhs, str) else str(rhs)
    params = {"t": t, "a": a, "b": b, "m": m, "rhs": text, "trunc": trunc}
    cid = claim_id or f"S{t}({a}n+{b})={text}_mod{m}"
    with timer() as tm:
        left = qs.series(bank.coefficients(t, a, b, trunc, m), modulus=m)
        right = expand(rhs, trunc, m, eager=True)
        diff = np.nonzero(left.coeffs != right.coeffs)[0]
    if len(diff) == 0:
        return VerificationReport(cid, params, trunc - 1, "verified", None, tm[0])
    n = int(diff[0])
    r = int((left[n] - right[n]) % m)
    return VerificationReport(cid, params, trunc - 1, "counterexample", {"n": n, "value": f"{r} (mod {m})", "residue": r}, tm[0])


def check_coefficient_identity(t: int, a1: int, b1: int, a2: int, b2: int, c: int, m: int, n_max: int,
                               claim_id: str | None = None, bank: SeriesBank | None = None) -> VerificationReport:
    """S_t(a1 n + b1) = c S_t(a2 n + b2) (mod m) for 0 <= n <= n_max."""
    bank = bank or BANK
    _budget(max(a1 * n_max + b1, a2 * n_max + b2) + 1)
    params = {"t": t, "a1": a1, "b1": b1, "a2": a2, "b2": b2, "factor": c, "m": m}
    cid = claim_id or f"S{t}({a1}n+{b1})={c}*S{t}({a2}n+{b2})_mod{m}"
    with timer() as tm:
        need = max(a1 * n_max + b1, a2 * n_max + b2) + 1
        bank.get(t, need, m)
        x = bank.coefficients(t, a1, b1, n_max + 1, m).astype(object)
        y = bank.coefficients(t, a2, b2, n_max + 1, m).astype(object)
        d = (x - c * y) % m
        bad = np.nonzero(d)[0]
    if len(bad) == 0:
        return VerificationReport(cid, params, n_max, "verified", None, tm[0])
    n = int(bad[0])
    return VerificationReport(cid, params, n_max, "counterexample",
                              {"n": n, "value": f"{int(x[n])} - ({c})*{int(y[n])} (mod {m})", "residue": int(d[n])}, tm[0])


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _kind(n: int) -> tuple[bool, bool]:
    """(n is a positive square, n is twice a positive square)."""
    return n > 0 and _is_square(n), n > 0 and n % 2 == 0 and _is_square(n // 2)


def mod4_expected(t: int, n: int, rule: str = "literal") -> int:
    """Residue of S_t(n) mod 4 predicted by the classification.

    Non-square t: 2 iff n is j^2, 2j^2, tj^2 or 2tj^2.  Square t, literal
    rule: 2 iff n is 2j^2 or 2tj^2, or n = j^2 with t not dividing n.
    Square t, corrected rule: 2 iff n = j^2 with t not dividing n, or
    n = 2j^2 with t not dividing n/2.
    """
    if n == 0:
        return 1
    sq, dsq = _kind(n)
    if not _is_square(t):
        hit = sq or dsq or (n % t == 0 and any(_kind(n // t)))
        return 2 if hit else 0
    if rule == "literal":
        hit = dsq or (n % (2 * t) == 0 and _is_square(n // (2 * t))) or (sq and n % t != 0)
    elif rule == "corrected":
        hit = (sq and n % t != 0) or (dsq and (n // 2) % t != 0)
    else:
        raise ValueError("rule must be 'literal' or 'corrected'")
    return 2 if hit else 0


def check_mod4_classification(t: int, n_max: int, rule: str = "literal",
                              claim_id: str | None = None, bank: SeriesBank | None = None) -> VerificationReport:
    """S_t(n) mod 4 against :func:`mod4_expected` for 0 <= n <= n_max."""
    if t < 3 or t % 2 == 0:
        raise ValueError("the classification covers odd t >= 3")
    bank = bank or BANK
    _budget(n_max + 1)
    params = {"t": t, "rule": rule, "square_t": _is_square(t)}
    cid = claim_id or f"S{t}_mod4_classification_{rule}"
    with timer() as tm:
        vals = bank.coefficients(t, 1, 0, n_max + 1, 4)
        bad = next((n for n in range(n_max + 1) if int(vals[n]) != mod4_expected(t, n, rule)), None)
    if bad is None:
        return VerificationReport(cid, params, n_max, "verified", None, tm[0])
    return VerificationReport(cid, params, n_max, "counterexample",
                              {"n": bad, "value": f"{int(vals[bad])} (mod 4), predicted {mod4_expected(t, bad, rule)}",
                               "residue": int(vals[bad])}, tm[0])


@dataclass(frozen=True)
class Candidate:
    t: int
    a: int
    b: int
    m: int
    support: int
    known: bool = False
    label: str = "candidate"

    def to_dict(self) -> dict:
        return asdict(self)


def _implied_by(x: tuple[int, int, int], y: tuple[int, int, int]) -> bool:
    """True when progression y = 0 mod m_y implies x = 0 mod m_x."""
    (a, b, m), (a2, b2, m2) = x, y
    return x != y and a % a2 == 0 and b % a2 == b2 and m2 % m == 0


def scan(t: int, a_max: int, m_set: Sequence[int], n_depth: int, min_support: int = 32,
         known: Iterable[tuple[int, int, int]] = (), bank: SeriesBank | None = None) -> list[Candidate]:
    """Search for progressions a n + b (b < a <= a_max) on which S_t vanishes mod m.

    A triple is reported when S_t(a n + b) = 0 mod m for all n <= n_depth.
    Triples implied by another reported triple (a' | a, b = b' mod a',
    m | m') are dropped.  ``known`` triples are flagged, everything stays a
    candidate: nothing here is a proof.
    """
    if min_support < 8:
        raise ValueError("min_support must be at least 8")
    if n_depth < min_support:
        raise ValueError("n_depth must be at least min_support")
    bank = bank or BANK
    mods = sorted(set(int(m) for m in m_set))
    M = math.lcm(*mods)
    need = a_max * n_depth + a_max
    _budget(need)
    s = bank.get(t, need, M).coeffs
    found = []
    for a in range(1, a_max + 1):
        for b in range(a):
            vals = s[b:a * n_depth + b + 1:a]
            for m in mods:
                if not np.any(vals % m):
                    found.append((a, b, m))
    keep = [x for x in found if not any(_implied_by(x, y) for y in found)]
    known_set = set(known)
    return [Candidate(t, a, b, m, n_depth + 1, (a, b, m) in known_set) for a, b, m in keep]


def replay_counterexample(report: VerificationReport, limit: int = 60) -> bool | None:
    """Re-derive a progression counterexample with the enumeration oracle.

    Returns True if the oracle confirms the violation, False if it does
    not, None when the report is out of the oracle's reach.
    """
    p = report.params
    ce = report.counterexample
    if ce is None or not {"t", "a", "b", "m"} <= set(p):
        return None
    t = p["t"]
    n = p["a"] * ce["n"] + p["b"]
    if t % 2 == 0 or t < 3 or n > limit:
        return None
    v = schur_over_oracle(t, n)
    return v % p["m"] != 0 and v % p["m"] == ce["residue"]
