"""Command line entry point: ``overschur <subcommand> ...``.

Exit codes: 0 when everything requested passed (or output was produced),
1 when a check produced a counterexample, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import qseries as qs
from .claims import (
    CongruenceClaim,
    claims_from_json,
    known_progressions,
    prewarm,
    printed_variant_claims,
    run_claim,
    theorem_claims,
)
from .combinatorics import i_t_oracle, podbar_oracle, schur_over_oracle
from .identities import IDENTITIES, MISPRINTS, get_identity, verify_identity, verify_p_dissection_lemma
from .modforms import (
    EtaQuotient,
    InsufficientPrecision,
    cusp_orders,
    eigen_check,
    modform_expansion,
    ono_conditions,
)
from .report import VerificationReport
from .seriesspec import SpecSyntaxError
from .specialforms import PrecisionUnderflow, expand, named_series
from .verify import PrecisionBudgetError, scan

SUITES = ("all", "lemmas", "dissections", "theorems", "modforms", "misprints")
DISSECTION_CHECKS = [("psi", p) for p in (3, 5, 7)] + [("f1", p) for p in (5, 7, 11)]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _eta_map(text: str) -> dict[int, int]:
    out = {}
    try:
        for item in text.split(","):
            d, e = item.split(":")
            out[int(d)] = out.get(int(d), 0) + int(e)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected delta:exp pairs, got {text!r}")
    return out


def _add_mode(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="mode", action="store_const", const="json")
    g.add_argument("--csv", dest="mode", action="store_const", const="csv")
    g.add_argument("--human", dest="mode", action="store_const", const="human")
    p.set_defaults(mode="human")
    p.add_argument("--no-timing", action="store_true", help="omit wall-time fields from JSON")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="overschur", description="q-series expansion and congruence checks for t-Schur overpartitions")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)

    p = sub.add_parser("expand", help="expand a series expression")
    p.add_argument("--spec", required=True)
    p.add_argument("--trunc", type=int, required=True)
    p.add_argument("--modulus", type=int)
    _add_mode(p)

    p = sub.add_parser("dissect", help="split a series along the residues mod p")
    p.add_argument("--spec", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--j", type=int, help="one residue class (default: all)")
    p.add_argument("--trunc", type=int, required=True, help="terms per component")
    p.add_argument("--modulus", type=int)
    _add_mode(p)

    p = sub.add_parser("oracle", help="compare brute-force counts with the series")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("schur_over", "i_t", "podbar"), default="schur_over")
    p.add_argument("--reading", choices=("bijective", "literal"), default="bijective")
    _add_mode(p)

    p = sub.add_parser("verify", help="run identity and congruence checks")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--suite", choices=SUITES)
    g.add_argument("--id")
    g.add_argument("--suite-file")
    p.add_argument("--trunc", type=int, default=300, help="precision for identity checks")
    p.add_argument("--nmax", type=int, help="upper bound on the n-range of every claim")
    _add_mode(p)

    p = sub.add_parser("scan", help="search for candidate progressions")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--amax", type=int, required=True)
    p.add_argument("--moduli", type=_int_list, required=True)
    p.add_argument("--depth", type=int, default=200)
    p.add_argument("--min-support", type=int, default=32)
    _add_mode(p)

    p = sub.add_parser("modform", help="eta-quotient conditions, cusp orders, Hecke checks")
    p.add_argument("--eta", type=_eta_map, required=True, help="delta:exp,... e.g. 6:4")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--check", default="ono,cusps,hecke")
    p.add_argument("--primes", type=_int_list, default=[5, 7, 11, 13])
    p.add_argument("--trunc", type=int, default=3000)
    _add_mode(p)
    return ap


class _Out:
    def __init__(self, stream, mode: str, timing: bool):
        self.stream, self.mode, self.timing = stream, mode, timing

    def line(self, text: str = ""):
        self.stream.write(text + "\n")

    def obj(self, d: dict):
        self.line(json.dumps(d, sort_keys=True))

    def report(self, r: VerificationReport):
        if self.mode == "json":
            self.line(r.to_json(self.timing))
        elif self.mode == "csv":
            ce = r.counterexample or {}
            buf = io.StringIO()
            csv.writer(buf, lineterminator="").writerow(
                [r.claim_id, r.verdict, r.n_max, ce.get("n", ""), ce.get("value", ""), ce.get("residue", "")])
            self.line(buf.getvalue())
        else:
            self.line(r.summary())


def _coeff_rows(out: _Out, s: qs.TruncSeries, label: str | None = None):
    for i, c in enumerate(s.tolist()):
        out.line(f"{label},{i},{c}" if label is not None else f"{i},{c}")


def _cmd_expand(a, out: _Out) -> int:
    s = expand(a.spec, a.trunc, a.modulus)
    if a.mode == "json":
        out.obj({"spec": a.spec, "trunc": a.trunc, "modulus": a.modulus, "coefficients": [str(c) for c in s.tolist()]})
    elif a.mode == "csv":
        out.line("index,coefficient")
        _coeff_rows(out, s)
    else:
        out.line(str(s))
    return 0


def _cmd_dissect(a, out: _Out) -> int:
    if a.p < 1:
        raise UsageError("--p must be positive")
    js = range(a.p) if a.j is None else [a.j]
    if any(not 0 <= j < a.p for j in js):
        raise UsageError("--j must lie in 0..p-1")
    base = expand(a.spec, qs.precision_for_extract(a.trunc, a.p, a.p - 1), a.modulus)
    parts = {j: qs.extract(base, a.p, j) for j in js}
    if a.mode == "json":
        out.obj({"spec": a.spec, "p": a.p, "trunc": a.trunc, "modulus": a.modulus,
                 "components": {str(j): [str(c) for c in s.tolist()[:a.trunc]] for j, s in parts.items()}})
    elif a.mode == "csv":
        out.line("j,index,coefficient")
        for j, s in parts.items():
            _coeff_rows(out, qs.truncate(s, a.trunc), str(j))
    else:
        for j, s in parts.items():
            out.line(f"j={j}: {qs.truncate(s, a.trunc)}")
    return 0


def _cmd_oracle(a, out: _Out) -> int:
    if a.kind == "schur_over":
        enum = schur_over_oracle(a.t, a.n)
        ser = named_series("schur_over", a.t, a.n + 1)[a.n]
    elif a.kind == "i_t":
        enum = i_t_oracle(a.t, 2 * a.n, a.reading)
        ser = named_series("schur_over", a.t, a.n + 1)[a.n]
    else:
        enum = podbar_oracle(a.n)
        ser = named_series("overpartition_odd", None, a.n + 1)[a.n]
    ser = int(ser)
    agree = enum == ser
    if a.mode == "json":
        out.obj({"enum": enum, "series": ser, "agree": agree})
    elif a.mode == "csv":
        out.line("enum,series,agree")
        out.line(f"{enum},{ser},{str(agree).lower()}")
    else:
        out.line(f"enumeration {enum}, series {ser}: {'agree' if agree else 'DISAGREE'}")
    return 0 if agree else 1


def _modform_reports(e: EtaQuotient, checks: Sequence[str], primes: Sequence[int], trunc: int) -> list[VerificationReport]:
    reps = []
    if "ono" in checks:
        oc = ono_conditions(e)
        reps.append(VerificationReport("ono_conditions", {"eta": str(e), **oc.to_dict()}, 0,
                                       "verified" if oc.holds else "counterexample",
                                       None if oc.holds else {"n": 0, "value": "conditions fail", "residue": 0}))
    if "cusps" in checks:
        orders = cusp_orders(e)
        low = min(orders, key=lambda d: orders[d])
        ok = orders[low] > 0
        reps.append(VerificationReport("cusp_orders", {"eta": str(e), "orders": {str(d): str(v) for d, v in orders.items()}},
                                       e.level, "verified" if ok else "counterexample",
                                       None if ok else {"n": low, "value": str(orders[low]), "residue": 0}))
    if "hecke" in checks:
        f = modform_expansion(e, trunc)
        for p in primes:
            reps.append(eigen_check(f, p, (trunc - 1) // p))
    return reps


def _cmd_modform(a, out: _Out) -> int:
    checks = [c.strip() for c in a.check.split(",") if c.strip()]
    bad = set(checks) - {"ono", "cusps", "hecke"}
    if bad:
        raise UsageError(f"unknown checks {sorted(bad)}")
    try:
        e = EtaQuotient(a.level, a.eta)
    except ValueError as exc:
        raise UsageError(str(exc))
    reps = _modform_reports(e, checks, a.primes, a.trunc)
    for r in reps:
        out.report(r)
    return 0 if all(r.passed for r in reps) else 1


def _suite_reports(suite: str, trunc: int, nmax: int | None):
    """Yield reports of a named suite in a fixed order."""
    if suite in ("all", "lemmas"):
        for ident in IDENTITIES:
            yield verify_identity(ident, trunc)
    if suite in ("all", "lemmas", "dissections"):
        for which, p in DISSECTION_CHECKS:
            yield verify_p_dissection_lemma(which, p, min(trunc, 200) if suite != "dissections" else trunc)
    if suite in ("all", "theorems"):
        yield from _run_claims(theorem_claims(), nmax)
    if suite in ("all", "modforms"):
        from .modforms import ETA4_6Z
        yield from _modform_reports(ETA4_6Z, ("ono", "cusps", "hecke"), (5, 7, 11, 13), 3000)
    if suite == "misprints":
        for ident in MISPRINTS:
            yield verify_identity(ident, trunc)
        yield from _run_claims(printed_variant_claims(), nmax)


def _run_claims(claims: list[CongruenceClaim], nmax: int | None):
    caps = [None if nmax is None else min(c.n_max, nmax) for c in claims]
    prewarm(claims, nmax if nmax is not None and all(nmax <= c.n_max for c in claims) else None)
    for c, cap in zip(claims, caps):
        yield run_claim(c, cap)


def _cmd_verify(a, out: _Out) -> int:
    if a.trunc < 2:
        raise UsageError("--trunc must be at least 2")
    if a.nmax is not None and a.nmax < 0:
        raise UsageError("--nmax must be nonnegative")
    if a.id is not None:
        try:
            get_identity(a.id)
            reps = [verify_identity(a.id, a.trunc)]
        except KeyError:
            claims = [c for c in theorem_claims() + printed_variant_claims() if c.id == a.id]
            if not claims:
                raise UsageError(f"unknown identity or claim id {a.id!r}")
            reps = list(_run_claims(claims, a.nmax))
    elif a.suite_file is not None:
        try:
            with open(a.suite_file) as fh:
                claims = claims_from_json(fh.read())
        except (OSError, ValueError, TypeError) as exc:
            raise UsageError(f"cannot read suite file: {exc}")
        reps = list(_run_claims(claims, a.nmax))
    else:
        reps = _suite_reports(a.suite, a.trunc, a.nmax)
    code = 0
    for r in reps:
        out.report(r)
        if not r.passed:
            code = 1
    return code


def _cmd_scan(a, out: _Out) -> int:
    if any(m < 2 for m in a.moduli):
        raise UsageError("moduli must be at least 2")
    try:
        found = scan(a.t, a.amax, a.moduli, a.depth, a.min_support, known_progressions(a.t))
    except ValueError as exc:
        raise UsageError(str(exc))
    if a.mode == "json":
        for c in found:
            out.obj(c.to_dict())
    elif a.mode == "csv":
        out.line("t,a,b,m,support,known,label")
        for c in found:
            out.line(f"{c.t},{c.a},{c.b},{c.m},{c.support},{str(c.known).lower()},{c.label}")
    else:
        for c in found:
            tag = "known" if c.known else "new"
            out.line(f"{c.label}: S{c.t}({c.a}n+{c.b}) = 0 mod {c.m}  (n <= {c.support - 1}, {tag})")
    return 0


COMMANDS = {
    "expand": _cmd_expand,
    "dissect": _cmd_dissect,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "modform": _cmd_modform,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        if a.cmd is None:
            raise UsageError("a subcommand is required")
        return COMMANDS[a.cmd](a, _Out(stdout, a.mode, not a.no_timing))
    except UsageError as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (SpecSyntaxError, PrecisionUnderflow, PrecisionBudgetError, InsufficientPrecision, ValueError) as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"overschur: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
