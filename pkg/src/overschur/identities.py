"""Registry of q-series identities and a checker that expands both sides.

Each entry is data: an id, two series expressions and either exact
equality or a congruence modulo m.  ``verify_identity`` expands both
sides to a common precision and reports the first index where they
differ.  Entries listed in ``MISPRINTS`` are variants that do *not*
hold; they are kept so the checker can demonstrate the failure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import qseries as qs
from .qseries import TruncSeries
from .report import VerificationReport, timer
from .seriesspec import SeriesSpec, parse, to_text
from .specialforms import eta_power, expand, theta_sum

__all__ = [
    "Identity",
    "IDENTITIES",
    "MISPRINTS",
    "get_identity",
    "identity_ids",
    "first_mismatch",
    "compare_series",
    "verify_identity",
    "verify_p_dissection_lemma",
    "psi_dissection",
    "f1_dissection",
    "phi_power_product",
]

Side = Union[SeriesSpec, Callable[[int, "int | None"], TruncSeries]]


@dataclass(frozen=True)
class Identity:
    id: str
    lhs: Side
    rhs: Side
    modulus: int | None = None
    note: str = ""
    group: str = "lemma"

    @property
    def relation(self) -> str:
        return "equal" if self.modulus is None else f"congruent mod {self.modulus}"

    def side_text(self, side: Side) -> str:
        if callable(side):
            return getattr(side, "__doc__", None) or getattr(side, "__name__", "<callable>")
        return to_text(side)

    def expand_side(self, side: Side, trunc: int) -> TruncSeries:
        if callable(side):
            out = side(trunc, self.modulus)
            return qs.reduce_mod(out, self.modulus) if self.modulus and out.modulus is None else out
        return expand(side, trunc, self.modulus, eager=self.modulus is not None)


def phi_power_product(trunc: int, modulus: int | None = None) -> TruncSeries:
    """prod_{i>=0} phi(q^(2^i))^(2^i)"""
    acc = qs.one(trunc, modulus)
    k = 1
    while k < trunc:
        acc = qs.mul(acc, qs.power(theta_sum(k, k, 1, 1, trunc, modulus), k))
        k *= 2
    return acc


S3 = "schur_over(3)"
S9 = "schur_over(9)"

# a from the 5-dissection of f_1, and 1/a
_A5 = "poch(q^10, q^25) * poch(q^15, q^25) / (poch(q^5, q^25) * poch(q^20, q^25))"
_A5_INV = "poch(q^5, q^25) * poch(q^20, q^25) / (poch(q^10, q^25) * poch(q^15, q^25))"
_A5_PRINTED = "poch(q^10, q^25) * poch(q^15, q^25) / (poch(q^5, q^25) * poch(q^10, q^25))"
_A5_PRINTED_INV = "poch(q^5, q^25) * poch(q^10, q^25) / (poch(q^10, q^25) * poch(q^15, q^25))"


def _gf_product(t: int) -> str:
    return f"poch(-q, q^2) * poch(q^{t}, q^{2 * t}) / (poch(-q^{t}, q^{2 * t}) * poch(q, q^2))"


def _gf_phi(t: int) -> str:
    return f"phi(-q^2) * phi(-q^{t}) / (phi(-q) * phi(-q^{2 * t}))"


# (id, lhs, rhs, modulus, note, group)
_TABLE: list[tuple] = [
    # theta functions against their product forms
    ("phi_eta", "phi(q)", "f2^5 / (f1^2 * f4^2)", None, "phi(q) as an eta quotient", "theta"),
    ("psi_eta", "psi(q)", "f2^2 / f1", None, "psi(q) as an eta quotient", "theta"),
    ("phi_neg_eta", "phi(-q)", "f1^2 / f2", None, "phi(-q) as an eta quotient", "theta"),
    ("phi_general", "f(q, q)", "phi(q)", None, "phi(q) = f(q, q)", "theta"),
    ("psi_general", "f(q, q^3)", "psi(q)", None, "psi(q) = f(q, q^3)", "theta"),
    ("P_neg_sum", "f(q^2, -q)", "P_neg", None, "sum over (-q)^((3n^2 +- n)/2) against its eta quotient", "theta"),
    ("overpartition_phi", "overpartition * phi(-q)", "1", None, "overpartition series is 1/phi(-q)", "theta"),
    ("overpartition_odd_product", "overpartition_odd", "poch(-q, q^2) / poch(q, q^2)", None,
     "odd-part overpartitions as a product over odd parts", "theta"),
    ("schur_product", "schur(3)", "1 / (poch(q, q^6) * poch(q^5, q^6))", None,
     "S_3 counts partitions into parts congruent to 1 or 5 mod 6", "theta"),
]

for _t in (3, 5, 9):
    _TABLE += [
        (f"schur_over_product_eta_t{_t}", _gf_product(_t), f"schur_over({_t})", None,
         f"generating function of S_{_t}: product form = eta form", "generating"),
        (f"schur_over_phi_eta_t{_t}", _gf_phi(_t), f"schur_over({_t})", None,
         f"generating function of S_{_t}: theta form = eta form", "generating"),
        (f"schur_over_product_phi_t{_t}", _gf_product(_t), _gf_phi(_t), None,
         f"generating function of S_{_t}: product form = theta form", "generating"),
    ]

_TABLE += [
    # 2-dissections
    ("d2_inv_f1_4", "1 / f1^4", "f4^14 / (f2^14 * f8^4) + 4q * f4^2 * f8^4 / f2^10", None, "2-dissection of 1/f1^4", "dissection"),
    ("d2_f3sq_over_f1sq", "f3^2 / f1^2", "f4^4 * f6 * f12^2 / (f2^5 * f8 * f24) + 2q * f4 * f6^2 * f8 * f24 / (f2^4 * f12)", None,
     "2-dissection of f3^2/f1^2", "dissection"),
    ("d2_f3cube_over_f1", "f3^3 / f1", "f4^3 * f6^2 / (f2^2 * f12) + q * f12^3 / f4", None, "2-dissection of f3^3/f1", "dissection"),
    ("d2_f1_over_f3cube", "f1 / f3^3", "f2 * f4^2 * f12^2 / f6^7 - q * f2^3 * f12^6 / (f4^2 * f6^9)", None,
     "2-dissection of f1/f3^3", "dissection"),
    ("d2_f3_over_f1cube", "f3 / f1^3", "f4^6 * f6^3 / (f2^9 * f12^2) + 3q * f4^2 * f6 * f12^2 / f2^7", None,
     "2-dissection of f3/f1^3", "dissection"),
    ("d2_f1cube_over_f3", "f1^3 / f3", "f4^3 / f12 - 3q * f2^2 * f12^3 / (f4 * f6^2)", None, "2-dissection of f1^3/f3", "dissection"),
    ("d2_inv_f1sq_f3sq", "1 / (f1^2 * f3^2)",
     "f8^5 * f24^5 / (f2^5 * f6^5 * f16^2 * f48^2) + 2q * f4^4 * f12^4 / (f2^6 * f6^6)"
     " + 4q^4 * f4^2 * f12^2 * f16^2 * f48^2 / (f2^5 * f6^5 * f8 * f24)", None, "2-dissection of 1/(f1^2 f3^2)", "dissection"),
    ("d2_inv_f1_f3", "1 / (f1 * f3)",
     "f8^2 * f12^5 / (f2^2 * f4 * f6^4 * f24^2) + q * f4^5 * f24^2 / (f2^4 * f6^2 * f8^2 * f12)", None,
     "2-dissection of 1/(f1 f3)", "dissection"),
    ("d2_f1_f3", "f1 * f3", "f2 * f8^2 * f12^4 / (f4^2 * f6 * f24^2) - q * f4^4 * f6 * f24^2 / (f2 * f8^2 * f12^2)", None,
     "2-dissection of f1 f3", "dissection"),
    # 3-dissections of f1 f2 and its inverse
    ("d3_f1_f2", "f1 * f2", "f6 * f9^4 / (f3 * f18^2) - q * f9 * f18 - 2q^2 * f3 * f18^4 / (f6 * f9^2)", None,
     "3-dissection of f1 f2", "dissection"),
    ("d3_inv_f1_f2", "1 / (f1 * f2)",
     "f9^9 / (f3^6 * f6^2 * f18^3) + q * f9^6 / (f3^5 * f6^3) + 3q^2 * f9^3 * f18^3 / (f3^4 * f6^4)"
     " - 2q^3 * f18^6 / (f3^3 * f6^5) + 4q^4 * f18^9 / (f3^2 * f6^6 * f9^3)", None, "3-dissection of 1/(f1 f2)", "dissection"),
    # 5-dissection of f1
    ("d5_f1", "f1", f"f25 * ({_A5} - q - q^2 * {_A5_INV})", None,
     "5-dissection of f1 with a = (q^10;q^25)(q^15;q^25)/((q^5;q^25)(q^20;q^25))", "dissection"),
    ("d3_f4_over_f1", "f4 / f1",
     "f12 * f18^4 / (f3^3 * f36^2) + q * f6^2 * f9^3 * f36 / (f3^4 * f18^2) + 2q^2 * f6 * f18 * f36 / f3^3", None,
     "3-dissection of f4/f1", "dissection"),
    ("d3_f1_over_f4", "f1 / f4",
     "f6 * f9 * f18 / f12^3 - q * f3 * f18^4 / (f9^2 * f12^3) - q^2 * f6^2 * f9 * f36^3 / (f12^4 * f18^2)", None,
     "3-dissection of f1/f4", "dissection"),
    ("d2_f9_over_f1", "f9 / f1", "f12^3 * f18 / (f2^2 * f6 * f36) + q * f4^2 * f6 * f36 / (f2^3 * f12)", None,
     "2-dissection of f9/f1", "dissection"),
    ("d2_f9sq_over_f1sq", "f9^2 / f1^2",
     "f12^6 * f18^2 / (f2^4 * f6^2 * f36^2) + 2q * f4^2 * f12^2 * f18 / f2^5 + q^2 * f4^4 * f6^2 * f36^2 / (f2^6 * f12^2)",
     None, "2-dissection of f9^2/f1^2 (square of the f9/f1 dissection)", "dissection"),
    ("d3_f2cube_over_f1cube", "f2^3 / f1^3",
     "f6 / f3 + 3q * f6^4 * f9^5 / (f3^8 * f18) + 6q^2 * f6^3 * f9^2 * f18^2 / f3^7 + 12q^3 * f6^2 * f18^5 / (f3^6 * f9)",
     None, "3-dissection of f2^3/f1^3", "dissection"),
    ("d3_f2_over_f1sq", "f2 / f1^2", "f6^4 * f9^6 / (f3^8 * f18^3) + 2q * f6^3 * f9^3 / f3^7 + 4q^2 * f6^2 * f18^3 / f3^6", None,
     "3-dissection of f2/f1^2", "dissection"),
    ("phi_product_f2_over_f1sq", "f2 / f1^2", phi_power_product, None,
     "f2/f1^2 = phi(q) phi(q^2)^2 phi(q^4)^4 ...", "dissection"),
    ("d3_f2sq_over_f1", "f2^2 / f1", "f6 * f9^2 / (f3 * f18) + q * f18^2 / f9", None, "3-dissection of f2^2/f1", "dissection"),
    ("d3_psi_neg_A", "psi(-q)", "A_cubed - q * psi(-q^9)", None, "3-dissection of psi(-q) through A(q^3)", "dissection"),
    ("d3_psi_neg_P", "psi(-q)", "dil(P_neg, 3) - q * psi(-q^9)", None, "3-dissection of psi(-q) through P(-q^3)", "dissection"),
    ("A_cubed_is_P_neg_dilated", "A_cubed", "dil(P_neg, 3)", None, "A(q^3) = P(-q^3)", "dissection"),
    ("d3_phi_neg", "phi(-q)", "phi(-q^9) - 2q * f3 * f18^2 / (f6 * f9)", None, "3-dissection of phi(-q)", "dissection"),
    ("son_identity", "f2^4 * f3^8 / (f1^8 * f6^4)", "1 + 8q * f2 * f6^5 / (f1^5 * f3)", None,
     "f2^4 f3^8/(f1^8 f6^4) = 1 + 8q f2 f6^5/(f1^5 f3)", "dissection"),
    # S_9 6-dissection
    ("s9_6n", f"extract({S9}, 6, 0)", "1 + 12q * f2 * f6^5 / (f1^5 * f3)", None, "S9(6n)", "s9"),
    ("s9_6n1", f"extract({S9}, 6, 1)", "2 * f2^6 * f3^4 / (f1^8 * f6^2)", None, "S9(6n+1)", "s9"),
    ("s9_6n2", f"extract({S9}, 6, 2)", "f2^3 * f3^5 / (f1^7 * f6) + f1 * f6^3 / (f2 * f3^3) + 16q * f6^8 / (f1^4 * f3^4)", None,
     "S9(6n+2)", "s9"),
    ("s9_6n3", f"extract({S9}, 6, 3)", "4 * f2^5 * f3 * f6 / f1^7", None, "S9(6n+3)", "s9"),
    ("s9_6n4", f"extract({S9}, 6, 4)", "6 * f2^2 * f3^2 * f6^2 / f1^6", None, "S9(6n+4)", "s9"),
    ("s9_6n5", f"extract({S9}, 6, 5)", "8 * f2^4 * f6^4 / (f1^6 * f3^2)", None, "S9(6n+5)", "s9"),
    # S_9 intermediate dissections
    ("s9_2dissection", S9,
     "f12^6 / (f2 * f4 * f6^2 * f18 * f36) + 2q * f4 * f12^2 * f36 / (f2^2 * f18^2)"
     " + q^2 * f4^3 * f6^2 * f36^3 / (f2^3 * f12^2 * f18^3)", None, "2-dissection of the S9 generating function", "s9"),
    ("s9_2n", f"extract({S9}, 2, 0)", "f6^6 / (f1 * f2 * f3^2 * f9 * f18) + q * f2^3 * f3^2 * f18^3 / (f1^3 * f6^2 * f9^3)", None,
     "S9(2n)", "s9"),
    ("s9_2n1", f"extract({S9}, 2, 1)", "2 * f2 * f6^2 * f18 / (f1^2 * f9^2)", None, "S9(2n+1)", "s9"),
    ("s9_2n_3dissection", f"extract({S9}, 2, 0)",
     "f6^4 * f9^8 / (f3^8 * f18^4) + q * (f6^3 * f9^5 / (f3^7 * f18) + f3 * f18^3 / (f6 * f9^3))"
     " + 6q^2 * f6^2 * f9^2 * f18^2 / f3^6 + 4q^3 * f6 * f18^5 / (f3^5 * f9) + 16q^4 * f18^8 / (f3^4 * f9^4)", None,
     "3-dissection of S9(2n)", "s9"),
    ("s9_2n1_3dissection", f"extract({S9}, 2, 1)",
     "2 * f6^6 * f9^4 / (f3^8 * f18^2) + 4q * f6^5 * f9 * f18 / f3^7 + 8q^2 * f6^4 * f18^4 / (f3^6 * f9^2)", None,
     "3-dissection of S9(2n+1)", "s9"),
    ("s9_6n_son_form", f"extract({S9}, 6, 0)", "f2^4 * f3^8 / (f1^8 * f6^4) + 4q * f2 * f6^5 / (f1^5 * f3)", None,
     "S9(6n) before Son's identity", "s9"),
    ("s9_6n4_2dissection", f"extract({S9}, 6, 4)",
     "6 * f4^12 * f6^8 / (f2^16 * f12^4) + 36q * f4^8 * f6^6 / f2^14 + 54q^2 * f4^4 * f6^4 * f12^4 / f2^12", None,
     "2-dissection of S9(6n+4)", "s9"),
    ("s9_12n4", f"extract({S9}, 12, 4)", "6 * f2^12 * f3^8 / (f1^16 * f6^4) + 54q * f2^4 * f3^4 * f6^4 / f1^12", None,
     "S9(12n+4)", "s9"),
    ("s9_12n4_mod9", f"extract({S9}, 12, 4)", "6 * f1^2 * f2^3 * f3^2 / f6", 9, "S9(12n+4) mod 9", "s9"),
    ("s9_12n4_mod9_eta", f"extract({S9}, 12, 4)", "6 * f2^12 * f3^8 / (f1^16 * f6^4)", 9, "S9(12n+4) mod 9", "s9"),
    ("s9_24n16_mod9", f"extract({S9}, 24, 16)", "6 * f1^3 * f2^2 * f6^2 / f3", 9, "S9(24n+16) mod 9", "s9"),
    ("s9_24n16_mod9_split", f"extract({S9}, 24, 16)", "6 * f2^2 * f6^2 * f4^3 / f12 - 18 * f2^4 * f12^3 / f4", 9,
     "S9(24n+16) mod 9, split form as printed (the second term carries no q; it vanishes mod 9 anyway)", "s9"),
    ("s9_48n16_mod9", f"extract({S9}, 48, 16)", "6 * f1^2 * f2^3 * f3^2 / f6", 9, "S9(48n+16) mod 9", "s9"),
    ("s9_96n64_mod9", f"extract({S9}, 96, 64)", "6 * f1^3 * f2^2 * f6^2 / f3", 9, "S9(96n+64) mod 9", "s9"),
    ("s9_192n64_mod9", f"extract({S9}, 192, 64)", "6 * f1^2 * f2^3 * f3^2 / f6", 9, "S9(192n+64) mod 9", "s9"),
    ("s9_6n1_mod6", f"extract({S9}, 6, 1)", "2 * f1^4", 6, "S9(6n+1) mod 6", "s9"),
    ("s9_6n3_mod12", f"extract({S9}, 6, 3)", "4 * f2^2 * f6^2 / (f1 * f3)", 12, "S9(6n+3) mod 12", "s9"),
    ("s9_6n3_mod12_psi", f"extract({S9}, 6, 3)", "4 * psi(q) * psi(q^3)", 12, "S9(6n+3) mod 12 via psi", "s9"),
    ("s9_12n11_mod32", f"extract({S9}, 12, 11)", "16 * f2^18 * f6^4 / (f1^16 * f3^2 * f4^4)", 32, "S9(12n+11) mod 32", "s9"),
    ("s9_12n11_mod32_short", f"extract({S9}, 12, 11)", "16 * f2^10 * f6^3 / f4^4", 32, "S9(12n+11) mod 32", "s9"),
    # S_3 dissections
    ("s3_2dissection", S3, "f4^3 * f12^3 / (f2^2 * f6^2 * f8 * f24) + 2q * f8 * f24 / (f2 * f6)", None,
     "2-dissection of the S3 generating function", "s3"),
    ("s3_2n", f"extract({S3}, 2, 0)", "f2^3 * f6^3 / (f1^2 * f3^2 * f4 * f12)", None, "S3(2n)", "s3"),
    ("s3_2n1", f"extract({S3}, 2, 1)", "2 * f4 * f12 / (f1 * f3)", None, "S3(2n+1)", "s3"),
    ("s3_2n_mod3", f"extract({S3}, 2, 0)", "f1 * f2^3 * f6^3 / (f3^3 * f4 * f12)", 3, "S3(2n) mod 3", "s3"),
    ("s3_4n_mod3", f"extract({S3}, 4, 0)", "f1^4 * f2 * f6 / f3^4", 3, "S3(4n) mod 3", "s3"),
    ("s3_4n_mod3_short", f"extract({S3}, 4, 0)", "f1 * f2 * f6 / f3^3", 3, "S3(4n) mod 3", "s3"),
    ("s3_4n_mod3_3dissection", f"extract({S3}, 4, 0)",
     "f6^2 * f9^4 / (f3^4 * f18^2) - q * f6 * f9 * f18 / f3^3 - 2q^2 * f18^4 / (f3^2 * f9^2)", 3,
     "S3(4n) mod 3, 3-dissected", "s3"),
    ("s3_12n_mod3", f"extract({S3}, 12, 0)", "f2^2 * f3^4 / (f1^4 * f6^2)", 3, "S3(12n) mod 3", "s3"),
    ("s3_12n_mod3_short", f"extract({S3}, 12, 0)", "f2^2 * f3^3 / (f1 * f6^2)", 3, "S3(12n) mod 3", "s3"),
    ("s3_12n4_mod3", f"extract({S3}, 12, 4)", "2 * f2 * f3 * f6 / f1^3", 3, "S3(12n+4) mod 3", "s3"),
    ("s3_12n4_mod3_2dissection", f"extract({S3}, 12, 4)",
     "2 * f4^6 * f6^4 / (f2^8 * f12^2) + 6q^2 * f4^2 * f6^2 * f12^2 / f2^6", 3,
     "S3(12n+4) mod 3, 2-dissected as printed (second term vanishes mod 3 whatever its q-power)", "s3"),
    ("s3_24n_mod3", f"extract({S3}, 24, 0)", "f2^3 / f6", 3, "S3(24n) mod 3", "s3"),
    ("s3_24n_mod3_one", f"extract({S3}, 24, 0)", "1", 3, "S3(24n) mod 3 is 1", "s3"),
    ("s3_24n12_mod3", f"extract({S3}, 24, 12)", "f1^2 * f6^3 / (f2 * f3^2)", 3, "S3(24n+12) mod 3", "s3"),
    ("s3_24n12_mod3_short", f"extract({S3}, 24, 12)", "f2^2 * f6^2 / (f1 * f3)", 3, "S3(24n+12) mod 3", "s3"),
    ("s3_24n4_mod3", f"extract({S3}, 24, 4)", "2 * f2^6 * f3^4 / (f1^8 * f6^2)", 3, "S3(24n+4) mod 3", "s3"),
    ("s3_mod3", S3, "f1 * f3 * f12 / (f4 * f6^2)", 3, "S3 generating function mod 3", "s3"),
    ("s3_3n_mod3", f"extract({S3}, 3, 0)", "f1 * f3 * f6 / (f2 * f4^2)", 3, "S3(3n) mod 3", "s3"),
    ("s3_3n_mod3_alt", f"extract({S3}, 3, 0)", "f1 * f3 * f4 * f6 / (f2 * f12)", 3, "S3(3n) mod 3", "s3"),
    ("s3_3n_mod3_psi", f"extract({S3}, 3, 0)", "psi(-q) * f3 * f6 / f12", 3, "S3(3n) mod 3 via psi(-q)", "s3"),
    ("s3_3n_mod3_P", f"extract({S3}, 3, 0)", "(dil(P_neg, 3) - q * psi(-q^9)) * f3 * f6 / f12", 3,
     "S3(3n) mod 3, 3-dissected", "s3"),
    ("s3_9n_mod3", f"extract({S3}, 9, 0)", "P_neg * f1 * f2 / f4", 3, "S3(9n) mod 3", "s3"),
    ("s3_9n_mod3_eta", f"extract({S3}, 9, 0)", "f1^2 * f6^5 / (f2 * f3^2 * f12^2)", 3, "S3(9n) mod 3", "s3"),
    ("s3_9n_mod3_phi", f"extract({S3}, 9, 0)", "phi(-q) * f6^5 / (f3^2 * f12^2)", 3, "S3(9n) mod 3", "s3"),
    ("s3_9n_mod3_split", f"extract({S3}, 9, 0)", "(phi(-q^9) - 2q * f3 * f18^2 / (f6 * f9)) * f6^5 / (f3^2 * f12^2)", 3,
     "S3(9n) mod 3, 3-dissected", "s3"),
    ("s3_27n_mod3_phi", f"extract({S3}, 27, 0)", "phi(-q^3) * f2^5 / (f1^2 * f4^2)", 3, "S3(27n) mod 3", "s3"),
    ("s3_27n_mod3", f"extract({S3}, 27, 0)", "f1 * f3 * f6 / (f2 * f4^2)", 3, "S3(27n) mod 3", "s3"),
    ("s3_120n100_mod3", f"extract({S3}, 120, 100)", "2 * f5^4", 3, "S3(120n+100) mod 3", "s3"),
    ("s3_600n100_mod3", f"extract({S3}, 600, 100)", "2 * f1^4", 3, "S3(600n+100) mod 3", "s3"),
    ("psi_psi3_p5_section", "extract(psi(q) * psi(q^3), 25, 12)", "psi(q) * psi(q^3)", None,
     "a(25n+12) = a(n) for the coefficients a of psi(q)psi(q^3)", "s3"),
    ("s3_4n", f"extract({S3}, 4, 0)",
     "f4^5 * f12^5 / (f1^2 * f2 * f3^2 * f6 * f8^2 * f24^2) + 4q^2 * f2 * f6 * f8^2 * f24^2 / (f1^2 * f3^2 * f4 * f12)", None,
     "S3(4n)", "s3"),
    ("s3_4n2", f"extract({S3}, 4, 2)", "2 * f2^3 * f6^3 / (f1^3 * f3^3)", None, "S3(4n+2)", "s3"),
    ("s3_4n2_3dissection", f"extract({S3}, 4, 2)",
     "2 * f6^4 / f3^4 + 6q * f6^7 * f9^5 / (f3^11 * f18) + 12q^2 * f6^6 * f9^2 * f18^2 / f3^10 + 24q^3 * f6^5 * f18^5 / (f3^9 * f9)",
     None, "3-dissection of S3(4n+2)", "s3"),
    ("s3_12n2", f"extract({S3}, 12, 2)", "2 * f2^4 / f1^4 + 24q * f2^5 * f6^5 / (f1^9 * f3)", None, "S3(12n+2)", "s3"),
    ("s3_12n2_mod8", f"extract({S3}, 12, 2)", "2 * f1^4", 8, "S3(12n+2) mod 8", "s3"),
    ("s3_4n1", f"extract({S3}, 4, 1)", "2 * f4^2 * f6^6 / (f1^2 * f3^4 * f12^2)", None, "S3(4n+1)", "s3"),
    ("s3_4n1_mod6", f"extract({S3}, 4, 1)", "2 * f1 * f6^6 / (f4 * f3^5 * f12)", 6, "S3(4n+1) mod 6", "s3"),
    ("s3_12n9_mod6", f"extract({S3}, 12, 9)", "4 * f2^8 * f3 * f12^3 / (f1^5 * f4^5 * f6^2)", 6, "S3(12n+9) mod 6", "s3"),
    ("s3_12n9_mod6_short", f"extract({S3}, 12, 9)", "4 * f1 * f4 * f6 * f12 / (f2 * f3)", 6, "S3(12n+9) mod 6", "s3"),
    ("s3_12n9_mod6_psi", f"extract({S3}, 12, 9)", "4 * psi(-q) * f6 * f12 / f3", 6, "S3(12n+9) mod 6 via psi(-q)", "s3"),
    ("s3_36n9_mod6", f"extract({S3}, 36, 9)", "4 * f4^2 * f6^5 / (f2 * f3^2 * f12^2)", 6, "S3(36n+9) mod 6", "s3"),
    ("s3_36n9_mod6_3dissection", f"extract({S3}, 36, 9)",
     "4 * f6^4 * f18^2 / (f3^2 * f12 * f36) + 4q^2 * f6^5 * f36^2 / (f3^2 * f12^2 * f18)", 6,
     "S3(36n+9) mod 6, 3-dissected", "s3"),
    ("s3_108n81_mod6", f"extract({S3}, 108, 81)", "4 * f2^5 * f12^2 / (f1^2 * f4^2 * f6)", 6, "S3(108n+81) mod 6", "s3"),
    ("s3_108n81_mod6_psi", f"extract({S3}, 108, 81)", "4 * psi(-q) * f6 * f12 / f3", 6, "S3(108n+81) mod 6 via psi(-q)", "s3"),
    ("s3_324n81_mod6", f"extract({S3}, 324, 81)", "4 * f4^2 * f6^5 / (f2 * f3^2 * f12^2)", 6, "S3(324n+81) mod 6", "s3"),
    ("s3_972n729_mod6", f"extract({S3}, 972, 729)", "4 * f2^5 * f12^2 / (f1^2 * f4^2 * f6)", 6, "S3(972n+729) mod 6", "s3"),
    ("s3_972n729_mod6_psi", f"extract({S3}, 972, 729)", "4 * psi(-q) * f6 * f12 / f3", 6,
     "S3(972n+729) mod 6 via psi(-q)", "s3"),
]

for _i in range(1, 5):
    _TABLE.append((f"psi_psi3_p5_zero_i{_i}", f"extract(psi(q) * psi(q^3), 25, {(5 * _i + 12) % 25})", "0", None,
                   f"a(25n+{(5 * _i + 12) % 25}) = 0 for the coefficients a of psi(q)psi(q^3)", "s3"))

# Variants that fail: printed forms with a typo, kept to show the failure.
_MISPRINT_TABLE: list[tuple] = [
    ("d5_f1_as_printed", "f1", f"f25 * ({_A5_PRINTED} - q - q^2 * {_A5_PRINTED_INV})", None,
     "5-dissection with (q^10;q^25) in both numerator and denominator of a", "dissection"),
    ("s3_4n1_as_printed", f"extract({S3}, 4, 1)", "2 * f4^2 * f6^2 / (f1^2 * f3^4 * f12^2)", None,
     "S3(4n+1) with f6^2 where f6^6 belongs", "s3"),
    ("d2_inv_f1sq_f3sq_as_printed", "1 / (f1^2 * f3^2)",
     "f8^5 * f24^5 / (f2^5 * f6^5 * f16^2 * f48^2) + 2q * f4^4 * f12^4 / (f2^6 * f6^6)"
     " + 4q^4 * f4^2 * f12^2 * f16^4 * f48^2 / (f2^5 * f6^5 * f8 * f24)", None,
     "2-dissection of 1/(f1^2 f3^2) with f16^4 where f16^2 belongs", "dissection"),
    ("s3_4n_as_printed", f"extract({S3}, 4, 0)",
     "f4^5 * f12^5 / (f1^2 * f2 * f3^2 * f6 * f8^2 * f24^2) + 4q^2 * f2 * f6 * f8^4 * f24^2 / (f1^2 * f3^2 * f4 * f12)", None,
     "S3(4n) with f8^4 where f8^2 belongs", "s3"),
    ("s9_2n_3dissection_as_printed", f"extract({S9}, 2, 0)",
     "f6^4 * f9^8 / (f3^8 * f18^4) + q * (f6^3 * f9^5 / (f3^7 * f9) + f3 * f18^3 / (f6 * f9^3))"
     " + 6q^2 * f6^2 * f9^2 * f18^2 / f3^6 + 4q^3 * f6 * f18^5 / (f3^5 * f9) + 16q^4 * f18^8 / (f3^4 * f9^4)", None,
     "3-dissection of S9(2n) with f9 where f18 belongs", "s9"),
    ("s9_6n4_2dissection_as_printed", f"extract({S9}, 6, 4)",
     "6 * f4^12 * f6^8 / (f2^16 * f12^4) + 18q * f4^8 * f6^6 / f2^14 + 54q^2 * f4^4 * f6^4 * f12^4 / f2^12", None,
     "S9(6n+4) in q^2-products with middle coefficient 18 where 36 belongs", "s9"),
    ("s3_108n81_mod6_middle_as_printed", f"extract({S3}, 108, 81)", "4 * f1 * f2 * f6 * f12 / (f2 * f3)", 6,
     "middle form of S3(108n+81) mod 6 as printed (f2 where f4 belongs)", "s3"),
    ("s3_972n729_mod6_middle_as_printed", f"extract({S3}, 972, 729)", "4 * f1 * f2 * f6 * f12 / (f2 * f3)", 6,
     "middle form of S3(972n+729) mod 6 as printed (f2 where f4 belongs)", "s3"),
    ("d2_f3cube_over_f1_sign_flipped", "f3^3 / f1", "f4^3 * f6^2 / (f2^2 * f12) - q * f12^3 / f4", None,
     "deliberately perturbed 2-dissection", "dissection"),
]


def _build(rows) -> dict[str, Identity]:
    out: dict[str, Identity] = {}
    for ident, lhs, rhs, m, note, group in rows:
        if ident in out:
            raise ValueError(f"duplicate identity id {ident}")
        out[ident] = Identity(
            ident,
            lhs if callable(lhs) else parse(lhs),
            rhs if callable(rhs) else parse(rhs),
            m,
            note,
            group,
        )
    return out


IDENTITIES: dict[str, Identity] = _build(_TABLE)
MISPRINTS: dict[str, Identity] = _build(_MISPRINT_TABLE)


def identity_ids(group: str | None = None) -> list[str]:
    return [k for k, v in IDENTITIES.items() if group is None or v.group == group]


def get_identity(ident: str) -> Identity:
    if ident in IDENTITIES:
        return IDENTITIES[ident]
    if ident in MISPRINTS:
        return MISPRINTS[ident]
    raise KeyError(f"unknown identity {ident!r}")


def first_mismatch(a: TruncSeries, b: TruncSeries) -> int | None:
    """Smallest index below the shared precision where a and b differ."""
    n = min(a.precision, b.precision)
    diff = np.nonzero(a.coeffs[:n] != b.coeffs[:n])[0]
    return int(diff[0]) if len(diff) else None


def compare_series(claim_id: str, a: TruncSeries, b: TruncSeries, params: dict, ms: int = 0) -> VerificationReport:
    n = min(a.precision, b.precision)
    bad = first_mismatch(a, b)
    if bad is None:
        return VerificationReport(claim_id, params, n - 1, "verified", None, ms)
    d = a[bad] - b[bad]
    m = a.modulus
    residue = d % m if m else d
    return VerificationReport(claim_id, params, n - 1, "counterexample", {"n": bad, "value": str(d), "residue": int(residue)}, ms)


def verify_identity(ident: str, trunc: int = 300) -> VerificationReport:
    """Expand both sides of a registered identity to ``trunc`` and compare."""
    if trunc < 2:
        raise ValueError("trunc must be at least 2")
    idn = get_identity(ident)
    params = {
        "lhs": idn.side_text(idn.lhs),
        "rhs": idn.side_text(idn.rhs),
        "relation": idn.relation,
        "trunc": trunc,
    }
    with timer() as t:
        a = idn.expand_side(idn.lhs, trunc)
        b = idn.expand_side(idn.rhs, trunc)
    return compare_series(ident, a, b, params, t[0])


# --- dissections valid for every suitable prime --------------------------

def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _shifted_theta(d: int, r: int, s: int, sr: int, ss: int, sign: int, trunc: int) -> TruncSeries:
    if d >= trunc:
        return qs.zero(trunc)
    body = theta_sum(r, s, sr, ss, trunc - d)
    return qs.shift(body, d) * sign


def psi_dissection(p: int, trunc: int) -> TruncSeries:
    """Right side of the p-dissection of psi(q), p an odd prime."""
    terms = []
    for k in range((p - 3) // 2 + 1):
        r = (p * p + (2 * k + 1) * p) // 2
        s = (p * p - (2 * k + 1) * p) // 2
        terms.append(_shifted_theta(k * (k + 1) // 2, r, s, 1, 1, 1, trunc))
    tail = (p * p - 1) // 8
    terms.append(_shifted_theta(tail, p * p, 3 * p * p, 1, 1, 1, trunc))
    return qs.linear_combine([(1, x) for x in terms])


def _excluded_index(p: int) -> int:
    return (p - 1) // 6 if p % 6 == 1 else (-p - 1) // 6


def f1_dissection(p: int, trunc: int) -> TruncSeries:
    """Right side of the p-dissection of f1, p a prime >= 5."""
    skip = _excluded_index(p)
    terms = []
    for k in range((1 - p) // 2, (p - 1) // 2 + 1):
        if k == skip:
            continue
        r = (3 * p * p + (6 * k + 1) * p) // 2
        s = (3 * p * p - (6 * k + 1) * p) // 2
        terms.append(_shifted_theta(k * (3 * k + 1) // 2, r, s, -1, -1, -1 if k % 2 else 1, trunc))
    d = (p * p - 1) // 24
    if d < trunc:
        tail = qs.shift(eta_power(p * p, 1, trunc - d), d) * (-1 if skip % 2 else 1)
    else:
        tail = qs.zero(trunc)
    terms.append(tail)
    return qs.linear_combine([(1, x) for x in terms])


def _side_condition(which: str, p: int) -> bool:
    if which == "psi":
        target = (p * p - 1) // 8 % p
        return all((m * m + m) // 2 % p != target for m in range((p - 3) // 2 + 1))
    skip = _excluded_index(p)
    target = (p * p - 1) // 24 % p
    return all(k * (3 * k + 1) // 2 % p != target for k in range((1 - p) // 2, (p - 1) // 2 + 1) if k != skip)


def verify_p_dissection_lemma(which: str, p: int, trunc: int = 200) -> VerificationReport:
    """Check the p-dissection of psi(q) (odd prime p) or f1 (prime p >= 5).

    Besides the series equality, the residue condition that makes the
    dissection useful is checked: no exponent of a non-tail term is
    congruent mod p to the exponent of the tail term.
    """
    if which not in ("psi", "f1"):
        raise ValueError("which must be 'psi' or 'f1'")
    if not _is_prime(p) or p == 2 or (which == "f1" and p < 5):
        raise ValueError(f"invalid prime {p} for the {which} dissection")
    with timer() as t:
        if which == "psi":
            direct = theta_sum(1, 3, 1, 1, trunc)
            built = psi_dissection(p, trunc)
        else:
            direct = eta_power(1, 1, trunc)
            built = f1_dissection(p, trunc)
        side = _side_condition(which, p)
    rep = compare_series(f"{which}_dissection_p{p}", built, direct, {"which": which, "p": p, "trunc": trunc, "side_condition": side}, t[0])
    if rep.passed and not side:
        rep = VerificationReport(rep.claim_id, rep.params, rep.n_max, "counterexample", {"n": -1, "value": "side condition", "residue": 0}, rep.ms)
    return rep
