"""Exact q-series tools for t-Schur overpartitions.

Submodules: ``qseries`` (truncated power series), ``seriesspec`` (series
expressions), ``specialforms`` (eta products and theta functions),
``combinatorics`` (enumeration oracles), ``identities`` (identity
registry), ``modforms`` (eta quotients as modular forms), ``verify`` and
``claims`` (congruence checks), ``cli``.
"""
from .qseries import TruncSeries, dilate, extract, inv, linear_combine, mul, power, reduce_mod
from .specialforms import eta_power, eta_quotient, expand, named_series, pochhammer, theta

pow = power

__all__ = [
    "TruncSeries",
    "linear_combine",
    "mul",
    "inv",
    "power",
    "pow",
    "dilate",
    "extract",
    "reduce_mod",
    "eta_power",
    "eta_quotient",
    "expand",
    "named_series",
    "pochhammer",
    "theta",
]

__version__ = "0.1.0"
