"""Symbolic q-series expressions and their text form.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | primary ['^' int]
    primary := INT ['q' ['^' int]]          monomial c*q^d
             | 'q' ['^' int]
             | 'f' INT ['^' int]            eta power f_k^e, e.g. f12^-3
             | 'phi' '(' qarg ')'           phi(q^k), phi(-q^k)
             | 'psi' '(' qarg ')'           psi(q^k), psi(-q^k)
             | 'f' '(' qarg ',' qarg ')'    general theta f(a, b)
             | 'poch' '(' qarg ',' qarg ')' (a; b)_inf
             | 'schur_over' '(' INT ')' | 'schur' '(' INT ')'
             | 'overpartition' | 'overpartition_odd' | 'P_neg' | 'A_cubed'
             | 'dil' '(' expr ',' INT ')'
             | 'extract' '(' expr ',' INT ',' INT ')'
             | '(' expr ')'
    qarg    := ['-'] ('1' | 'q' ['^' INT])

``to_text(parse(s))`` parses back to the same tree.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "SeriesSpec",
    "Monomial",
    "EtaPower",
    "Pochhammer",
    "Theta",
    "Named",
    "Sum",
    "Product",
    "Quotient",
    "Power",
    "Dilation",
    "Extract",
    "SpecSyntaxError",
    "parse",
    "to_text",
    "NAMED_IDS",
]

NAMED_IDS = ("schur_over", "schur", "overpartition", "overpartition_odd", "P_neg", "A_cubed")
THETA_KINDS = ("phi", "phi_neg", "psi", "psi_neg", "general")


class SpecSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Monomial:
    c: int
    d: int = 0

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("negative exponents are not supported")


@dataclass(frozen=True)
class EtaPower:
    k: int
    e: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"eta index must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Pochhammer:
    """(c q^a; w q^b)_inf with c, w in {+1, -1}."""

    a: int
    b: int
    c: int = 1
    w: int = 1

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("Pochhammer exponents must be >= 1")
        if self.c not in (1, -1) or self.w not in (1, -1):
            raise ValueError("Pochhammer signs must be +1 or -1")


@dataclass(frozen=True)
class Theta:
    """Ramanujan theta series.

    ``kind`` is one of phi, phi_neg, psi, psi_neg (with dilation ``k``) or
    general, meaning f(sign_r q^r, sign_s q^s).
    """

    kind: str
    k: int = 1
    r: int = 0
    s: int = 0
    sign_r: int = 1
    sign_s: int = 1

    def __post_init__(self):
        if self.kind not in THETA_KINDS:
            raise ValueError(f"unknown theta kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("theta dilation must be >= 1")
        if self.kind == "general":
            if self.r < 0 or self.s < 0:
                raise ValueError("general theta needs r, s >= 0")
            if self.r + self.s < 1:
                raise ValueError("general theta f(a, b) needs |ab| < 1, i.e. r + s >= 1")
            if self.sign_r not in (1, -1) or self.sign_s not in (1, -1):
                raise ValueError("theta signs must be +1 or -1")

    def as_general(self) -> tuple[int, int, int, int]:
        """(r, s, sign_r, sign_s) with the dilation folded in."""
        k = self.k
        if self.kind == "phi":
            return k, k, 1, 1
        if self.kind == "phi_neg":
            return k, k, -1, -1
        if self.kind == "psi":
            return k, 3 * k, 1, 1
        if self.kind == "psi_neg":
            return k, 3 * k, -1, -1
        return self.r, self.s, self.sign_r, self.sign_s


@dataclass(frozen=True)
class Named:
    id: str
    t: int | None = None

    def __post_init__(self):
        if self.id not in NAMED_IDS:
            raise ValueError(f"unknown named series {self.id!r}")
        if self.id in ("schur_over", "schur") and self.t is None:
            raise ValueError(f"{self.id} needs a parameter t")


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Quotient:
    num: "SeriesSpec"
    den: "SeriesSpec"


@dataclass(frozen=True)
class Power:
    base: "SeriesSpec"
    e: int


@dataclass(frozen=True)
class Dilation:
    base: "SeriesSpec"
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("dilation factor must be >= 1")


@dataclass(frozen=True)
class Extract:
    """Coefficients of ``base`` along the progression p*n + j."""

    base: "SeriesSpec"
    p: int
    j: int

    def __post_init__(self):
        if self.p < 1 or not 0 <= self.j < self.p:
            raise ValueError(f"bad progression ({self.p}, {self.j})")


SeriesSpec = Union[Monomial, EtaPower, Pochhammer, Theta, Named, Sum, Product, Quotient, Power, Dilation, Extract]


# --- tokenizer --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<eta>f\d+)|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecSyntaxError(f"unexpected character {text[pos:].strip()[:1]!r} at {pos} in {text!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        if self.peek()[1] == value and self.peek()[0] != "end":
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            raise SpecSyntaxError(f"expected {value!r} but found {self.peek()[1]!r} in {self.text!r}")

    def integer(self) -> int:
        kind, val = self.next()
        if kind != "int":
            raise SpecSyntaxError(f"expected an integer, found {val!r} in {self.text!r}")
        return int(val)

    def signed_integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        return sign * self.integer()

    def parse(self) -> SeriesSpec:
        node = self.expr()
        if self.peek()[0] != "end":
            raise SpecSyntaxError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return node

    def expr(self) -> SeriesSpec:
        terms = [self.term()]
        while True:
            if self.accept("+"):
                terms.append(self.term())
            elif self.accept("-"):
                terms.append(_negate(self.term()))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> SeriesSpec:
        num = [self.factor()]
        den = []
        while True:
            if self.accept("*"):
                num.append(self.factor())
            elif self.accept("/"):
                den.append(self.factor())
            else:
                break
        numerator = _product(num)
        if not den:
            return numerator
        return Quotient(numerator, _product(den))

    def factor(self) -> SeriesSpec:
        if self.accept("-"):
            return _negate(self.factor())
        node = self.primary()
        if self.accept("^"):
            node = Power(node, self.signed_integer())
        return node

    def _opt_power(self) -> int | None:
        if self.peek()[1] == "^":
            self.next()
            return self.signed_integer()
        return None

    def primary(self) -> SeriesSpec:
        kind, val = self.peek()
        if kind == "int":
            self.next()
            c = int(val)
            if self.peek() == ("name", "q"):
                self.next()
                d = self._opt_power()
                return Monomial(c, 1 if d is None else d)
            return Monomial(c, 0)
        if kind == "eta":
            self.next()
            e = self._opt_power()
            return EtaPower(int(val[1:]), 1 if e is None else e)
        if kind == "op" and val == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "name":
            self.next()
            return self.named(val)
        raise SpecSyntaxError(f"unexpected {val!r} in {self.text!r}")

    def qarg(self) -> tuple[int, int]:
        sign = -1 if self.accept("-") else 1
        kind, val = self.next()
        if kind == "int" and val == "1":
            return sign, 0
        if (kind, val) == ("name", "q"):
            d = self._opt_power()
            return sign, 1 if d is None else d
        raise SpecSyntaxError(f"expected q^k or 1, found {val!r} in {self.text!r}")

    def named(self, name: str) -> SeriesSpec:
        if name == "q":
            d = self._opt_power()
            return Monomial(1, 1 if d is None else d)
        if name in ("phi", "psi"):
            self.expect("(")
            sign, k = self.qarg()
            self.expect(")")
            kind = name if sign == 1 else name + "_neg"
            return Theta(kind, k)
        if name == "f":
            self.expect("(")
            sr, r = self.qarg()
            self.expect(",")
            ss, s = self.qarg()
            self.expect(")")
            return Theta("general", 1, r, s, sr, ss)
        if name == "poch":
            self.expect("(")
            c, a = self.qarg()
            self.expect(",")
            w, b = self.qarg()
            self.expect(")")
            return Pochhammer(a, b, c, w)
        if name in ("schur_over", "schur"):
            self.expect("(")
            t = self.integer()
            self.expect(")")
            return Named(name, t)
        if name in NAMED_IDS:
            return Named(name)
        if name == "dil":
            self.expect("(")
            base = self.expr()
            self.expect(",")
            k = self.integer()
            self.expect(")")
            return Dilation(base, k)
        if name == "extract":
            self.expect("(")
            base = self.expr()
            self.expect(",")
            p = self.integer()
            self.expect(",")
            j = self.integer()
            self.expect(")")
            return Extract(base, p, j)
        raise SpecSyntaxError(f"unknown name {name!r} in {self.text!r}")


def _product(factors: list) -> SeriesSpec:
    flat = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    return flat[0] if len(flat) == 1 else Product(tuple(flat))


def _negate(node: SeriesSpec) -> SeriesSpec:
    if isinstance(node, Monomial):
        return Monomial(-node.c, node.d)
    if isinstance(node, Product):
        first = node.factors[0]
        if isinstance(first, Monomial):
            return Product((Monomial(-first.c, first.d),) + node.factors[1:])
        return Product((Monomial(-1, 0),) + node.factors)
    if isinstance(node, Quotient):
        return Quotient(_negate(node.num), node.den)
    return Product((Monomial(-1, 0), node))


def parse(text: str) -> SeriesSpec:
    """Parse the text form of a series expression."""
    return _Parser(text).parse()


# --- printer ----------------------------------------------------------------

def _qpow(sign: int, d: int) -> str:
    body = "1" if d == 0 else "q" if d == 1 else f"q^{d}"
    return ("-" if sign < 0 else "") + body


def _mono(m: Monomial) -> str:
    if m.d == 0:
        return str(m.c)
    body = "q" if m.d == 1 else f"q^{m.d}"
    if m.c == 1:
        return body
    if m.c == -1:
        return "-" + body
    return f"{m.c}{body}"


def to_text(node: SeriesSpec) -> str:
    """Canonical text form; parses back to an equal tree."""
    if isinstance(node, Monomial):
        return _mono(node)
    if isinstance(node, EtaPower):
        return f"f{node.k}" if node.e == 1 else f"f{node.k}^{node.e}"
    if isinstance(node, Pochhammer):
        return f"poch({_qpow(node.c, node.a)}, {_qpow(node.w, node.b)})"
    if isinstance(node, Theta):
        if node.kind == "general":
            return f"f({_qpow(node.sign_r, node.r)}, {_qpow(node.sign_s, node.s)})"
        name = node.kind.replace("_neg", "")
        sign = -1 if node.kind.endswith("_neg") else 1
        return f"{name}({_qpow(sign, node.k)})"
    if isinstance(node, Named):
        return f"{node.id}({node.t})" if node.t is not None else node.id
    if isinstance(node, Dilation):
        return f"dil({to_text(node.base)}, {node.k})"
    if isinstance(node, Extract):
        return f"extract({to_text(node.base)}, {node.p}, {node.j})"
    if isinstance(node, Power):
        base = to_text(node.base)
        if isinstance(node.base, (Monomial, EtaPower, Sum, Product, Quotient, Power)):
            base = f"({base})"
        return f"{base}^{node.e}"
    if isinstance(node, Product):
        return " * ".join(_factor_text(f) for f in node.factors)
    if isinstance(node, Quotient):
        num = _term_text(node.num)
        den = _factor_text(node.den)
        if isinstance(node.den, Product):
            den = f"({den})"
        return f"{num} / {den}"
    if isinstance(node, Sum):
        parts = []
        for i, t in enumerate(node.terms):
            s = f"({to_text(t)})" if isinstance(t, Sum) else to_text(t)
            if i == 0:
                parts.append(s)
            elif s.startswith("-"):
                parts.append(f"- {s[1:]}")
            else:
                parts.append(f"+ {s}")
        return " ".join(parts)
    raise TypeError(f"not a series spec: {node!r}")


def _factor_text(node: SeriesSpec) -> str:
    if isinstance(node, (Sum, Quotient)):
        return f"({to_text(node)})"
    return to_text(node)


def _term_text(node: SeriesSpec) -> str:
    if isinstance(node, (Sum, Quotient)):
        return f"({to_text(node)})"
    return to_text(node)
