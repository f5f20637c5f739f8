"""Exact truncated power series in one variable q.

A :class:`TruncSeries` knows the coefficients of q^0 .. q^(N-1) exactly,
either over the integers or as canonical residues modulo m.  Every
operation propagates precision conservatively, so an identity that holds
between two truncated series holds between the underlying formal series
on the shared range.

Products are computed by Kronecker substitution (pack the coefficient
vector into one big integer, multiply, unpack).  The result is
bit-identical to the schoolbook convolution, which is kept as
:func:`mul_schoolbook` for reference and testing.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None

__all__ = [
    "TruncSeries",
    "ModulusMismatch",
    "NonUnitError",
    "series",
    "one",
    "zero",
    "monomial",
    "linear_combine",
    "mul",
    "mul_schoolbook",
    "inv",
    "power",
    "dilate",
    "extract",
    "reduce_mod",
    "truncate",
    "shift",
]

# Below this many limbs Python's own multiplication is fast enough.
_GMP_THRESHOLD_BITS = 1 << 16


class ModulusMismatch(ValueError):
    pass


class NonUnitError(ValueError):
    """Raised when a series with non-invertible constant term is inverted."""


class TruncSeries:
    """Truncated power series with exact coefficients.

    Parameters
    ----------
    coeffs
        Coefficients of q^0, q^1, ...; shorter input is zero-padded up to
        ``precision``, longer input is cut.
    precision
        Number of known coefficients N.  Defaults to ``len(coeffs)``.
    modulus
        If given, coefficients are residues in ``[0, modulus)``.
    """

    __slots__ = ("_c", "precision", "modulus")

    def __init__(self, coeffs, precision: int | None = None, modulus: int | None = None):
        if modulus is not None:
            modulus = int(modulus)
            if modulus < 1:
                raise ValueError(f"modulus must be positive, got {modulus}")
        if precision is None:
            precision = len(coeffs)
        precision = int(precision)
        if precision < 1:
            raise ValueError(f"precision must be >= 1, got {precision}")
        self._c = _normalize(coeffs, precision, modulus)
        self._c.flags.writeable = False
        self.precision = precision
        self.modulus = modulus

    @classmethod
    def _raw(cls, arr: np.ndarray, modulus: int | None) -> "TruncSeries":
        # Trusted constructor: arr already has the right dtype and range.
        s = object.__new__(cls)
        arr.flags.writeable = False
        s._c = arr
        s.precision = len(arr)
        s.modulus = modulus
        return s

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array (object dtype over Z, int64 mod m)."""
        return self._c

    def tolist(self) -> list[int]:
        return [int(x) for x in self._c]

    def __len__(self):
        return self.precision

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [int(x) for x in self._c[i]]
        return int(self._c[i])

    def __iter__(self):
        return (int(x) for x in self._c)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (
            self.precision == other.precision
            and self.modulus == other.modulus
            and bool(np.array_equal(self._c, other._c))
        )

    def __hash__(self):
        return hash((self.precision, self.modulus, tuple(self.tolist()[:16])))

    def __repr__(self):
        head = ", ".join(str(x) for x in self.tolist()[:8])
        more = ", ..." if self.precision > 8 else ""
        mod = f", modulus={self.modulus}" if self.modulus is not None else ""
        return f"TruncSeries([{head}{more}], precision={self.precision}{mod})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.tolist()):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "q" if i == 1 else f"q^{i}"
                coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
                terms.append(f"{coef}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        mod = f" (mod {self.modulus})" if self.modulus is not None else ""
        return f"{body} + O(q^{self.precision}){mod}"

    def is_zero(self) -> bool:
        return not self._c.any()

    def __neg__(self):
        return linear_combine([(-1, self)])

    def __add__(self, other):
        if isinstance(other, int):
            other = _constant_like(self, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return linear_combine([(1, self), (1, other)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = _constant_like(self, other)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return linear_combine([(1, self), (-1, other)])

    def __rsub__(self, other):
        if isinstance(other, int):
            return linear_combine([(1, _constant_like(self, other)), (-1, self)])
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return linear_combine([(int(other), self)])
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return mul(self, inv(other))

    def __pow__(self, e):
        return power(self, e)


def _normalize(coeffs, precision: int, modulus: int | None) -> np.ndarray:
    if isinstance(coeffs, np.ndarray) and coeffs.dtype != object:
        vals = [int(x) for x in coeffs[:precision]]
    else:
        vals = [int(x) for x in list(coeffs)[:precision]]
    if len(vals) < precision:
        vals.extend([0] * (precision - len(vals)))
    if modulus is None:
        arr = np.empty(precision, dtype=object)
        arr[:] = vals
        return arr
    if modulus <= (1 << 62):
        return np.array([v % modulus for v in vals], dtype=np.int64)
    arr = np.empty(precision, dtype=object)
    arr[:] = [v % modulus for v in vals]
    return arr


def _small_mod(m: int | None) -> bool:
    return m is not None and m <= (1 << 62)


def _empty(n: int, modulus: int | None) -> np.ndarray:
    if _small_mod(modulus):
        return np.zeros(n, dtype=np.int64)
    arr = np.empty(n, dtype=object)
    arr[:] = [0] * n
    return arr


def _constant_like(s: TruncSeries, c: int) -> TruncSeries:
    return monomial(c, 0, s.precision, s.modulus)


def series(coeffs: Sequence[int], precision: int | None = None, modulus: int | None = None) -> TruncSeries:
    return TruncSeries(coeffs, precision, modulus)


def zero(precision: int, modulus: int | None = None) -> TruncSeries:
    if precision < 1:
        raise ValueError(f"precision must be >= 1, got {precision}")
    return TruncSeries._raw(_empty(precision, modulus), modulus)


def monomial(c: int, d: int, precision: int, modulus: int | None = None) -> TruncSeries:
    """c*q^d at the given precision (zero if d >= precision)."""
    if d < 0:
        raise ValueError("negative exponents are not supported")
    if precision < 1:
        raise ValueError(f"precision must be >= 1, got {precision}")
    arr = _empty(precision, modulus)
    if d < precision:
        arr[d] = c % modulus if modulus is not None else int(c)
    return TruncSeries._raw(arr, modulus)


def one(precision: int, modulus: int | None = None) -> TruncSeries:
    return monomial(1, 0, precision, modulus)


def _common_modulus(items: Iterable[TruncSeries]) -> int | None:
    mods = {s.modulus for s in items}
    if len(mods) > 1:
        raise ModulusMismatch(f"mixed moduli {sorted(mods, key=str)}")
    return mods.pop()


def linear_combine(terms: Sequence[tuple[int, TruncSeries]]) -> TruncSeries:
    """Return sum of c_i * s_i at the minimum input precision."""
    terms = list(terms)
    if not terms:
        raise ValueError("linear_combine needs at least one term")
    m = _common_modulus(s for _, s in terms)
    n = min(s.precision for _, s in terms)
    if _small_mod(m):
        acc = np.zeros(n, dtype=np.int64)
        for c, s in terms:
            c = int(c) % m
            if c:
                # residues < 2^62 and c < m: do the product in Python ints if needed
                if m < (1 << 31):
                    acc = (acc + c * s._c[:n]) % m
                else:
                    acc = np.array([(int(x) + c * int(y)) % m for x, y in zip(acc, s._c[:n])], dtype=np.int64)
        return TruncSeries._raw(acc, m)
    acc = _empty(n, m)
    for c, s in terms:
        c = int(c)
        if c:
            acc = acc + c * s._c[:n]
    if m is not None:
        acc = np.array([x % m for x in acc], dtype=object)
    return TruncSeries._raw(acc, m)


# --- multiplication ---------------------------------------------------------

def mul_schoolbook(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Reference O(N^2) Cauchy product; slow, used as a test oracle."""
    m = _common_modulus((a, b))
    n = min(a.precision, b.precision)
    x, y = a.tolist(), b.tolist()
    out = [0] * n
    for i in range(n):
        xi = x[i]
        if xi:
            for j in range(n - i):
                out[i + j] += xi * y[j]
    return TruncSeries(out, n, m)


def _bigmul(x: int, y: int) -> int:
    if gmpy2 is not None and x.bit_length() > _GMP_THRESHOLD_BITS and y.bit_length() > _GMP_THRESHOLD_BITS:
        return int(gmpy2.mpz(x) * gmpy2.mpz(y))
    return x * y


def _pack_unsigned(arr: np.ndarray, nbytes: int) -> int:
    # Slots of nbytes little-endian bytes each; values must fit.
    u8 = np.ascontiguousarray(arr, dtype="<u8").view(np.uint8).reshape(-1, 8)
    return int.from_bytes(u8[:, :nbytes].tobytes(), "little")


def _unpack_unsigned(v: int, n: int, nbytes: int) -> np.ndarray:
    total = n * nbytes
    raw = (v & ((1 << (8 * total)) - 1)).to_bytes(total, "little")
    out = np.zeros((n, 8), dtype=np.uint8)
    out[:, :nbytes] = np.frombuffer(raw, dtype=np.uint8).reshape(n, nbytes)
    return out.view("<u8").ravel()


def _pack_signed(vals: Sequence[int], nbytes: int) -> int:
    # Sum v_i * 2^(8*nbytes*i) for signed v_i: two's complement slots,
    # then undo the borrow contributed by each negative slot.
    raw = b"".join(int(v).to_bytes(nbytes, "little", signed=True) for v in vals)
    u = int.from_bytes(raw, "little")
    neg = bytearray(len(raw))
    any_neg = False
    for i, v in enumerate(vals):
        if v < 0:
            neg[i * nbytes] = 1
            any_neg = True
    if any_neg:
        u -= int.from_bytes(bytes(neg), "little") << (8 * nbytes)
    return u


def _unpack_signed(p: int, n: int, nbytes: int) -> list[int]:
    bits = 8 * nbytes
    half = 1 << (bits - 1)
    # Offset every digit into [0, 2^bits) so the slots read off directly.
    offset = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * n, "little")
    v = (p + offset) & ((1 << (bits * n)) - 1)
    raw = v.to_bytes(nbytes * n, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(n)]


def _mul_arrays(x: np.ndarray, y: np.ndarray, n: int, m: int | None) -> np.ndarray:
    """First n coefficients of the product of coefficient arrays x, y."""
    x, y = x[:n], y[:n]
    if _small_mod(m):
        if m == 1:
            return np.zeros(n, dtype=np.int64)
        bound = n * (m - 1) ** 2
        if bound < (1 << 64):
            nbytes = max(1, (bound.bit_length() + 7) // 8)
            prod = _bigmul(_pack_unsigned(x, nbytes), _pack_unsigned(y, nbytes))
            out = _unpack_unsigned(prod, n, nbytes)
            return (out % np.uint64(m)).astype(np.int64)
        xs, ys = [int(v) for v in x], [int(v) for v in y]
        res = _mul_signed_lists(xs, ys, n)
        return np.array([v % m for v in res], dtype=np.int64)
    xs, ys = list(x), list(y)
    res = _mul_signed_lists(xs, ys, n)
    if m is not None:
        res = [v % m for v in res]
    arr = np.empty(n, dtype=object)
    arr[:] = res
    return arr


def _mul_signed_lists(xs: list, ys: list, n: int) -> list[int]:
    mx = max((abs(int(v)) for v in xs), default=0)
    my = max((abs(int(v)) for v in ys), default=0)
    if mx == 0 or my == 0:
        return [0] * n
    bits = mx.bit_length() + my.bit_length() + max(n, 1).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _bigmul(_pack_signed(xs, nbytes), _pack_signed(ys, nbytes))
    return _unpack_signed(prod, n, nbytes)


def mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated to ``min(N_a, N_b)``."""
    m = _common_modulus((a, b))
    n = min(a.precision, b.precision)
    return TruncSeries._raw(_mul_arrays(a._c, b._c, n, m), m)


# --- inversion and powers ---------------------------------------------------

def _unit_inverse(c: int, m: int | None) -> int:
    if m is None:
        if c not in (1, -1):
            raise NonUnitError(f"constant term {c} is not a unit over Z")
        return c
    try:
        return pow(int(c), -1, m)
    except ValueError:
        raise NonUnitError(f"constant term {c} is not invertible mod {m}") from None


def inv(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse at the precision of ``a`` (Newton iteration)."""
    m = a.modulus
    n = a.precision
    g = _empty(1, m)
    g[0] = _unit_inverse(int(a._c[0]), m)
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        # a*g = 1 + O(q^k); only the block [k, k2) of the error is nonzero,
        # and g <- g - g*err fills exactly that block.
        ag = _mul_arrays(a._c, _pad(g, k2, m), k2, m)
        err = ag[k:k2]
        corr = _mul_arrays(g, err, k2 - k, m)
        nxt = _empty(k2, m)
        nxt[:k] = g
        if m is None:
            nxt[k:] = -corr
        else:
            nxt[k:] = (-corr) % m
        g = nxt
        k = k2
    return TruncSeries._raw(g, m)


def _pad(arr: np.ndarray, k: int, m: int | None) -> np.ndarray:
    out = _empty(k, m)
    out[: len(arr)] = arr[:k]
    return out


def power(a: TruncSeries, e: int) -> TruncSeries:
    """a^e by repeated squaring; negative e goes through :func:`inv`."""
    e = int(e)
    if e < 0:
        return power(inv(a), -e)
    result = one(a.precision, a.modulus)
    if e == 0:
        return result
    base = a
    first = True
    while e:
        if e & 1:
            result = base if first else mul(result, base)
            first = False
        e >>= 1
        if e:
            base = mul(base, base)
    return result


# --- index maps -------------------------------------------------------------

def dilate(a: TruncSeries, k: int) -> TruncSeries:
    """Substitute q -> q^k.  Precision becomes k*N."""
    if k < 1:
        raise ValueError(f"dilation factor must be >= 1, got {k}")
    if k == 1:
        return a
    out = _empty(k * a.precision, a.modulus)
    out[::k] = a._c
    return TruncSeries._raw(out, a.modulus)


def extract(a: TruncSeries, p: int, j: int) -> TruncSeries:
    """Series whose n-th coefficient is a's coefficient at p*n + j."""
    if p < 1:
        raise ValueError(f"modulus of the progression must be >= 1, got {p}")
    if not 0 <= j < p:
        raise ValueError(f"residue j={j} out of range for p={p}")
    if a.precision <= j:
        raise ValueError(f"precision {a.precision} does not reach index {j}")
    return TruncSeries._raw(a._c[j::p].copy(), a.modulus)


def reduce_mod(a: TruncSeries, m: int) -> TruncSeries:
    """Canonical residues in [0, m); the result carries modulus m."""
    m = int(m)
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if a.modulus is not None and a.modulus % m != 0:
        raise ModulusMismatch(f"cannot reduce a series mod {a.modulus} to mod {m}")
    if _small_mod(m):
        if a._c.dtype == object:
            arr = np.array([int(x) % m for x in a._c], dtype=np.int64)
        else:
            arr = a._c % m
        return TruncSeries._raw(arr, m)
    arr = np.empty(a.precision, dtype=object)
    arr[:] = [int(x) % m for x in a._c]
    return TruncSeries._raw(arr, m)


def truncate(a: TruncSeries, n: int) -> TruncSeries:
    """Forget coefficients from q^n on.  Never raises precision."""
    if n < 1:
        raise ValueError(f"precision must be >= 1, got {n}")
    if n > a.precision:
        raise ValueError(f"cannot raise precision from {a.precision} to {n}")
    if n == a.precision:
        return a
    return TruncSeries._raw(a._c[:n].copy(), a.modulus)


def shift(a: TruncSeries, d: int) -> TruncSeries:
    """q^d * a.  The product is known exactly up to N + d."""
    if d < 0:
        raise ValueError("negative shifts are not supported")
    if d == 0:
        return a
    out = _empty(a.precision + d, a.modulus)
    out[d:] = a._c
    return TruncSeries._raw(out, a.modulus)


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def precision_for_extract(n_out: int, p: int, j: int) -> int:
    """Input precision needed so that extract(., p, j) has precision n_out."""
    return p * (n_out - 1) + j + 1

