"""Brute-force counting oracles for partitions and overpartitions.

Nothing here touches q-series arithmetic.  Counts come from a
part-by-part enumeration (largest part size first, one multiplicity
decision per size), so they can be compared against generating function
expansions as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

__all__ = [
    "PartitionConstraint",
    "unrestricted",
    "overpartitions",
    "odd_overpartitions",
    "odd_overpartitions_avoiding",
    "odd_parts_avoiding",
    "i_t_constraint",
    "count_partitions",
    "enumerate_partitions",
    "schur_over_oracle",
    "schur_oracle",
    "i_t_oracle",
    "podbar_oracle",
    "double_map",
]

UNRESTRICTED = "unrestricted"
EXACTLY_TWO = "exactly2"


def _always(k: int) -> bool:
    return True


def _unrestricted(k: int):
    return UNRESTRICTED


@dataclass(frozen=True)
class PartitionConstraint:
    """Which parts may appear, how often, and whether overlines are allowed.

    ``multiplicity(k)`` returns ``"unrestricted"``, ``"exactly2"`` or a
    set of allowed positive multiplicities for part size k.  With
    ``overline`` set, the first occurrence of each used size may be
    overlined, which doubles the count for every size in use.
    """

    allowed: Callable[[int], bool] = _always
    multiplicity: Callable[[int], object] = _unrestricted
    overline: bool = False
    name: str = field(default="custom", compare=False)

    def multiplicities(self, k: int, remaining: int) -> list[int]:
        rule = self.multiplicity(k)
        top = remaining // k
        if rule == UNRESTRICTED:
            return list(range(1, top + 1))
        if rule == EXACTLY_TWO:
            return [2] if top >= 2 else []
        return sorted(m for m in rule if 1 <= m <= top)


def unrestricted() -> PartitionConstraint:
    return PartitionConstraint(name="partitions")


def overpartitions() -> PartitionConstraint:
    return PartitionConstraint(overline=True, name="overpartitions")


def odd_overpartitions() -> PartitionConstraint:
    return PartitionConstraint(allowed=lambda k: k % 2 == 1, overline=True, name="odd overpartitions")


def odd_overpartitions_avoiding(t: int) -> PartitionConstraint:
    """Overpartitions into odd parts not divisible by t."""
    return PartitionConstraint(
        allowed=lambda k: k % 2 == 1 and k % t != 0,
        overline=True,
        name=f"odd overpartitions avoiding multiples of {t}",
    )


def odd_parts_avoiding(t: int) -> PartitionConstraint:
    """Partitions into odd parts not divisible by t."""
    return PartitionConstraint(
        allowed=lambda k: k % 2 == 1 and k % t != 0,
        name=f"odd partitions avoiding multiples of {t}",
    )


def i_t_constraint(t: int, reading: str) -> PartitionConstraint:
    """Parts not divisible by t, every odd size used exactly twice.

    The ``literal`` reading leaves even parts unrestricted; the
    ``bijective`` reading also requires even parts to be 2 mod 4.
    """
    if reading == "literal":
        allowed = lambda k: k % t != 0  # noqa: E731
    elif reading == "bijective":
        allowed = lambda k: k % t != 0 and (k % 2 == 1 or k % 4 == 2)  # noqa: E731
    else:
        raise ValueError(f"reading must be 'literal' or 'bijective', got {reading!r}")
    return PartitionConstraint(
        allowed=allowed,
        multiplicity=lambda k: EXACTLY_TWO if k % 2 else UNRESTRICTED,
        name=f"I_{t} ({reading})",
    )


def count_partitions(n: int, c: PartitionConstraint) -> int:
    """Number of (over)partitions of n satisfying ``c``.

    ways[i][r] counts the ways to fill r using the sizes[i:] only; this
    is the memo table of the depth-first enumeration, filled from the
    smallest allowed size upwards.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    sizes = [k for k in range(n, 0, -1) if c.allowed(k)]
    weight = 2 if c.overline else 1
    # ways for the empty suffix
    ways = [1] + [0] * n
    for k in reversed(sizes):
        nxt = ways[:]
        for r in range(k, n + 1):
            extra = 0
            for m in c.multiplicities(k, r):
                extra += ways[r - m * k]
            nxt[r] += weight * extra
        ways = nxt
    return ways[n]


def enumerate_partitions(n: int, c: PartitionConstraint) -> Iterator[tuple[tuple[int, bool], ...]]:
    """Yield every partition of n as ((part, overlined), ...), parts descending.

    An overlined part is listed first among equal parts.  Exponential;
    meant for small n.
    """
    sizes = [k for k in range(n, 0, -1) if c.allowed(k)]

    def go(i: int, rem: int, acc: list):
        if rem == 0:
            yield tuple(acc)
            return
        if i == len(sizes):
            return
        k = sizes[i]
        for m in reversed(c.multiplicities(k, rem)):
            marks = (False, True) if c.overline else (False,)
            for over in marks:
                block = [(k, over)] + [(k, False)] * (m - 1) if over else [(k, False)] * m
                yield from go(i + 1, rem - m * k, acc + block)
        yield from go(i + 1, rem, acc)

    yield from go(0, n, [])


def schur_over_oracle(t: int, n: int) -> int:
    """Overpartitions of n into odd parts not divisible by t (t odd >= 3)."""
    if t < 3 or t % 2 == 0:
        raise ValueError("the odd-parts description needs odd t >= 3; expand the product instead")
    return count_partitions(n, odd_overpartitions_avoiding(t))


def schur_oracle(t: int, n: int) -> int:
    """Partitions of n into odd parts not divisible by t (t odd >= 3)."""
    if t < 3 or t % 2 == 0:
        raise ValueError("t must be odd and >= 3")
    return count_partitions(n, odd_parts_avoiding(t))


def i_t_oracle(t: int, n2: int, reading: str = "bijective") -> int:
    if n2 % 2:
        raise ValueError("I_t is defined on even arguments")
    if t < 3 or t % 2 == 0:
        raise ValueError("t must be odd and >= 3")
    return count_partitions(n2, i_t_constraint(t, reading))


def podbar_oracle(n: int) -> int:
    """Overpartitions of n into odd parts."""
    return count_partitions(n, odd_overpartitions())


def double_map(op: tuple[tuple[int, bool], ...]) -> tuple[int, ...]:
    """Send an odd-part overpartition of n to a partition of 2n.

    A plain part m becomes 2m; an overlined part m becomes m, m.  The
    image has parts sorted descending.
    """
    out: list[int] = []
    for m, over in op:
        if over:
            out.extend((m, m))
        else:
            out.append(2 * m)
    return tuple(sorted(out, reverse=True))
