"""Integer partitions and their hook statistics.

Partitions are weakly decreasing tuples of positive integers; the empty
tuple is the partition of 0.  Squares are ``(row, col)`` pairs, 1-based,
English convention (row 1 is the longest).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, gcd, prod
from typing import Iterable, Iterator

__all__ = [
    "Partition",
    "HookMultiset",
    "bf_set",
    "bf_stat",
    "bottom_hooks_mod",
    "conjugate",
    "count_syt",
    "enumerate_partitions",
    "enumerate_r_cores",
    "hook_multiset_mod",
    "hook_stats",
    "is_r_core",
    "is_r_kernel",
    "modular_length",
    "parse_partition",
    "partitions_of",
    "partitions_up_to",
    "squares",
]


class Partition(tuple):
    """A partition, stored as its tuple of (positive) parts.

    >>> Partition([6, 5, 5, 3, 1, 1]).conjugate()
    Partition(6, 4, 4, 3, 3, 1)
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"parts must be positive: {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts) -> "Partition":
        return tuple.__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def multiplicity(self, i: int) -> int:
        return self.count(i)

    def __repr__(self):
        return f"Partition{tuple.__repr__(self)}" if len(self) != 1 else f"Partition({self[0]})"

    def __str__(self):
        return ",".join(map(str, self))


def parse_partition(text: str) -> Partition:
    """Parse ``"6,5,5,3,1,1"``; whitespace is ignored and ``""`` is the empty partition."""
    text = "".join(text.split())
    if text in ("", "[]", "()", "0"):
        return Partition()
    text = text.strip("[]()")
    return Partition(int(x) for x in text.split(","))


def conjugate(lam) -> Partition:
    if not lam:
        return Partition._trusted(())
    out = []
    n = len(lam)
    i = n
    for j in range(1, lam[0] + 1):
        while i and lam[i - 1] < j:
            i -= 1
        out.append(i)
    return Partition._trusted(tuple(out))


def squares(lam) -> Iterator[tuple[int, int]]:
    for i, p in enumerate(lam, 1):
        for j in range(1, p + 1):
            yield i, j


def hook_stats(lam, s: tuple[int, int]) -> tuple[int, int, int]:
    """(arm, leg, hook) of the square ``s = (i, j)`` of ``lam``."""
    i, j = s
    if i < 1 or j < 1 or i > len(lam) or j > lam[i - 1]:
        raise ValueError(f"square {s} is outside the partition {tuple(lam)}")
    arm = lam[i - 1] - j
    leg = conjugate(lam)[j - 1] - i
    return arm, leg, arm + leg + 1


def arm_legs(lam) -> list[tuple[int, int, int, int]]:
    """All ``(i, j, arm, leg)`` of ``lam``."""
    conj = conjugate(lam)
    return [(i, j, p - j, conj[j - 1] - i)
            for i, p in enumerate(lam, 1) for j in range(1, p + 1)]


class HookMultiset(Counter):
    """Multiset of hook lengths as a count map ``{hook: multiplicity}``."""

    def total(self) -> int:  # Counter.total is 3.10+, kept explicit
        return sum(self.values())

    def scaled(self, r: int) -> "HookMultiset":
        return HookMultiset({h * r: m for h, m in self.items()})

    def as_json(self) -> dict[str, int]:
        return {str(h): self[h] for h in sorted(self)}


def hook_multiset_mod(lam, r: int = 1) -> HookMultiset:
    """``H_r(lam)``: hook lengths divisible by ``r``."""
    if r < 1:
        raise ValueError("r must be positive")
    out = HookMultiset()
    for _, _, a, l in arm_legs(lam):
        h = a + l + 1
        if h % r == 0:
            out[h] += 1
    return out


def bottom_hooks_mod(lam, r: int = 1) -> HookMultiset:
    """Hook lengths divisible by ``r`` of the bottom squares (leg length 0)."""
    if r < 1:
        raise ValueError("r must be positive")
    out = HookMultiset()
    # the bottom square of column j sits in row lam'_j, with hook lam_{lam'_j} - j + 1
    n = len(lam)
    for i in range(n):
        nxt = lam[i + 1] if i + 1 < n else 0
        for j in range(nxt + 1, lam[i] + 1):
            h = lam[i] - j + 1
            if h % r == 0:
                out[h] += 1
    return out


def modular_length(lam, r: int) -> int:
    """``l_r(lam) = sum_i floor(m_i(lam) / r)``."""
    if r < 1:
        raise ValueError("r must be positive")
    return sum(m // r for m in Counter(lam).values())


def is_r_kernel(lam, r: int) -> bool:
    """Consecutive part differences (with a trailing 0) are all below ``r``."""
    n = len(lam)
    return all(lam[i] - (lam[i + 1] if i + 1 < n else 0) < r for i in range(n))


def is_r_core(lam, r: int) -> bool:
    """No hook length divisible by ``r``.

    Checked on the beta-set ``{lam_i - i}``: a hook of length divisible by
    ``r`` exists iff some bead ``b`` has ``b - r`` empty.
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = len(lam)
    beads = {p - i for i, p in enumerate(lam, 1)}
    return all(b - r < -n or b - r in beads for b in beads)


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse-lexicographic order, starting at ``(n)``."""
    if n < 0:
        return
    if n == 0:
        yield Partition._trusted(())
        return
    # Algorithm: keep parts, split the last non-1 part.
    a = [n]
    while True:
        yield Partition._trusted(tuple(a))
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        k = a.pop() - 1
        rest = ones + 1
        while rest > k:
            a.append(k)
            rest -= k
        a.append(k)
        if rest:
            a.append(rest)


@lru_cache(maxsize=64)
def _partitions_tuple(n: int) -> tuple[Partition, ...]:
    return tuple(enumerate_partitions(n))


def partitions_up_to(n: int) -> Iterator[Partition]:
    """All partitions of size ``0..n`` (cached per size)."""
    for m in range(n + 1):
        yield from _partitions_tuple(m)


def partitions_of(n: int) -> tuple[Partition, ...]:
    return _partitions_tuple(n)


def enumerate_r_cores(r: int, max_size: int) -> Iterator[Partition]:
    """Every r-core of size ``<= max_size``, by size then reverse-lex order."""
    for lam in partitions_up_to(max_size):
        if is_r_core(lam, r):
            yield lam


def bf_set(lam, alpha: int, beta: int, congruence: bool = True) -> list[tuple[int, int]]:
    """Squares with ``alpha*leg == beta*arm + beta`` and hook divisible by ``alpha+beta``.

    ``congruence=False`` drops the divisibility filter (used to check that it
    is implied when ``gcd(alpha, beta) == 1``).
    """
    if alpha < 1 or beta < 0:
        raise ValueError("need alpha >= 1 and beta >= 0")
    r = alpha + beta
    out = []
    for i, j, a, l in arm_legs(lam):
        if alpha * l == beta * a + beta and (not congruence or (a + l + 1) % r == 0):
            out.append((i, j))
    return out


def bf_stat(lam, alpha: int, beta: int) -> int:
    return len(bf_set(lam, alpha, beta))


def count_syt(lam) -> int:
    """Number of standard Young tableaux of shape ``lam`` (hook length formula)."""
    n = sum(lam)
    den = prod(a + l + 1 for _, _, a, l in arm_legs(lam))
    q, rem = divmod(factorial(n), den)
    if rem:
        raise ArithmeticError(f"hook product does not divide {n}! for {tuple(lam)}")
    return q


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
