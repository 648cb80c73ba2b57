"""Edge sequences and the two decompositions of a partition.

``phi`` is Littlewood's map to (r-core, r-quotient), computed on the 0/1
boundary code exactly as one would with an abacus.  ``psi`` splits a
partition into an r-kernel (all consecutive part differences ``< r``) and a
cofactor with ``lam_i = kernel_i + r * cofactor_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .partitions import Partition, is_r_core, is_r_kernel

__all__ = [
    "CoreQuotient",
    "EdgeSequence",
    "KernelPair",
    "edge_sequence",
    "edge_to_partition",
    "phi",
    "phi_inverse",
    "psi",
    "psi_inverse",
    "r_core",
]


@dataclass(frozen=True)
class EdgeSequence:
    """Finite window of the bi-infinite boundary code.

    Left of the window every bit is 0 (up steps), right of it every bit is 1
    (right steps).  ``marker`` is the window index of ``s_0``: the number of
    1s before it equals the number of 0s from it onward.
    """

    bits: tuple[int, ...]
    marker: int

    def bit(self, pos: int) -> int:
        """Bit at position ``pos`` relative to the marker."""
        k = pos + self.marker
        if k < 0:
            return 0
        if k >= len(self.bits):
            return 1
        return self.bits[k]

    def charge(self) -> int:
        """#0s at or right of the marker minus #1s left of it (0 when balanced)."""
        left = self.bits[:self.marker] if self.marker > 0 else ()
        right = self.bits[max(self.marker, 0):]
        extra = 0
        if self.marker < 0:
            extra = -self.marker  # window starts right of the marker: padded 0s
        if self.marker > len(self.bits):
            extra -= self.marker - len(self.bits)  # padded 1s left of the marker
        return right.count(0) - left.count(1) + extra

    def canonical(self) -> "EdgeSequence":
        """Window trimmed to run from the first 1 to the last 0."""
        bits = self.bits
        lo = 0
        while lo < len(bits) and bits[lo] == 0:
            lo += 1
        hi = len(bits)
        while hi > lo and bits[hi - 1] == 1:
            hi -= 1
        return EdgeSequence(tuple(bits[lo:hi]), self.marker - lo)

    def __str__(self):
        b = "".join(map(str, self.bits))
        m = self.marker
        if 0 <= m <= len(b):
            return "...0" + b[:m] + "|" + b[m:] + "1..."
        return f"...0{b}1... (marker {m})"


@dataclass(frozen=True)
class CoreQuotient:
    core: Partition
    quotient: tuple[Partition, ...]

    def as_json(self) -> dict:
        return {"core": list(self.core), "quotient": [list(q) for q in self.quotient]}


@dataclass(frozen=True)
class KernelPair:
    kernel: Partition
    cofactor: Partition

    def as_json(self) -> dict:
        return {"kernel": list(self.kernel), "cofactor": list(self.cofactor)}


def edge_sequence(lam: Sequence[int]) -> EdgeSequence:
    """Boundary code of ``lam``, read from the bottom-left: up = 0, right = 1.

    >>> str(edge_sequence((5, 4, 4, 1)))
    '...01011|100101...'
    """
    bits: list[int] = []
    prev = 0
    for p in reversed(lam):
        bits.extend([1] * (p - prev))
        bits.append(0)
        prev = p
    # each step right raises (#1s left - #0s right) by one, from -len(lam)
    marker = len(lam)
    e = EdgeSequence(tuple(bits), marker)
    if e.charge() != 0:  # defensive: the Durfee square is the balance point
        raise AssertionError(f"unbalanced edge sequence for {tuple(lam)}")
    return e


def _parts_from_bits(bits: Sequence[int]) -> Partition:
    parts = []
    ones = 0
    for b in bits:
        if b:
            ones += 1
        elif ones:
            parts.append(ones)
    return Partition._trusted(tuple(reversed(parts)))


def edge_to_partition(e: EdgeSequence) -> Partition:
    """Partition encoded by ``e``; raises if the marker is not balanced."""
    if e.charge() != 0:
        raise ValueError(f"unbalanced marker in edge sequence {e}")
    return _parts_from_bits(e.bits)


def _window(e: EdgeSequence, r: int) -> tuple[int, int]:
    """Position range [lo, hi) relative to the marker, padded to multiples of r."""
    lo = -e.marker
    hi = len(e.bits) - e.marker
    lo -= (lo % r) + r
    hi += (-hi % r) + r
    return lo, hi


def _split(e: EdgeSequence, r: int) -> tuple[list[list[int]], int]:
    """Subsequences ``s^(i) = (s_{i + r j})_j`` over a common j-range; returns (subs, j0)."""
    lo, hi = _window(e, r)
    j0 = lo // r
    subs = [[e.bit(i + r * j) for j in range(j0, hi // r)] for i in range(r)]
    return subs, j0


def phi(lam: Sequence[int], r: int) -> CoreQuotient:
    """Littlewood decomposition: the r-core and the r-quotient of ``lam``.

    >>> phi((5, 4, 4, 1), 3).as_json()
    {'core': [2], 'quotient': [[], [1, 1], [2]]}
    """
    if r < 1:
        raise ValueError("r must be positive")
    e = edge_sequence(lam)
    subs, j0 = _split(e, r)
    quotient = tuple(_parts_from_bits(s) for s in subs)
    # abacus: slide every 0 of each colour to the left
    pushed = [sorted(s) for s in subs]
    nj = len(subs[0])
    bits = [pushed[i][j] for j in range(nj) for i in range(r)]
    core = _parts_from_bits(bits)
    return CoreQuotient(core, quotient)


def r_core(lam: Sequence[int], r: int) -> Partition:
    """The r-core of ``lam`` (zeros of each colour pushed left)."""
    return phi(lam, r).core


def phi_inverse(cq: CoreQuotient, r: int) -> Partition:
    """Rebuild the partition from its r-core and r-quotient."""
    core, quotient = Partition(cq.core), [Partition(q) for q in cq.quotient]
    if len(quotient) != r:
        raise ValueError(f"wrong-quotient-arity: expected {r} partitions, got {len(quotient)}")
    if not is_r_core(core, r):
        raise ValueError(f"not-an-r-core: {tuple(core)} is not a {r}-core")
    ce = edge_sequence(core)
    subs, j0 = _split(ce, r)
    # the charge of each coloured subsequence survives the abacus moves
    charges = []
    for s in subs:
        # s[j - j0] is the bit at j; zeros occupy j < c
        charges.append(j0 + s.count(0))
    placed = []
    for c, nu in zip(charges, quotient):
        ne = edge_sequence(nu)
        placed.append((ne, c))
    # positions of lam's code: i + r*j, j ranging wide enough for all pieces
    jlo = min(c - ne.marker for ne, c in placed) - 1
    jhi = max(c - ne.marker + len(ne.bits) for ne, c in placed) + 1
    bits = []
    for j in range(jlo, jhi):
        for ne, c in placed:
            bits.append(ne.bit(j - c))
    return _parts_from_bits(bits)


def psi(lam: Sequence[int], r: int) -> KernelPair:
    """Kernel/cofactor split from the part differences.

    >>> psi((14, 6, 6, 1), 3).as_json()
    {'kernel': [5, 3, 3, 1], 'cofactor': [3, 1, 1]}
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = len(lam)
    mu = [0] * n
    nu = [0] * n
    acc_mu = acc_nu = 0
    for i in range(n - 1, -1, -1):
        d = lam[i] - (lam[i + 1] if i + 1 < n else 0)
        q, rem = divmod(d, r)
        acc_mu += rem
        acc_nu += q
        mu[i] = acc_mu
        nu[i] = acc_nu
    return KernelPair(Partition(mu), Partition(nu))


def psi_inverse(kp: KernelPair, r: int) -> Partition:
    """``lam_i = kernel_i + r * cofactor_i``."""
    mu, nu = Partition(kp.kernel), Partition(kp.cofactor)
    if not is_r_kernel(mu, r):
        raise ValueError(f"not-an-r-kernel: {tuple(mu)} is not a {r}-kernel")
    n = max(len(mu), len(nu))
    mu_ = tuple(mu) + (0,) * (n - len(mu))
    nu_ = tuple(nu) + (0,) * (n - len(nu))
    return Partition(m + r * v for m, v in zip(mu_, nu_))
