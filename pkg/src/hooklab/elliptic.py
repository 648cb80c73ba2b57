"""Theta functions, the C(m, l, n1, n2) table and elliptic hook sums.

Theta convention: ``theta(z; p) = sum_n (-1)**n z**n p**(n(n-1)/2)``, which
equals ``(p;p)_inf (z;p)_inf (p/z;p)_inf``.  It satisfies
``theta(z) = -z theta(1/z)`` and ``theta(z; 0) = 1 - z``.  Every quantity
built here is a balanced ratio of thetas, so the ``(p;p)_inf`` factor
cancels.

Two evaluation modes are used:

* *rational mode*: q, t, u are exact rationals and only ``p`` is a series
  variable;
* *shifted frame*: q, t (and T, S) are truncated series variables.  Theta
  expansions carry negative powers of q and t alongside positive powers of
  p, so a monomial ``p^m q^a t^b`` is stored as ``P^m Q^(a+Km) R^(b+Km)``
  with ``K`` at least every exponent fed to a theta.  The map is a ring
  homomorphism, all stored exponents are nonnegative, and the usual
  truncation stays exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Mapping

from .littlewood import r_core
from .partitions import Partition, arm_legs, partitions_of
from .series import (Mismatch, MultiSeries, Ring, SeriesError, binomial_product, pochhammer,
                     pochhammer_factors)

__all__ = [
    "CTable",
    "DenominatorVanishes",
    "RationalPoint",
    "ShiftedFrame",
    "c_table",
    "elliptic_square_weight",
    "eno_frame",
    "eno_rhs",
    "lambda_weight",
    "f_omega_rn",
    "n2_cancellation",
    "quasi_periodicity_check",
    "random_points",
    "theta_addition_check",
    "theta_shifted",
    "theta_trunc",
]

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class DenominatorVanishes(ArithmeticError):
    """A theta in a denominator has zero constant term at the chosen point."""


# ---------------------------------------------------------------------------
# theta series
# ---------------------------------------------------------------------------

def _theta_range(p_cap: int, k: int = 0) -> list[int]:
    """All n with ``k*n + n(n-1)/2`` within ``p_cap`` of its minimum."""
    lo = min(k * n + n * (n - 1) // 2 for n in range(-k - 2, -k + 3))
    out = []
    n = -k
    while k * n + n * (n - 1) // 2 - lo <= p_cap:
        out.append(n)
        n -= 1
    n = -k + 1
    while k * n + n * (n - 1) // 2 - lo <= p_cap:
        out.append(n)
        n += 1
    return sorted(out)


def _p_ring(p_cap: int) -> Ring:
    return _P_RINGS(p_cap)


@lru_cache(maxsize=None)
def _P_RINGS(p_cap: int) -> Ring:
    return Ring([("p", p_cap)])


def theta_trunc(arg, p_cap: int, ring: Ring | None = None, var: str = "p") -> MultiSeries:
    """``theta(arg; p)`` truncated at ``p**p_cap``.

    ``arg`` is a nonzero rational, or an exponent dict for a monomial in the
    exact variables of ``ring``.

    >>> theta_trunc({"z": 1}, 2, Ring([("p", 2)], [("z", True)]))
    1 - z - p*z^-1 + p*z^2
    """
    if isinstance(arg, Mapping):
        if ring is None:
            raise SeriesError("a symbolic theta argument needs a ring")
        cap = ring.caps[var]
        terms = []
        for n in _theta_range(cap):
            exps = {v: n * e for v, e in arg.items()}
            exps[var] = exps.get(var, 0) + n * (n - 1) // 2
            terms.append((exps, -1 if n % 2 else 1))
        return ring.from_terms(terms)
    x = Fraction(arg)
    if x == 0:
        raise ValueError("zero-argument: theta(0; p) is undefined")
    R = ring or _p_ring(p_cap)
    terms = [({var: n * (n - 1) // 2}, (-1) ** (n % 2) * x ** n) for n in _theta_range(R.caps[var])]
    return R.from_terms(terms)


def theta_shifted(c, k: int, p_cap: int) -> tuple[int, MultiSeries]:
    """``theta(c * p**k; p) = p**e * G(p)``; returns ``(e, G)`` with G to ``p_cap``."""
    c = Fraction(c)
    if c == 0:
        raise ValueError("zero-argument: theta(0; p) is undefined")
    ns = _theta_range(p_cap, k)
    e = min(k * n + n * (n - 1) // 2 for n in ns)
    R = _p_ring(p_cap)
    G = R.from_terms(({"p": k * n + n * (n - 1) // 2 - e}, (-1) ** (n % 2) * c ** n) for n in ns)
    return e, G


@lru_cache(maxsize=65536)
def _theta_q(x: Fraction, p_cap: int) -> MultiSeries:
    return theta_trunc(x, p_cap)


@lru_cache(maxsize=65536)
def _theta_inv_q(x: Fraction, p_cap: int) -> MultiSeries:
    if x == 1:
        raise DenominatorVanishes(f"theta({x}; p) has zero constant term")
    return _theta_q(x, p_cap).inverse()


# ---------------------------------------------------------------------------
# rational points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalPoint:
    """Exact values for q, t, u."""

    q: Fraction
    t: Fraction
    u: Fraction

    def as_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("q", "t", "u")}


DEFAULT_POINT = RationalPoint(Fraction(2, 3), Fraction(3, 5), Fraction(5, 7))


def random_points(count: int, seed: int = 0) -> list[RationalPoint]:
    """``count`` reproducible points; the first one for seed 0 is q=2/3, t=3/5, u=5/7.

    Numerators and denominators are six distinct primes, so no monomial
    ``q^a t^b u^c`` other than the trivial one equals 1.
    """
    rng = random.Random(seed)
    out = [DEFAULT_POINT] if seed == 0 and count else []
    while len(out) < count:
        a = rng.sample(_PRIMES, 6)
        out.append(RationalPoint(Fraction(a[0], a[1]), Fraction(a[2], a[3]), Fraction(a[4], a[5])))
    return out


# ---------------------------------------------------------------------------
# elliptic square weights and f_{omega; r, n}
# ---------------------------------------------------------------------------

def elliptic_square_weight(a: int, l: int, pt: RationalPoint, p_cap: int) -> MultiSeries:
    """theta(u q^(a+1) t^l) theta(q^a t^(l+1) / u) / (theta(q^(a+1) t^l) theta(q^a t^(l+1)))."""
    return _square_weight(a, l, pt, p_cap)


@lru_cache(maxsize=65536)
def _square_weight(a, l, pt, p_cap):
    x = pt.q ** (a + 1) * pt.t ** l
    y = pt.q ** a * pt.t ** (l + 1)
    return (_theta_q(pt.u * x, p_cap) * _theta_q(y / pt.u, p_cap)
            * _theta_inv_q(x, p_cap) * _theta_inv_q(y, p_cap))


def _square_weight_pu(a, l, pt, p_cap) -> tuple[int, MultiSeries]:
    """Square weight with u replaced by ``u*p``: ``(p-shift, series)``."""
    x = pt.q ** (a + 1) * pt.t ** l
    y = pt.q ** a * pt.t ** (l + 1)
    e1, g1 = theta_shifted(pt.u * x, 1, p_cap)
    e2, g2 = theta_shifted(y / pt.u, -1, p_cap)
    return e1 + e2, g1 * g2 * _theta_inv_q(x, p_cap) * _theta_inv_q(y, p_cap)


def _core_class(omega, r, n):
    omega = Partition(omega)
    size = sum(omega) + r * n
    return [lam for lam in partitions_of(size) if r_core(lam, r) == omega]


def _mod_squares(lam, r):
    return [(a, l) for _, _, a, l in arm_legs(lam) if (a + l + 1) % r == 0]


def lambda_weight(lam, r: int, pt: RationalPoint, p_cap: int) -> MultiSeries:
    """Product of elliptic square weights over the squares of ``lam`` with hook divisible by r."""
    w = _p_ring(p_cap).one()
    for a, l in _mod_squares(lam, r):
        w = w * _square_weight(a, l, pt, p_cap)
    return w


def f_omega_rn(omega, r: int, n: int, pt: RationalPoint, p_cap: int) -> MultiSeries:
    """``f_{omega; r, n}`` at the point ``pt`` as a series in p.

    Raises :class:`DenominatorVanishes` if some theta denominator is
    singular at ``pt``; pick another point.
    """
    total = _p_ring(p_cap).zero()
    for lam in _core_class(omega, r, n):
        total = total + lambda_weight(lam, r, pt, p_cap)
    return total


def f_omega_rn_pu(omega, r, n, pt, p_cap) -> tuple[int, MultiSeries]:
    """``f_{omega; r, n}(p u)`` as ``(p-shift, series)``."""
    shift = None
    total = _p_ring(p_cap).zero()
    for lam in _core_class(omega, r, n):
        e, w = 0, _p_ring(p_cap).one()
        for a, l in _mod_squares(lam, r):
            de, g = _square_weight_pu(a, l, pt, p_cap)
            e += de
            w = w * g
        if shift is None:
            shift = e
        elif e != shift:  # defensive: every lambda has n such squares
            raise AssertionError("inconsistent p-shift across the core class")
        total = total + w
    return (shift or 0), total


def quasi_periodicity_check(omega, r: int, n: int, pt: RationalPoint, p_cap: int) -> bool:
    """``f(p u) == (t / (u^2 p q))^n f(u)`` as truncated Laurent series in p."""
    shift, lhs = f_omega_rn_pu(omega, r, n, pt, p_cap)
    rhs = f_omega_rn(omega, r, n, pt, p_cap) * ((pt.t / (pt.u ** 2 * pt.q)) ** n)
    return shift == -n and lhs == rhs


def theta_addition_check(x, y, z, w, p_cap: int) -> bool:
    """The four-term theta addition formula at rational arguments."""
    x, y, z, w = map(Fraction, (x, y, z, w))

    def th(v):
        return theta_trunc(v, p_cap)

    lhs = th(x * z) * th(x / z) * th(y * w) * th(y / w) - th(x * w) * th(x / w) * th(y * z) * th(y / z)
    rhs = th(x * y) * th(x / y) * th(z * w) * th(z / w) * (y / z)
    return lhs == rhs


def n2_cancellation(r: int, pt: RationalPoint, p_cap: int) -> dict[str, bool]:
    """Check the three pairwise theta identities behind ``f_{0;r,2} = f_{(1);r,2}``.

    Returns a dict of named booleans: each pairwise difference against its
    closed form ``t_i``, the vanishing of ``t1 + t2 + t3``, and the
    resulting equality of the two sums.
    """
    if r < 2:
        raise ValueError("the comparison of cores 0 and (1) needs r >= 2")
    q, t, u = pt.q, pt.t, pt.u

    def th(v):
        return _theta_q(Fraction(v), p_cap)

    def ith(v):
        return _theta_inv_q(Fraction(v), p_cap)

    def phi(parts):
        return lambda_weight(Partition(parts), r, pt, p_cap)

    def ratio(num, den, c=1):
        out = _p_ring(p_cap).scalar(c)
        for v in num:
            out = out * th(v)
        for v in den:
            out = out * ith(v)
        return out

    ones = lambda k: [1] * k  # noqa: E731
    d1 = phi([r + 1] + ones(r - 1)) - phi([r + 1] + ones(r))
    d2 = phi([r] + ones(r)) - phi([r, 2] + ones(r - 1))
    d3 = phi([r, 2] + ones(r - 2)) - phi([r + 1, 2] + ones(r - 2))
    t1 = ratio([u * q / t, u * q ** (1 - r) / t, 1 / (u * q ** r), 1 / u, q ** (r + 1) * t ** (2 * r - 1)],
               [q ** (r - 1) * t, q * t ** (r - 1), t ** r, q ** (r + 1) * t ** (r - 1), q ** r * t ** r],
               -(q ** (2 * r - 1)) * t ** (r + 1))
    t2 = ratio([u * q / t, u * q ** r * t ** r, q ** (r - 1) * t ** (r + 1) / u, 1 / u,
                q ** (2 - r) * t ** (r - 2)],
               [q ** (r - 1) * t, q ** (2 - r) / t ** 2, q * t ** (r - 1), t ** r, q ** r * t ** r])
    t3 = ratio([u * q ** 2 * t ** (r - 2), u * q / t, q * t ** (r - 1) / u, 1 / u,
                q ** (2 * r - 1) * t ** (r + 1)],
               [q ** (r - 1) * t, q ** (2 - r) / t ** 2, q * t ** (r - 1),
                q ** (r + 1) * t ** (r - 1), q ** r * t ** r], -1)
    return {
        "d1=t1": d1 == t1,
        "d2=t2": d2 == t2,
        "d3=t3": d3 == t3,
        "t1+t2+t3=0": not (t1 + t2 + t3),
        "f0=f1": f_omega_rn((), r, 2, pt, p_cap) == f_omega_rn((1,), r, 2, pt, p_cap),
    }


# ---------------------------------------------------------------------------
# C(m, l, n1, n2)
# ---------------------------------------------------------------------------

class CTable:
    """Integer coefficients ``C(m, l, n1, n2)`` for ``1 <= m <= p_cap``."""

    def __init__(self, p_cap: int, entries: dict[tuple[int, int, int, int], int]):
        self.p_cap = p_cap
        self.entries = entries
        self._by_m: dict[int, list[tuple[int, int, int, int]]] = {}
        for (m, l, n1, n2), c in sorted(entries.items()):
            self._by_m.setdefault(m, []).append((l, n1, n2, c))

    def __getitem__(self, key) -> int:
        return self.entries.get(tuple(key), 0)

    def support(self, m: int) -> list[tuple[int, int, int, int]]:
        """Nonzero ``(l, n1, n2, C)`` at level ``m``."""
        if m > self.p_cap:
            raise ValueError(f"table only covers m <= {self.p_cap}")
        return self._by_m.get(m, [])

    def invariants(self) -> dict[str, bool]:
        E = self.entries
        sym = all(E.get((m, l, n2, n1), 0) == c and E.get((m, -l, -n1, -n2), 0) == c
                  for (m, l, n1, n2), c in E.items())
        sums: dict = {}
        for (m, l, n1, n2), c in E.items():
            sums[(m, n1, n2)] = sums.get((m, n1, n2), 0) + c
        zero_sum = all(v == 0 for v in sums.values())
        bound = all(abs(l) < isqrt(4 * m + 1) for (m, l, _, _) in E)
        return {"symmetry": sym, "u=1 sum vanishes": zero_sum, "l-support bound": bound}

    def rows(self) -> list[dict]:
        return [{"m": m, "l": l, "n1": n1, "n2": n2, "c": c}
                for (m, l, n1, n2), c in sorted(self.entries.items())]


@lru_cache(maxsize=16)
def c_table(p_cap: int) -> CTable:
    """Expand the defining ratio of theta-type products and read off C(m, l, n1, n2)."""
    if p_cap < 1:
        raise ValueError("p_cap must be positive")
    R = Ring([("p", p_cap)], [("u", True), ("q", True), ("t", True)])
    num = [{"p": 1, "u": 1, "q": 1}, {"p": 1, "u": -1, "q": -1},
           {"p": 1, "u": 1, "t": -1}, {"p": 1, "u": -1, "t": 1}]
    den = [{"p": 1, "q": 1}, {"p": 1, "q": -1}, {"p": 1, "t": -1}, {"p": 1, "t": 1}]
    acc = R.one()
    for a in num:
        acc = pochhammer(a, ["p"], 1, into=acc)
    for a in den:
        acc = pochhammer(a, ["p"], -1, into=acc)
    entries = {}
    for exps, c in acc.items():
        m = exps.get("p", 0)
        if not m:
            continue
        if not isinstance(c, int):
            raise AssertionError(f"non-integral coefficient {c} at {exps}")
        entries[(m, exps.get("u", 0), -exps.get("q", 0), exps.get("t", 0))] = c
    return CTable(p_cap, entries)


# ---------------------------------------------------------------------------
# the shifted symbolic frame
# ---------------------------------------------------------------------------

class ShiftedFrame:
    """Truncated ring where ``p`` drags a shift ``K`` onto selected variables.

    ``caps`` are the caps seen by the user (e.g. ``{"q": 4, "t": 4, "T": 4}``);
    shifted variables get the internal cap ``cap + K * p_cap``.
    """

    def __init__(self, p_cap: int, caps: Mapping[str, int], shift: int,
                 shifted: Iterable[str] = ("q", "t"),
                 exact: Iterable[tuple[str, bool]] = (("u", True),)):
        self.p_cap = p_cap
        self.shift = shift
        self.shifted = tuple(shifted)
        self.user_caps = dict(caps)
        trunc = [("p", p_cap)]
        for n, c in caps.items():
            trunc.append((n, c + shift * p_cap if n in self.shifted else c))
        self.ring = Ring(trunc, list(exact))

    def exps(self, **e: int) -> dict[str, int]:
        m = e.get("p", 0)
        out = dict(e)
        for v in self.shifted:
            x = out.get(v, 0) + self.shift * m
            if x < 0:
                raise SeriesError(f"shift {self.shift} too small for {v}^{e.get(v)} p^{m}")
            out[v] = x
        return out

    def monomial(self, coeff=1, **e: int) -> MultiSeries:
        return self.ring.monomial(coeff, **self.exps(**e))

    def theta(self, **e: int) -> MultiSeries:
        """``theta(x; p)`` for the monomial ``x`` (no ``p`` in ``e``)."""
        R = self.ring
        terms = []
        for n in _theta_range(self.p_cap):
            m = n * (n - 1) // 2
            mono = {v: n * x for v, x in e.items()}
            mono["p"] = m
            terms.append((self.exps(**mono), -1 if n % 2 else 1))
        return R.from_terms(terms)

    def factors(self, bases: Iterable[str], **e: int) -> list[tuple[int, object]]:
        """Factor keys of ``(x; b_1, ...)_inf`` for the monomial ``x`` given by ``e``."""
        return pochhammer_factors(self.monomial(**e), [self.monomial(**{b: 1}) for b in bases],
                                  self.ring)

    def pochhammer(self, power: int, into: MultiSeries, bases: Iterable[str], **e: int) -> MultiSeries:
        return pochhammer(self.monomial(**e), [self.monomial(**{b: 1}) for b in bases],
                          power, into=into)

    def unshift(self, exps: Mapping[str, int]) -> dict[str, int]:
        out = dict(exps)
        m = out.get("p", 0)
        for v in self.shifted:
            x = out.get(v, 0) - self.shift * m
            if x:
                out[v] = x
            else:
                out.pop(v, None)
        return out

    def unshift_mismatch(self, mm: Mismatch | None) -> Mismatch | None:
        if mm is None:
            return None
        return Mismatch(self.unshift(mm.monomial), mm.lhs, mm.rhs)


def eno_frame(caps: Mapping[str, int]) -> ShiftedFrame:
    """Frame for the elliptic q,t identity; ``caps`` holds p, T, q, t."""
    p_cap = caps.get("p", 1)
    T = caps.get("T", 4)
    return ShiftedFrame(p_cap, {"T": T, "q": caps.get("q", T), "t": caps.get("t", T)}, shift=max(T, 1))


def eno_rhs(caps: Mapping[str, int], u=None, frame: ShiftedFrame | None = None) -> MultiSeries:
    """Product side of the elliptic q,t Nekrasov-Okounkov formula.

    ``u=None`` keeps u as a Laurent variable; a rational value specializes it.
    The series lives in ``frame.ring`` (see :class:`ShiftedFrame`).
    """
    F = frame or eno_frame(caps)
    T_cap = F.user_caps["T"]
    ex: dict = {}

    def put(power, bases, **e):
        for f in F.factors(bases, **e):
            ex[f] = ex.get(f, 0) + power

    qtT = ("q", "t", "T")
    put(1, qtT, u=1, q=1, T=1)
    put(1, qtT, u=-1, t=1, T=1)
    put(-1, qtT, T=1)
    put(-1, qtT, q=1, t=1, T=1)
    if F.p_cap:
        table = c_table(F.p_cap * T_cap)
        for m in range(1, F.p_cap + 1):
            for k in range(1, T_cap + 1):
                for l, n1, n2, c in table.support(k * m):
                    base = {"p": m, "T": k}
                    put(c, ("q", "t"), **base, u=l + 1, q=1 - n1, t=n2)
                    put(c, ("q", "t"), **base, u=l - 1, q=-n1, t=1 + n2)
                    put(-c, ("q", "t"), **base, u=l, q=-n1, t=n2)
                    put(-c, ("q", "t"), **base, u=l, q=1 - n1, t=1 + n2)
    acc = binomial_product({f: e for f, e in ex.items() if e}, F.ring.one())
    if u is not None:
        acc = acc.specialize(u=u)
    return acc
