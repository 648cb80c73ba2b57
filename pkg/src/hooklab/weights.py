"""Hook and square weights plugged into partition sums.

A :class:`RhoSpec` names a weight family.  Its *hook form* ``rho(h)`` is what
the multiplication theorems take; the arm/leg *square form* is used by the
q,t and elliptic sums.  Products over a multiset are cached per ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .elliptic import DEFAULT_POINT, RationalPoint, _theta_inv_q, _theta_q, elliptic_square_weight
from .series import MultiSeries, Ring, binomial_product

__all__ = ["KINDS", "RhoSpec", "make_ring"]

KINDS = ("CONST_Z", "INV_H_SQ", "NO", "Z_OVER_H", "Q_WEIGHT", "QT_WEIGHT", "THETA_WEIGHT")

_TRUNC_ORDER = ("T", "S", "p", "q", "t")
_EXACT_ORDER = ("z", "u", "t")


def make_ring(caps: Mapping[str, int], exact: Iterable[tuple[str, bool]] = ()) -> Ring:
    """Ring with truncated variables in a fixed order (T, S, p, q, t)."""
    trunc = [(n, caps[n]) for n in _TRUNC_ORDER if n in caps]
    trunc += [(n, c) for n, c in caps.items() if n not in _TRUNC_ORDER]
    ex = dict(exact)
    exact_l = [(n, ex[n]) for n in _EXACT_ORDER if n in ex]
    exact_l += [(n, l) for n, l in ex.items() if n not in _EXACT_ORDER]
    return Ring(trunc, exact_l)


@dataclass(frozen=True)
class RhoSpec:
    """A named weight family.

    ======================  ============================================
    CONST_Z                 ``z``
    INV_H_SQ                ``1/h^2``
    NO                      ``1 - z/h^2``
    Z_OVER_H                ``z/h``
    Q_WEIGHT                ``z (1 - u q^h) / (1 - q^h)``
    QT_WEIGHT               squares: the arm/leg q,t weight; hooks: its t = q case
    THETA_WEIGHT            elliptic analogue of QT_WEIGHT, q, t, u at a rational point
    ======================  ============================================
    """

    kind: str
    point: RationalPoint = DEFAULT_POINT
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}; choose from {', '.join(KINDS)}")

    # -- ring requirements ---------------------------------------------
    def exact_vars(self, squares: bool = False) -> list[tuple[str, bool]]:
        k = self.kind
        if k in ("CONST_Z", "NO", "Z_OVER_H"):
            return [("z", False)]
        if k == "Q_WEIGHT":
            return [("z", False), ("u", True)]
        if k == "QT_WEIGHT":
            return [("u", True)]
        return []

    def truncated_vars(self, caps: Mapping[str, int], squares: bool = False) -> dict[str, int]:
        k = self.kind
        n = caps.get("T", 6)
        if k in ("Q_WEIGHT", "QT_WEIGHT"):
            out = {"q": caps.get("q", n)}
            if squares and k == "QT_WEIGHT":
                out["t"] = caps.get("t", n)
            return out
        if k == "THETA_WEIGHT":
            return {"p": caps.get("p", 2)}
        return {}

    # -- values -----------------------------------------------------------
    def hook_value(self, ring: Ring, h: int) -> MultiSeries:
        """``rho(h)`` as an element of ``ring``."""
        k = self.kind
        if k == "CONST_Z":
            return ring.gen("z")
        if k == "INV_H_SQ":
            return ring.scalar(Fraction(1, h * h))
        if k == "NO":
            return 1 - ring.gen("z") * Fraction(1, h * h)
        if k == "Z_OVER_H":
            return ring.gen("z") * Fraction(1, h)
        if k == "Q_WEIGHT":
            return self._binomials(ring, [({"u": 1, "q": h}, 1), ({"q": h}, -1)], ring.gen("z"))
        if k == "QT_WEIGHT":
            return self._binomials(ring, [({"u": 1, "q": h}, 1), ({"u": -1, "q": h}, 1),
                                          ({"q": h}, -2)], ring.one())
        pt = self.point
        x = pt.q ** h
        cap = ring.caps["p"]
        s = _theta_q(pt.u * x, cap) * _theta_q(x / pt.u, cap) * _theta_inv_q(x, cap) ** 2
        return ring.one() * s.embed(ring)

    def square_value(self, ring: Ring, a: int, l: int) -> MultiSeries:
        """Weight of a square with arm ``a`` and leg ``l``."""
        k = self.kind
        if k == "QT_WEIGHT":
            return self._binomials(ring, [({"u": 1, "q": a + 1, "t": l}, 1),
                                          ({"u": -1, "q": a, "t": l + 1}, 1),
                                          ({"q": a + 1, "t": l}, -1),
                                          ({"q": a, "t": l + 1}, -1)], ring.one())
        if k == "THETA_WEIGHT":
            s = elliptic_square_weight(a, l, self.point, ring.caps["p"])
            return ring.one() * s.embed(ring)
        return self.hook_value(ring, a + l + 1)

    @staticmethod
    def _binomials(ring: Ring, factors, into: MultiSeries) -> MultiSeries:
        """``into * prod (1 - m)^e`` for ``[(exps of m, e)]``; factors beyond the caps are 1."""
        ex = {}
        for exps, e in factors:
            key = ring.pack(exps)
            if key is None:
                continue
            ex[(key, 1)] = ex.get((key, 1), 0) + e
        return binomial_product(ex, into)

    # -- cached products ---------------------------------------------------
    def product(self, ring: Ring, key: tuple, squares: bool = False) -> MultiSeries:
        """Product of the weights over a sorted tuple of hooks, or of ``(a, l)`` pairs."""
        cache = self._cache.setdefault((ring, squares), {})
        hit = cache.get(key)
        if hit is not None:
            return hit
        if not key:
            out = ring.one()
        elif self.kind in ("Q_WEIGHT", "QT_WEIGHT") and (squares or self.kind == "QT_WEIGHT"):
            out = self._q_product(ring, key, squares)
        else:
            prev = self.product(ring, key[:-1], squares)
            last = key[-1]
            v = self.square_value(ring, *last) if squares else self.hook_value(ring, last)
            out = prev * v
        cache[key] = out
        return out

    def _q_product(self, ring, key, squares):
        """Net binomial exponents of a Q/QT product, applied in one pass."""
        facs = []
        z = 0
        for item in key:
            if self.kind == "Q_WEIGHT":
                h = item[0] + item[1] + 1 if squares else item
                facs += [({"u": 1, "q": h}, 1), ({"q": h}, -1)]
                z += 1
            elif squares:
                a, l = item
                facs += [({"u": 1, "q": a + 1, "t": l}, 1), ({"u": -1, "q": a, "t": l + 1}, 1),
                         ({"q": a + 1, "t": l}, -1), ({"q": a, "t": l + 1}, -1)]
            else:
                h = item
                facs += [({"u": 1, "q": h}, 1), ({"u": -1, "q": h}, 1), ({"q": h}, -2)]
        start = ring.monomial(1, z=z) if z else ring.one()
        return self._binomials(ring, facs, start)

    def as_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "THETA_WEIGHT":
            out["point"] = self.point.as_json()
        return out
