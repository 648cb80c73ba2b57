"""Exact truncated multivariate power/Laurent series.

A :class:`Ring` fixes the variables.  *Truncated* variables carry a cap and
only monomials with every truncated exponent ``<= cap`` are kept; the set of
discarded monomials is an ideal, so ring operations on truncated operands
are exact below the caps.  *Exact* variables (``z``, ``u``, ...) are never
truncated; Laurent ones may carry negative exponents.

Coefficients are Python ``int`` or :class:`fractions.Fraction`.  Nothing in
this module uses floating point.

Monomials are stored as packed integers: one 16-bit field per variable,
exact variables in the low fields (biased by ``2**14``) and truncated
variables in the high fields.  A product of two keys is checked against the
caps with a single mask test; see :meth:`Ring._mul_terms`.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

__all__ = [
    "EXACT_EXPONENT_BOUND",
    "Mismatch",
    "MultiSeries",
    "Ring",
    "SeriesError",
    "binomial_product",
    "eta_power",
    "pochhammer",
    "pochhammer_factors",
]

_W = 16
_MASK = (1 << _W) - 1
_BIAS = 1 << (_W - 2)

#: Largest absolute exponent allowed on an exact (untruncated) variable.
EXACT_EXPONENT_BOUND = 64


class SeriesError(ValueError):
    """Raised on ring mismatches, bad constant terms and similar misuse."""


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _div(c, d):
    if isinstance(c, int) and isinstance(d, int) and c % d == 0:
        return c // d
    return _norm(Fraction(c) / d)


class Mismatch:
    """First differing monomial between two series."""

    __slots__ = ("monomial", "lhs", "rhs")

    def __init__(self, monomial: dict, lhs, rhs):
        self.monomial = monomial
        self.lhs = lhs
        self.rhs = rhs

    def as_dict(self) -> dict:
        return {"monomial": dict(self.monomial), "lhs": str(self.lhs), "rhs": str(self.rhs)}

    def __repr__(self):
        return f"Mismatch({self.monomial}, lhs={self.lhs}, rhs={self.rhs})"


class Ring:
    """Variable table: ordered truncated variables with caps, then exact ones.

    >>> R = Ring([("T", 4)], [("z", False)])
    >>> (1 - R.gen("z") * R.gen("T")).inverse().coefficient(T=3, z=3)
    1
    """

    def __init__(self, truncated: Iterable[tuple[str, int]] = (),
                 exact: Iterable[tuple[str, bool]] = ()):
        truncated = [(str(n), int(c)) for n, c in truncated]
        exact = [(str(n), bool(l)) for n, l in exact]
        names = [n for n, _ in truncated] + [n for n, _ in exact]
        if len(set(names)) != len(names):
            raise SeriesError(f"duplicate variable names in {names}")
        for n, c in truncated:
            if not 0 <= c < (1 << (_W - 1)):
                raise SeriesError(f"cap for {n} out of range: {c}")
        self.truncated = tuple(truncated)
        self.exact = tuple(exact)
        self.names = tuple(names)
        self.caps = {n: c for n, c in truncated}
        self.laurent = {n: l for n, l in exact}
        ne = len(exact)
        # field index of each variable
        self._field = {}
        for i, (n, _) in enumerate(exact):
            self._field[n] = i
        for i, (n, _) in enumerate(truncated):
            self._field[n] = ne + i
        self._ne = ne
        self._nt = len(truncated)
        gt = 0
        guard = 0
        for i, (n, c) in enumerate(truncated):
            f = ne + i
            gt |= ((1 << (_W - 1)) - 1 - c) << (_W * f)
            guard |= (1 << (_W - 1)) << (_W * f)
        be = 0
        for i in range(ne):
            be |= _BIAS << (_W * i)
        self._gt = gt
        self._guard = guard
        self._be = be
        # adding _shift to a key prepares it as the right operand of a product
        self._shift = gt - be
        self._one_key = be

    # -- identity -------------------------------------------------------
    def _sig(self):
        return (self.truncated, self.exact)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        parts = [f"{n}<={c}" for n, c in self.truncated]
        parts += [f"{n}{'^±' if l else ''}" for n, l in self.exact]
        return f"Ring({', '.join(parts)})"

    def with_caps(self, **caps: int) -> "Ring":
        """Same variables, some caps replaced."""
        unknown = set(caps) - set(self.caps)
        if unknown:
            raise SeriesError(f"not truncated variables: {sorted(unknown)}")
        return Ring([(n, caps.get(n, c)) for n, c in self.truncated], self.exact)

    # -- packing --------------------------------------------------------
    def pack(self, exps: Mapping[str, int]):
        """Packed key for ``exps``, or ``None`` if the monomial exceeds a cap."""
        key = self._one_key
        for n, e in exps.items():
            if not e:
                continue
            try:
                f = self._field[n]
            except KeyError:
                raise SeriesError(f"unknown variable {n!r} for {self!r}") from None
            if f >= self._ne:
                if e < 0:
                    raise SeriesError(f"negative exponent on truncated variable {n}")
                if e > self.caps[n]:
                    return None
            else:
                if e < 0 and not self.laurent[n]:
                    raise SeriesError(f"negative exponent on polynomial variable {n}")
                if abs(e) > EXACT_EXPONENT_BOUND:
                    raise SeriesError(f"exponent {e} on {n} exceeds bound {EXACT_EXPONENT_BOUND}")
            key += e << (_W * f)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        """Exponent tuple in ``self.names`` order."""
        out = []
        for n in self.names:
            f = self._field[n]
            v = (key >> (_W * f)) & _MASK
            if f < self._ne:
                v -= _BIAS
            out.append(v)
        return tuple(out)

    def exponents(self, key: int) -> dict[str, int]:
        return {n: e for n, e in zip(self.names, self.unpack(key)) if e}

    def degree(self, key: int) -> int:
        """Total degree in the truncated variables."""
        d = 0
        k = key >> (_W * self._ne)
        for _ in range(self._nt):
            d += k & _MASK
            k >>= _W
        return d

    def max_degree(self) -> int:
        return sum(c for _, c in self.truncated)

    # -- constructors ---------------------------------------------------
    def zero(self) -> "MultiSeries":
        return MultiSeries(self, {})

    def one(self) -> "MultiSeries":
        return MultiSeries(self, {self._one_key: 1})

    def scalar(self, c) -> "MultiSeries":
        c = _norm(c)
        return MultiSeries(self, {self._one_key: c} if c else {})

    def monomial(self, coeff=1, **exps: int) -> "MultiSeries":
        key = self.pack(exps)
        coeff = _norm(coeff)
        if key is None or not coeff:
            return self.zero()
        return MultiSeries(self, {key: coeff})

    def gen(self, name: str) -> "MultiSeries":
        return self.monomial(**{name: 1})

    def from_terms(self, terms: Iterable[tuple[Mapping[str, int], object]]) -> "MultiSeries":
        out: dict = {}
        for exps, c in terms:
            key = self.pack(exps)
            if key is None:
                continue
            out[key] = out.get(key, 0) + c
        return MultiSeries(self, {k: _norm(v) for k, v in out.items() if v})

    def coerce(self, x) -> "MultiSeries":
        if isinstance(x, MultiSeries):
            if x.ring != self:
                raise SeriesError(f"ring mismatch: {x.ring!r} vs {self!r}")
            return x
        if isinstance(x, (int, Rational)):
            return self.scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    # -- kernels --------------------------------------------------------
    def _check_exact(self, keys):
        if not self._ne:
            return
        lo = _BIAS - EXACT_EXPONENT_BOUND
        hi = _BIAS + EXACT_EXPONENT_BOUND
        for k in keys:
            for i in range(self._ne):
                v = (k >> (_W * i)) & _MASK
                if v < lo or v > hi:
                    n = self.exact[i][0]
                    raise SeriesError(
                        f"exponent {v - _BIAS} on {n} exceeds bound {EXACT_EXPONENT_BOUND}")

    def _mul_terms(self, a: dict, b: dict) -> dict:
        if not a or not b:
            return {}
        if len(a) < len(b):
            a, b = b, a
        guard, gt, sh = self._guard, self._gt, self._shift
        bs = [(k + sh, c) for k, c in b.items()]
        out: dict = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in bs:
                s = ka + kb
                if s & guard:
                    continue
                s -= gt
                out[s] = get(s, 0) + ca * cb
        out = {k: v for k, v in out.items() if v}
        self._check_exact(out)
        return out

    def _scale_shift(self, a: dict, key: int, c) -> dict:
        """Terms of ``c * m * a`` where ``m`` has packed key ``key``."""
        guard, gt = self._guard, self._gt
        kb = key + self._shift
        out = {}
        for k, v in a.items():
            s = k + kb
            if s & guard:
                continue
            out[s - gt] = v * c
        if key & self._exact_mask() != self._one_key:
            self._check_exact(out)
        return out

    def _exact_mask(self):
        return (1 << (_W * self._ne)) - 1


class MultiSeries:
    """Element of a :class:`Ring`: a sparse map from monomials to rationals."""

    __slots__ = ("ring", "terms")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- inspection -----------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        """(exponent dict, coefficient) pairs, sorted by exponent tuple."""
        R = self.ring
        for key in sorted(self.terms, key=R.unpack):
            yield R.exponents(key), self.terms[key]

    def coefficient(self, monomial: Mapping[str, int] | None = None, **exps: int):
        if monomial:
            exps = {**monomial, **exps}
        key = self.ring.pack(exps)
        if key is None:
            raise SeriesError(f"monomial {exps} lies beyond the truncation caps")
        return self.terms.get(key, 0)

    def constant_term(self):
        return self.terms.get(self.ring._one_key, 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_degree(self) -> int:
        """Least total truncated degree among the terms (``-1`` if zero)."""
        if not self.terms:
            return -1
        return min(self.ring.degree(k) for k in self.terms)

    # -- ring operations ------------------------------------------------
    def _other(self, x) -> dict:
        return self.ring.coerce(x).terms

    def __add__(self, x):
        b = self._other(x)
        out = dict(self.terms)
        for k, v in b.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MultiSeries(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, x):
        return self + (-self.ring.coerce(x))

    def __rsub__(self, x):
        return self.ring.coerce(x) - self

    def __mul__(self, x):
        if isinstance(x, (int, Rational)) and not isinstance(x, bool):
            x = _norm(x)
            if not x:
                return self.ring.zero()
            return MultiSeries(self.ring, {k: v * x for k, v in self.terms.items()})
        b = self._other(x)
        return MultiSeries(self.ring, self.ring._mul_terms(self.terms, b))

    __rmul__ = __mul__

    def __truediv__(self, x):
        if isinstance(x, (int, Rational)):
            if not x:
                raise ZeroDivisionError("division of a series by zero")
            return MultiSeries(self.ring, {k: _div(v, x) for k, v in self.terms.items()})
        return self * self.ring.coerce(x).inverse()

    def __rtruediv__(self, x):
        return self.ring.coerce(x) * self.inverse()

    def __pow__(self, e):
        return self.pow(e)

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.ring.scalar(other)
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def compare(self, other: "MultiSeries") -> Mismatch | None:
        """``None`` if equal, else the lexicographically first differing monomial."""
        if self.ring != other.ring:
            raise SeriesError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
        R = self.ring
        a, b = self.terms, other.terms
        bad = [k for k in set(a) | set(b) if a.get(k, 0) != b.get(k, 0)]
        if not bad:
            return None
        k = min(bad, key=R.unpack)
        return Mismatch(R.exponents(k), a.get(k, 0), b.get(k, 0))

    # -- fast products with special factors -----------------------------
    def mul_monomial(self, coeff=1, **exps: int) -> "MultiSeries":
        key = self.ring.pack(exps)
        if key is None:
            return self.ring.zero()
        return MultiSeries(self.ring, self.ring._scale_shift(self.terms, key, _norm(coeff)))

    def mul_binomial(self, coeff, key: int) -> "MultiSeries":
        """``self * (1 + coeff * m)`` for the monomial with packed ``key``."""
        out = dict(self.terms)
        for k, v in self.ring._scale_shift(self.terms, key, coeff).items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
        return MultiSeries(self.ring, out)

    def div_binomial(self, coeff, key: int) -> "MultiSeries":
        """``self / (1 - coeff * m)``; ``m`` must have positive truncated degree."""
        R = self.ring
        if not R.degree(key):
            raise SeriesError("division by (1 - c*m) needs m of positive truncated degree")
        out = dict(self.terms)
        term = self.terms
        while True:
            term = R._scale_shift(term, key, coeff)
            if not term:
                break
            for k, v in term.items():
                s = out.get(k, 0) + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return MultiSeries(R, out)

    # -- graded pieces and analytic operations --------------------------
    def _pieces(self) -> dict[int, dict]:
        R = self.ring
        pieces: dict[int, dict] = {}
        for k, v in self.terms.items():
            pieces.setdefault(R.degree(k), {})[k] = v
        return pieces

    def inverse(self) -> "MultiSeries":
        """Multiplicative inverse.

        The degree-0 part (in the truncated variables) must be a single term
        ``c * m`` with ``c != 0`` and ``m`` a monomial in Laurent variables.
        """
        R = self.ring
        A = self._pieces()
        a0 = A.get(0, {})
        if len(a0) != 1:
            raise SeriesError("non-invertible leading term: degree-0 part is "
                              + ("zero" if not a0 else "not a single monomial"))
        (k0, c0), = a0.items()
        exps = R.exponents(k0)
        for n, e in exps.items():
            if not R.laurent.get(n, False):
                raise SeriesError(f"non-invertible leading term: {n}^{e} is not a unit")
        inv0 = {R.pack({n: -e for n, e in exps.items()}): _norm(Fraction(1) / c0)
                if not (isinstance(c0, int) and c0 in (1, -1)) else c0}
        neg_inv0 = {k: -v for k, v in inv0.items()}
        B = {0: inv0}
        for d in range(1, R.max_degree() + 1):
            acc: dict = {}
            for k in range(1, d + 1):
                ak = A.get(k)
                bk = B.get(d - k)
                if not ak or not bk:
                    continue
                for key, v in R._mul_terms(ak, bk).items():
                    acc[key] = acc.get(key, 0) + v
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                B[d] = {k: _norm(v) for k, v in R._mul_terms(acc, neg_inv0).items()}
        out = {}
        for piece in B.values():
            out.update(piece)
        return MultiSeries(R, out)

    def exp(self) -> "MultiSeries":
        """``exp(self)``; requires zero degree-0 part."""
        R = self.ring
        A = self._pieces()
        if A.get(0):
            raise SeriesError("exp needs a series without degree-0 part")
        kA = {k: {key: v * k for key, v in p.items()} for k, p in A.items()}
        E = {0: {R._one_key: 1}}
        for d in range(1, R.max_degree() + 1):
            acc: dict = {}
            for k in range(1, d + 1):
                ak, ek = kA.get(k), E.get(d - k)
                if not ak or not ek:
                    continue
                for key, v in R._mul_terms(ak, ek).items():
                    acc[key] = acc.get(key, 0) + v
            acc = {k: _div(v, d) for k, v in acc.items() if v}
            if acc:
                E[d] = acc
        out = {}
        for piece in E.values():
            out.update(piece)
        return MultiSeries(R, out)

    def log(self) -> "MultiSeries":
        """``log(self)``; requires degree-0 part exactly 1."""
        R = self.ring
        A = self._pieces()
        if A.get(0) != {R._one_key: 1}:
            raise SeriesError("log needs a series with degree-0 part exactly 1")
        L: dict[int, dict] = {}
        for d in range(1, R.max_degree() + 1):
            acc = dict(A.get(d, {}))
            corr: dict = {}
            for k in range(1, d):
                lk, ak = L.get(k), A.get(d - k)
                if not lk or not ak:
                    continue
                for key, v in R._mul_terms(lk, ak).items():
                    corr[key] = corr.get(key, 0) + k * v
            for key, v in corr.items():
                acc[key] = acc.get(key, 0) - _div(v, d)
            acc = {k: _norm(v) for k, v in acc.items() if v}
            if acc:
                L[d] = acc
        out = {}
        for piece in L.values():
            out.update(piece)
        return MultiSeries(R, out)

    def pow(self, e) -> "MultiSeries":
        """``self ** e`` for an integer, rational, variable name or exact-only series.

        Non-integer exponents are computed as ``exp(e * log(self))`` and need a
        degree-0 part equal to 1.
        """
        R = self.ring
        if isinstance(e, bool):
            raise TypeError("boolean exponent")
        if isinstance(e, int):
            if e < 0:
                return self.inverse().pow(-e)
            result, base = R.one(), self
            while e:
                if e & 1:
                    result = result * base
                e >>= 1
                if e:
                    base = base * base
            return result
        if isinstance(e, str):
            if e in R.caps or e not in R.laurent:
                raise SeriesError(f"symbolic exponent must be an exact variable, got {e!r}")
            e = R.gen(e)
        if isinstance(e, Rational):
            e = R.scalar(e)
        e = R.coerce(e)
        return (e * self.log()).exp()

    # -- variable maps --------------------------------------------------
    def substitute(self, var: str, image: Mapping[str, int], ring: Ring | None = None,
                   coeff=1) -> "MultiSeries":
        """Replace ``var`` by ``coeff * image`` (a monomial), re-truncating in ``ring``."""
        src = self.ring
        dst = ring or src
        if var in src.caps:
            deg = sum(e for n, e in image.items() if n in dst.caps)
            if deg <= 0 or any(e < 0 for n, e in image.items() if n in dst.caps):
                raise SeriesError(f"cap-violation: image of truncated {var} must have "
                                  "positive truncated degree")
        out: dict = {}
        for exps, c in self.items():
            e = exps.pop(var, 0)
            if e:
                for n, x in image.items():
                    exps[n] = exps.get(n, 0) + e * x
                if coeff != 1:
                    c = c * Fraction(coeff) ** e
            key = dst.pack(exps)
            if key is None:
                continue
            out[key] = out.get(key, 0) + c
        return MultiSeries(dst, {k: _norm(v) for k, v in out.items() if v})

    def specialize(self, **values) -> "MultiSeries":
        """Evaluate exact variables at rationals; the result drops those variables."""
        R = self.ring
        for n in values:
            if n not in R.laurent:
                raise SeriesError(f"can only specialize exact variables, not {n!r}")
        dst = Ring(R.truncated, [(n, l) for n, l in R.exact if n not in values])
        vals = {n: Fraction(v) for n, v in values.items()}
        out: dict = {}
        for exps, c in self.items():
            for n, v in vals.items():
                e = exps.pop(n, 0)
                if e:
                    c = c * v ** e
            key = dst.pack(exps)
            out[key] = out.get(key, 0) + c
        return MultiSeries(dst, {k: _norm(v) for k, v in out.items() if v})

    def embed(self, ring: Ring) -> "MultiSeries":
        """Same series viewed in ``ring`` (matching names), truncated to its caps."""
        out = {}
        for exps, c in self.items():
            key = ring.pack(exps)
            if key is not None:
                out[key] = c
        return MultiSeries(ring, out)

    def truncate(self, **caps: int) -> "MultiSeries":
        return self.embed(self.ring.with_caps(**caps))

    # -- presentation ---------------------------------------------------
    def to_json(self) -> str:
        R = self.ring
        vars_ = [{"name": n, "cap": c} for n, c in R.truncated]
        vars_ += [{"name": n, "laurent": l} for n, l in R.exact]
        terms = []
        for key in sorted(self.terms, key=R.unpack):
            c = Fraction(self.terms[key])
            terms.append({"exp": list(R.unpack(key)), "num": str(c.numerator),
                          "den": str(c.denominator)})
        return json.dumps({"vars": vars_, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "MultiSeries":
        data = json.loads(text)
        trunc = [(v["name"], v["cap"]) for v in data["vars"] if "cap" in v]
        exact = [(v["name"], v["laurent"]) for v in data["vars"] if "cap" not in v]
        R = Ring(trunc, exact)
        return R.from_terms(
            (dict(zip(R.names, t["exp"])), Fraction(int(t["num"]), int(t["den"])))
            for t in data["terms"])

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = "*".join(f"{n}^{e}" if e != 1 else n for n, e in exps.items())
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _as_monomial(ring: Ring, m) -> tuple[int, object] | None:
    if isinstance(m, str):
        m = ring.gen(m)
    elif isinstance(m, Mapping):
        m = ring.monomial(**m)
    if not isinstance(m, MultiSeries):
        raise TypeError(f"expected a monomial, got {m!r}")
    if not m.terms:
        return None
    if len(m.terms) != 1:
        raise SeriesError("expected a single-term series")
    (k, c), = m.terms.items()
    return k, c


def pochhammer_factors(a, bases: Sequence, ring: Ring) -> list[tuple[int, object]]:
    """Packed keys and coefficients ``(k, c)`` of the factors ``(1 - c*m_k)`` of
    ``(a; b_1, ..., b_m)_inf`` that survive truncation.

    ``a`` and each base are monomials (single-term series, exponent dicts or
    variable names).  Every base must have positive truncated degree, which
    makes the number of factors below the caps finite.
    """
    R = ring
    am = _as_monomial(R, a)
    if am is None:
        return []
    bkeys = []
    for b in bases:
        bm = _as_monomial(R, b)
        if bm is None:
            continue  # a truncated-away base only contributes j = 0
        bk, bc = bm
        if bc != 1:
            raise SeriesError("pochhammer bases must be monic monomials")
        if not R.degree(bk):
            raise SeriesError("nonterminating-product: base of zero truncated degree")
        bkeys.append(bk)
    guard, gt, sh = R._guard, R._gt, R._shift
    factors: list[tuple[int, object]] = []

    def walk(key, i):
        if i == len(bkeys):
            factors.append((key, am[1]))
            return
        k = key
        while True:
            walk(k, i + 1)
            s = k + bkeys[i] + sh
            if s & guard:
                break
            k = s - gt

    walk(am[0], 0)
    return factors


def binomial_product(exponents: Mapping[tuple[int, object], int], into: MultiSeries) -> MultiSeries:
    """``into * prod (1 - c*m_k)**e`` over ``{(k, c): e}``; negative ``e`` needs ``deg m_k > 0``.

    Long products are summed in log form and exponentiated once.
    """
    R = into.ring
    items = [(f, e) for f, e in exponents.items() if e]
    if len(items) < 24 or any(not R.degree(k) for (k, _), _ in items):
        acc = into
        for (key, c), e in items:
            if e > 0:
                for _ in range(e):
                    acc = acc.mul_binomial(-c, key)
            else:
                for _ in range(-e):
                    acc = acc.div_binomial(c, key)
        return acc
    guard, gt, sh = R._guard, R._gt, R._shift
    log: dict = {}
    get = log.get
    for (key, c), e in items:
        # e * log(1 - c m) = -e * sum_j c^j m^j / j
        k, cj, j = key, c, 1
        step = key + sh
        while True:
            log[k] = get(k, 0) - _div(e * cj, j)
            s = k + step
            if s & guard:
                break
            k = s - gt
            cj *= c
            j += 1
    log = {k: _norm(v) for k, v in log.items() if v}
    R._check_exact(log)
    return into * MultiSeries(R, log).exp()


def pochhammer(a, bases: Sequence, power: int = 1, into: MultiSeries | None = None,
               ring: Ring | None = None) -> MultiSeries:
    """``(a; b_1, ..., b_m)_inf ** power``, multiplied into ``into`` if given.

    ``a`` and each base are monomials (single-term series, exponent dicts or
    variable names).  Every base must have positive truncated degree.
    """
    R = ring or (into.ring if into is not None else getattr(a, "ring", None))
    if R is None:
        raise SeriesError("pochhammer needs a ring")
    acc = into if into is not None else R.one()
    if power == 0:
        return acc
    ex: dict = {}
    for f in pochhammer_factors(a, bases, R):
        ex[f] = ex.get(f, 0) + power
    return binomial_product(ex, acc)


def eta_power(exponent, var: str, ring: Ring) -> MultiSeries:
    """``prod_{k>=1} (1 - var^k) ** exponent`` truncated in ``ring``.

    The coefficient of ``var**n`` in ``eta_power(-z)`` is the D'Arcais
    polynomial ``P_n(z)``.
    """
    base = pochhammer(ring.gen(var), [var], ring=ring)
    if isinstance(exponent, int):
        if exponent == 1:
            return base
        if exponent == -1:
            return pochhammer(ring.gen(var), [var], power=-1, ring=ring)
    return base.pow(exponent)
