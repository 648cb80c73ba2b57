"""Registry of partition identities with independent sum and product sides.

Every identity has a left-hand side computed by brute force over partitions
and a right-hand side built from infinite products, exponentials and
symbolic powers.  Both sides live in the same truncated ring and are
compared coefficient by coefficient.

>>> verify(VerificationConfig("NO", caps={"T": 6})).status
'PASS'
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Callable, Iterable, Mapping, Sequence

from .elliptic import (DEFAULT_POINT, DenominatorVanishes, ShiftedFrame, _theta_inv_q,
                       _theta_q, c_table, eno_frame, eno_rhs, f_omega_rn, f_omega_rn_pu,
                       random_points)
from .littlewood import r_core
from .partitions import (Partition, arm_legs, bf_stat, count_syt, enumerate_r_cores, is_r_core,
                         modular_length, partitions_of, partitions_up_to)
from .series import (Mismatch, MultiSeries, Ring, SeriesError, binomial_product, pochhammer,
                     pochhammer_factors)
from .weights import KINDS, RhoSpec, make_ring

__all__ = [
    "DOMAINS",
    "Comparison",
    "ConfigError",
    "Descriptor",
    "IdentityReport",
    "VerificationConfig",
    "bf_multiset",
    "core_class",
    "get",
    "registry",
    "sum_all",
    "sum_fixed_core",
    "verify",
]

DOMAINS = ("ALL_MOD_R", "BOTTOM_MOD_R", "RIGHT_MOD_R", "SQUARES_MOD_R", "ALL_SQUARES")

PASS, FAIL, CONSISTENT, ERROR = "PASS", "FAIL", "CONJECTURE-CONSISTENT", "ERROR"


class ConfigError(ValueError):
    """Bad identity id, parameter or cap."""


# ---------------------------------------------------------------------------
# partition sums
# ---------------------------------------------------------------------------

def _domain_key(lam, r: int, domain: str) -> tuple:
    """Sorted hooks (or ``(a, l)`` pairs for square domains) selected by ``domain``."""
    al = arm_legs(lam)
    if domain == "ALL_MOD_R":
        return tuple(sorted(a + l + 1 for _, _, a, l in al if (a + l + 1) % r == 0))
    if domain == "BOTTOM_MOD_R":
        return tuple(sorted(a + 1 for _, _, a, l in al if l == 0 and (a + 1) % r == 0))
    if domain == "RIGHT_MOD_R":
        return tuple(sorted(l + 1 for _, _, a, l in al if a == 0 and (l + 1) % r == 0))
    if domain == "SQUARES_MOD_R":
        return tuple(sorted((a, l) for _, _, a, l in al if (a + l + 1) % r == 0))
    if domain == "ALL_SQUARES":
        return tuple(sorted((a, l) for _, _, a, l in al))
    raise ConfigError(f"unknown hook domain {domain!r}")


def _weighted_sum(ring: Ring, lams: Iterable, monomial: Callable, key: Callable | None = None,
                  weight: Callable | None = None) -> MultiSeries:
    """``sum_lam monomial(lam) * weight(key(lam))``, one weight evaluation per distinct key."""
    groups: dict = {}
    for lam in lams:
        k = ring.pack(monomial(lam))
        if k is None:
            continue
        g = groups.setdefault(key(lam) if key else (), {})
        g[k] = g.get(k, 0) + 1
    total = ring.zero()
    for gk, mons in groups.items():
        s = MultiSeries(ring, mons)
        total = total + (s * weight(gk) if weight else s)
    return total


@lru_cache(maxsize=32)
def _core_classes(r: int, max_size: int) -> dict:
    """All partitions of size <= max_size grouped by r-core."""
    out: dict = {}
    for lam in partitions_up_to(max_size):
        c = r_core(lam, r)
        if (lam.size - c.size) % r:
            raise AssertionError(f"{lam} and its {r}-core differ by a non-multiple of r")
        out.setdefault(c, []).append(lam)
    return out


def core_class(omega, r: int, n_cap: int) -> list[Partition]:
    """Partitions with r-core ``omega`` and ``|lam| <= |omega| + r*n_cap``."""
    omega = Partition(omega)
    if not is_r_core(omega, r):
        raise ConfigError(f"not-an-r-core: {tuple(omega)} is not a {r}-core")
    return _core_classes(r, omega.size + r * n_cap).get(omega, [])


def _rho_ring(rho: RhoSpec | None, caps: Mapping[str, int], squares: bool = False,
              extra_exact=()) -> Ring:
    tr = dict(caps)
    exact = list(extra_exact)
    if rho is not None:
        tr.update(rho.truncated_vars(caps, squares))
        exact += [e for e in rho.exact_vars(squares) if e[0] not in dict(exact)]
    return make_ring(tr, exact)


def sum_all(weight: RhoSpec | None, r: int, caps: Mapping[str, int], domain: str = "ALL_MOD_R",
            track_s: bool = True, stat: Callable | None = None, ring: Ring | None = None) -> MultiSeries:
    """``sum_lam T^|lam| S^|H_r(lam)| z^stat(lam) prod_domain rho`` over ``|lam| <= caps['T']``.

    ``stat`` maps a partition to an extra exponent on ``z``.  With
    ``track_s=False`` the ``S`` power is dropped.
    """
    N = caps["T"]
    squares = domain in ("SQUARES_MOD_R", "ALL_SQUARES")
    if ring is None:
        c = {"T": N}
        if track_s:
            c["S"] = caps.get("S", N // r)
        ring = _rho_ring(weight, {**caps, **c}, squares, [("z", False)] if stat else ())

    def mono(lam):
        e = {"T": lam.size}
        if track_s:
            e["S"] = sum(1 for _, _, a, l in arm_legs(lam) if (a + l + 1) % r == 0)
        if stat:
            e["z"] = stat(lam)
        return e

    w = None
    if weight is not None:
        w = lambda k: weight.product(ring, k, squares)  # noqa: E731
    return _weighted_sum(ring, partitions_up_to(N), mono,
                         (lambda lam: _domain_key(lam, r, domain)) if weight else None, w)


def sum_fixed_core(omega, weight: RhoSpec | None, r: int, caps: Mapping[str, int],
                   hook_domain: str = "ALL_MOD_R", stat: Callable | None = None,
                   ring: Ring | None = None) -> MultiSeries:
    """``sum_{core(lam)=omega} T^((|lam|-|omega|)/r) z^stat(lam) prod_domain rho``."""
    omega = Partition(omega)
    N = caps["T"]
    squares = hook_domain in ("SQUARES_MOD_R", "ALL_SQUARES")
    if ring is None:
        ring = _rho_ring(weight, {**caps, "T": N}, squares, [("z", False)] if stat else ())
    base = omega.size

    def mono(lam):
        e = {"T": (lam.size - base) // r}
        if stat:
            e["z"] = stat(lam)
        return e

    w = None
    if weight is not None:
        w = lambda k: weight.product(ring, k, squares)  # noqa: E731
    return _weighted_sum(ring, core_class(omega, r, N), mono,
                         (lambda lam: _domain_key(lam, r, hook_domain)) if weight else None, w)


def bf_multiset(n: int, alpha: int, beta: int, omega=None) -> Counter:
    """Multiset of ``BF_{alpha,beta}(lam)`` over ``lam |- n`` (with (alpha+beta)-core omega).

    >>> sorted(bf_multiset(9, 2, 1, (4, 2)).elements())
    [0, 0, 1]
    """
    r = alpha + beta
    lams = partitions_of(n)
    if omega is not None:
        omega = Partition(omega)
        if not is_r_core(omega, r):
            raise ConfigError(f"not-a-core: {tuple(omega)} is not a {r}-core")
        lams = [lam for lam in lams if r_core(lam, r) == omega]
    return Counter(bf_stat(lam, alpha, beta) for lam in lams)


# ---------------------------------------------------------------------------
# product-side helpers
# ---------------------------------------------------------------------------

def _poch(ring: Ring, a: Mapping[str, int], bases: Sequence[Mapping[str, int]], power: int = 1,
          into: MultiSeries | None = None) -> MultiSeries:
    return pochhammer(dict(a), [dict(b) for b in bases], power, into=into, ring=ring)


def _eta(ring: Ring, m: Mapping[str, int], power=1, into: MultiSeries | None = None) -> MultiSeries:
    """``(m; m)_inf ** power``; ``power`` may be a rational or an exact-only series."""
    if isinstance(power, int):
        return _poch(ring, m, [m], power, into)
    out = _poch(ring, m, [m]).pow(power)
    return out if into is None else into * out


def _scaled(m: Mapping[str, int], k: int) -> dict:
    return {v: e * k for v, e in m.items()}


def _cores_prefactor(ring: Ring, r: int) -> MultiSeries:
    """``(T^r; T^r)^r / (T; T)``, the generating function of r-cores."""
    return _eta(ring, {"T": r}, r, _eta(ring, {"T": 1}, -1))


def _binom(ring: Ring, factors, into: MultiSeries) -> MultiSeries:
    return RhoSpec._binomials(ring, factors, into)


# ---------------------------------------------------------------------------
# configuration and reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationConfig:
    """What to verify and how far.  Unset fields take the descriptor defaults."""

    identity: str
    r: int | None = None
    core: tuple | None = None
    caps: dict = field(default_factory=dict)
    seed: int = 0
    rho: str | None = None
    alpha: int | None = None
    beta: int | None = None
    points: int | None = None


@dataclass
class Comparison:
    label: str
    lhs: MultiSeries
    rhs: MultiSeries
    frame: ShiftedFrame | None = None

    def mismatch(self) -> Mismatch | None:
        mm = self.lhs.compare(self.rhs)
        return self.frame.unshift_mismatch(mm) if self.frame else mm


@dataclass
class IdentityReport:
    identity: str
    params: dict
    status: str
    first_mismatch: Mismatch | None = None
    elapsed_ms: int = 0

    def as_json(self) -> dict:
        mm = self.first_mismatch
        return {
            "identity": self.identity,
            "params": self.params,
            "status": self.status,
            "first_mismatch": None if mm is None else {
                "monomial": mm.monomial, "lhs": str(mm.lhs), "rhs": str(mm.rhs)},
            "elapsed_ms": self.elapsed_ms,
        }

    @property
    def exit_code(self) -> int:
        if self.status in (PASS, CONSISTENT):
            return 0
        if self.status == ERROR:
            return 3
        return 2 if get(self.identity).conjecture else 1


@dataclass
class _Ctx:
    """Resolved parameters handed to a builder."""

    r: int
    caps: dict
    cores: list
    rho: RhoSpec | None
    alpha: int | None
    beta: int | None
    points: list
    seed: int


@dataclass(frozen=True)
class Descriptor:
    id: str
    title: str
    builder: Callable = field(repr=False)
    caps: Mapping[str, int] = field(default_factory=dict)
    r: int | None = None              # default r, None when r plays no role
    uses_core: bool = False
    rho: str | None = None            # default weight kind for generic-weight identities
    bf: tuple | None = None           # default (alpha, beta)
    conjecture: bool = False
    points: int | None = None

    def parameters(self) -> list[str]:
        out = []
        if self.r is not None:
            out.append("r")
        if self.uses_core:
            out.append("core")
        if self.rho:
            out.append("rho")
        if self.bf:
            out += ["alpha", "beta"]
        if self.points:
            out += ["seed", "points"]
        return out


_REGISTRY: dict[str, Descriptor] = {}


def _register(id_, title, caps, r=None, core=False, rho=None, bf=None, conjecture=False, points=None):
    def deco(fn):
        _REGISTRY[id_] = Descriptor(id_, title, fn, dict(caps), r, core, rho, bf, conjecture, points)
        return fn
    return deco


def registry() -> list[Descriptor]:
    return list(_REGISTRY.values())


def get(identity: str) -> Descriptor:
    try:
        return _REGISTRY[identity]
    except KeyError:
        raise ConfigError(f"unknown identity {identity!r}") from None


# ---------------------------------------------------------------------------
# identities: plain partition generating functions
# ---------------------------------------------------------------------------

def _plain_ring(ctx, *names, z=False):
    caps = {n: ctx.caps[n] for n in names}
    return make_ring(caps, [("z", False)] if z else ())


def _s_cap(ctx):
    return ctx.caps.get("S", ctx.caps["T"] // ctx.r)


@_register("GF_PART", "partitions by length", {"T": 12})
def _gf_part(ctx):
    R = _plain_ring(ctx, "T", z=True)
    lhs = _weighted_sum(R, partitions_up_to(ctx.caps["T"]), lambda lam: {"T": lam.size, "z": len(lam)})
    rhs = _poch(R, {"z": 1, "T": 1}, [{"T": 1}], -1)
    return [Comparison("sum", lhs, rhs)]


@_register("GF_RKERNELS", "r-kernels by largest part", {"T": 12}, r=2)
def _gf_rkernels(ctx):
    r, R = ctx.r, _plain_ring(ctx, "T", z=True)
    lams = (lam for lam in partitions_up_to(ctx.caps["T"]) if _is_kernel(lam, r))
    lhs = _weighted_sum(R, lams, lambda lam: {"T": lam.size, "z": lam[0] if lam else 0})
    rhs = _poch(R, {"z": r, "T": r}, [{"T": r}], 1, _poch(R, {"z": 1, "T": 1}, [{"T": 1}], -1))
    return [Comparison("sum", lhs, rhs)]


def _is_kernel(lam, r):
    parts = tuple(lam) + (0,)
    return all(parts[i] - parts[i + 1] < r for i in range(len(lam)))


@_register("GF_FIXED_CORE", "partitions with a fixed r-core", {"T": 6}, r=2, core=True)
def _gf_fixed_core(ctx):
    r, N = ctx.r, ctx.caps["T"]
    out = []
    for omega in ctx.cores:
        R = make_ring({"T": omega.size + r * N})
        lhs = _weighted_sum(R, core_class(omega, r, N), lambda lam: {"T": lam.size})
        rhs = _eta(R, {"T": r}, -r, R.monomial(T=omega.size))
        out.append(Comparison(f"omega={list(omega)}", lhs, rhs))
    return out


@_register("GF_CORES", "r-cores", {"T": 14}, r=2)
def _gf_cores(ctx):
    r, R = ctx.r, _plain_ring(ctx, "T")
    lams = (lam for lam in partitions_up_to(ctx.caps["T"]) if is_r_core(lam, r))
    lhs = _weighted_sum(R, lams, lambda lam: {"T": lam.size})
    return [Comparison("sum", lhs, _cores_prefactor(R, r))]


@_register("GF_KERNELS_FIXED_CORE", "r-kernels with a fixed r-core", {"T": 6}, r=2, core=True)
def _gf_kernels_fixed_core(ctx):
    r, N = ctx.r, ctx.caps["T"]
    out = []
    for omega in ctx.cores:
        R = make_ring({"T": omega.size + r * N})
        lams = (lam for lam in core_class(omega, r, N) if _is_kernel(lam, r))
        lhs = _weighted_sum(R, lams, lambda lam: {"T": lam.size})
        rhs = _eta(R, {"T": r}, 1 - r, R.monomial(T=omega.size))
        out.append(Comparison(f"omega={list(omega)}", lhs, rhs))
    return out


# ---------------------------------------------------------------------------
# hook products with rational weights
# ---------------------------------------------------------------------------

def _exp_series(ring: Ring, terms: Iterable[tuple[Mapping[str, int], object]]) -> MultiSeries:
    return ring.from_terms(terms).exp()


@_register("FRT_SQUARE", "sum of squared standard tableau counts", {"T": 10})
def _frt_square(ctx):
    N = ctx.caps["T"]
    R = _plain_ring(ctx, "T")
    squares = [sum(count_syt(lam) ** 2 for lam in partitions_of(n)) for n in range(N + 1)]
    lhs = R.from_terms(({"T": n}, Fraction(s, factorial(n) ** 2)) for n, s in enumerate(squares))
    counts = R.from_terms(({"T": n}, s) for n, s in enumerate(squares))
    return [Comparison("exponential", lhs, _exp_series(R, [({"T": 1}, 1)])),
            Comparison("factorials", counts, R.from_terms(({"T": n}, factorial(n)) for n in range(N + 1)))]


@_register("HOOK_EXP", "inverse squared hook products", {"T": 10})
def _hook_exp(ctx):
    R = _plain_ring(ctx, "T")
    lhs = sum_all(RhoSpec("INV_H_SQ"), 1, ctx.caps, track_s=False, ring=R)
    return [Comparison("sum", lhs, _exp_series(R, [({"T": 1}, 1)]))]


@_register("HOOK_EXP_MOD", "inverse squared r-divisible hooks", {"T": 10}, r=2)
def _hook_exp_mod(ctx):
    r = ctx.r
    R = make_ring({"T": ctx.caps["T"], "S": _s_cap(ctx)})
    lhs = sum_all(RhoSpec("INV_H_SQ"), r, ctx.caps, ring=R)
    rhs = _exp_series(R, [({"S": 1, "T": r}, Fraction(1, r))]) * _cores_prefactor(R, r)
    return [Comparison("sum", lhs, rhs)]


@_register("INVOLUTION", "involutions via inverse hook products", {"T": 10})
def _involution(ctx):
    R = _plain_ring(ctx, "T")
    lhs = _weighted_sum(R, partitions_up_to(ctx.caps["T"]), lambda lam: {"T": lam.size},
                        lambda lam: _domain_key(lam, 1, "ALL_MOD_R"),
                        lambda k: R.scalar(Fraction(1, prod(k))))
    rhs = _exp_series(R, [({"T": 1}, 1), ({"T": 2}, Fraction(1, 2))])
    return [Comparison("sum", lhs, rhs)]


@_register("NO", "hook products 1 - z/h^2", {"T": 10})
def _no(ctx):
    R = make_ring({"T": ctx.caps["T"]}, [("z", False)])
    lhs = sum_all(RhoSpec("NO"), 1, ctx.caps, track_s=False, ring=R)
    rhs = _eta(R, {"T": 1}, R.gen("z") - 1)
    return [Comparison("sum", lhs, rhs)]


@_register("NO_MOD", "r-divisible hook products 1 - z/h^2", {"T": 9, "S": 3}, r=2)
def _no_mod(ctx):
    r = ctx.r
    R = make_ring({"T": ctx.caps["T"], "S": _s_cap(ctx)}, [("z", False)])
    lhs = sum_all(RhoSpec("NO"), r, ctx.caps, ring=R)
    expo = R.scalar(r) - R.gen("z") * Fraction(1, r)
    rhs = _cores_prefactor(R, r) * _eta(R, {"S": 1, "T": r}, -expo)
    return [Comparison("sum", lhs, rhs)]


@_register("EXP_BOTTOM", "bottom hooks z/h", {"T": 10})
def _exp_bottom(ctx):
    N = ctx.caps["T"]
    R = make_ring({"T": N}, [("z", False)])
    lhs = sum_all(RhoSpec("Z_OVER_H"), 1, ctx.caps, "BOTTOM_MOD_R", track_s=False, ring=R)
    rhs = _exp_series(R, [({"z": 1, "T": k}, 1) for k in range(1, N + 1)])
    return [Comparison("sum", lhs, rhs)]


def _inv_hook_weight(ring):
    return lambda k: ring.scalar(Fraction(1, prod(k)))


@_register("EXP_BOTTOM_MOD_A", "fixed core, z^l_r over r-divisible leg hooks", {"T": 6}, r=2, core=True)
def _exp_bottom_mod_a(ctx):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N}, [("z", False)])
    rhs = _eta(R, {"T": 1}, 1 - r, _exp_series(R, [({"z": 1, "T": k}, Fraction(1, r))
                                                  for k in range(1, N + 1)]))
    out = []
    for omega in ctx.cores:
        base = omega.size
        lhs = _weighted_sum(R, core_class(omega, r, N),
                            lambda lam: {"T": (lam.size - base) // r, "z": modular_length(lam, r)},
                            lambda lam: _domain_key(lam, r, "RIGHT_MOD_R"), _inv_hook_weight(R))
        out.append(Comparison(f"omega={list(omega)}", lhs, rhs))
    return out


@_register("EXP_BOTTOM_MOD_B", "z^l_r over r-divisible leg hooks, all cores", {"T": 10}, r=2)
def _exp_bottom_mod_b(ctx):
    r, N = ctx.r, ctx.caps["T"]
    sc = _s_cap(ctx)
    R = make_ring({"T": N, "S": sc}, [("z", False)])
    lhs = _weighted_sum(R, partitions_up_to(N), _mono_s(r, lambda lam: modular_length(lam, r)),
                        lambda lam: _domain_key(lam, r, "RIGHT_MOD_R"), _inv_hook_weight(R))
    ex = _exp_series(R, [({"z": 1, "S": k, "T": k * r}, Fraction(1, r)) for k in range(1, sc + 1)])
    rhs = _cores_prefactor(R, r) * _eta(R, {"S": 1, "T": r}, 1 - r, ex)
    return [Comparison("sum", lhs, rhs)]


def _mono_s(r, stat=None):
    def mono(lam):
        e = {"T": lam.size, "S": sum(1 for _, _, a, l in arm_legs(lam) if (a + l + 1) % r == 0)}
        if stat:
            e["z"] = stat(lam)
        return e
    return mono


def _n_bottom(r):
    return lambda lam: sum(1 for _, _, a, l in arm_legs(lam) if l == 0 and (a + 1) % r == 0)


@_register("APP_CONST_A", "fixed core, z^|bottom r-divisible hooks|", {"T": 6}, r=2, core=True)
def _app_const_a(ctx):
    return _app_a(ctx, _n_bottom(ctx.r))


@_register("APP_LEN_A", "fixed core, z^l_r", {"T": 6}, r=2, core=True)
def _app_len_a(ctx):
    return _app_a(ctx, lambda lam: modular_length(lam, ctx.r))


def _app_a(ctx, stat):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N}, [("z", False)])
    rhs = _eta(R, {"T": 1}, 1 - r, _poch(R, {"z": 1, "T": 1}, [{"T": 1}], -1))
    out = []
    for omega in ctx.cores:
        base = omega.size
        lhs = _weighted_sum(R, core_class(omega, r, N),
                            lambda lam: {"T": (lam.size - base) // r, "z": stat(lam)})
        out.append(Comparison(f"omega={list(omega)}", lhs, rhs))
    return out


@_register("APP_CONST_B", "z^|bottom r-divisible hooks|, all cores", {"T": 10}, r=2)
def _app_const_b(ctx):
    return _app_b(ctx, _n_bottom(ctx.r))


@_register("APP_LEN_B", "z^l_r, all cores", {"T": 10}, r=2)
def _app_len_b(ctx):
    return _app_b(ctx, lambda lam: modular_length(lam, ctx.r))


def _app_b(ctx, stat):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N, "S": _s_cap(ctx)}, [("z", False)])
    lhs = _weighted_sum(R, partitions_up_to(N), _mono_s(r, stat))
    rhs = _bf_b_rhs(R, r)
    return [Comparison("sum", lhs, rhs)]


def _bf_b_rhs(R, r):
    """``(T^r;T^r)^r / ((T;T) (zST^r;ST^r) (ST^r;ST^r)^(r-1))``."""
    st = {"S": 1, "T": r}
    acc = _poch(R, {"z": 1, **st}, [st], -1, _cores_prefactor(R, r))
    return _eta(R, st, 1 - r, acc)


# ---------------------------------------------------------------------------
# q-weighted identities
# ---------------------------------------------------------------------------

def _q_hook_weight(ring, var="q", u=1):
    """``prod (1 - u q^h) / (1 - q^h)`` over a hook tuple."""
    def w(k):
        facs = []
        for h in k:
            facs += [({"u": u, var: h}, 1), ({var: h}, -1)]
        return _binom(ring, facs, ring.one())
    return w


@_register("Q_BOTTOM", "bottom hooks z(1 - u q^h)/(1 - q^h)", {"T": 8, "q": 8})
def _q_bottom(ctx):
    N = ctx.caps["T"]
    R = make_ring({"T": N, "q": ctx.caps["q"]}, [("z", False), ("u", False)])
    lhs = sum_all(RhoSpec("Q_WEIGHT"), 1, ctx.caps, "BOTTOM_MOD_R", track_s=False, ring=R)
    rhs = _poch(R, {"z": 1, "T": 1}, [{"q": 1}, {"T": 1}], -1,
                _poch(R, {"u": 1, "z": 1, "q": 1, "T": 1}, [{"q": 1}, {"T": 1}]))
    return [Comparison("sum", lhs, rhs)]


@_register("AMDEBERHAN_T", "t^|bottom hooks| prod (1 - z/h)", {"T": 10})
def _amdeberhan_t(ctx):
    N = ctx.caps["T"]
    R = make_ring({"T": N}, [("z", False), ("t", False)])
    lhs = _weighted_sum(R, partitions_up_to(N),
                        lambda lam: {"T": lam.size, "t": len(_domain_key(lam, 1, "BOTTOM_MOD_R"))},
                        lambda lam: _domain_key(lam, 1, "BOTTOM_MOD_R"),
                        lambda k: prod((1 - R.gen("z") * Fraction(1, h) for h in k), start=R.one()))
    rhs = _poch(R, {"t": 1, "T": 1}, [{"T": 1}]).pow(R.gen("z") - 1)
    return [Comparison("sum", lhs, rhs)]


@_register("UNIFY_A", "fixed core, z^l_r prod (1 - u q^h)/(1 - q^h) over leg hooks",
           {"T": 6, "q": 6}, r=2, core=True)
def _unify_a(ctx):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N, "q": ctx.caps["q"]}, [("z", False), ("u", False)])
    rhs = _poch(R, {"u": 1, "z": 1, "q": r, "T": 1}, [{"q": r}, {"T": 1}])
    rhs = _poch(R, {"z": 1, "T": 1}, [{"q": r}, {"T": 1}], -1, _eta(R, {"T": 1}, 1 - r, rhs))
    out = []
    for omega in ctx.cores:
        base = omega.size
        lhs = _weighted_sum(R, core_class(omega, r, N),
                            lambda lam: {"T": (lam.size - base) // r, "z": modular_length(lam, r)},
                            lambda lam: _domain_key(lam, r, "RIGHT_MOD_R"), _q_hook_weight(R))
        out.append(Comparison(f"omega={list(omega)}", lhs, rhs))
    return out


@_register("UNIFY_B", "z^l_r prod (1 - u q^h)/(1 - q^h) over leg hooks, all cores",
           {"T": 8, "q": 6}, r=2)
def _unify_b(ctx):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N, "S": _s_cap(ctx), "q": ctx.caps["q"]}, [("z", False), ("u", False)])
    lhs = _weighted_sum(R, partitions_up_to(N), _mono_s(r, lambda lam: modular_length(lam, r)),
                        lambda lam: _domain_key(lam, r, "RIGHT_MOD_R"), _q_hook_weight(R))
    st = {"S": 1, "T": r}
    rhs = _poch(R, {"u": 1, "z": 1, "q": r, **st}, [{"q": r}, st], 1, _cores_prefactor(R, r))
    rhs = _poch(R, {"z": 1, **st}, [{"q": r}, st], -1, _eta(R, st, 1 - r, rhs))
    return [Comparison("sum", lhs, rhs)]


@_register("QT_T0_PAIR", "fixed core, arm-only and leg-only q,t weights", {"T": 6, "q": 6, "t": 6},
           r=2, core=True)
def _qt_t0_pair(ctx):
    r, N = ctx.r, ctx.caps["T"]
    out = []
    for var, sel, u in (("q", 0, 1), ("t", 1, -1)):
        R = make_ring({"T": N, var: ctx.caps[var]}, [("u", True)])
        rhs = _poch(R, {"u": u, var: r, "T": 1}, [{var: r}, {"T": 1}], 1, _eta(R, {"T": 1}, -r))
        rhs = _poch(R, {var: r, "T": 1}, [{var: r}, {"T": 1}], -1, rhs)

        def key(lam, sel=sel):
            return tuple(sorted(al[sel] + 1 for al in _domain_key(lam, r, "SQUARES_MOD_R")
                                if al[1 - sel] == 0))

        for omega in ctx.cores:
            base = omega.size
            lhs = _weighted_sum(R, core_class(omega, r, N), lambda lam: {"T": (lam.size - base) // r},
                                key, _q_hook_weight(R, var, u))
            label = "arm" if var == "q" else "leg"
            out.append(Comparison(f"{label} omega={list(omega)}", lhs, rhs))
    return out


def _qno_mod_rhs(R, r, a, power):
    """``((u q^r a, u^-1 q^r a; q^r, q^r, a) / (a, q^2r a; q^r, q^r, a)) ** power``."""
    bases = [{"q": r}, {"q": r}, a]
    acc = R.one()
    for num, e in (({"u": 1, "q": r}, power), ({"u": -1, "q": r}, power),
                   ({}, -power), ({"q": 2 * r}, -power)):
        acc = _poch(R, {**num, **a}, bases, e, acc)
    return acc


@_register("QNO_MOD", "fixed core, q-analogue of the r-divisible hook formula", {"T": 5, "q": 8},
           r=2, core=True)
def _qno_mod(ctx):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N, "q": ctx.caps["q"]}, [("u", True)])
    rhs = _qno_mod_rhs(R, r, {"T": 1}, r)
    rho = RhoSpec("QT_WEIGHT")
    out = []
    for omega in ctx.cores:
        lhs = sum_fixed_core(omega, rho, r, ctx.caps, "ALL_MOD_R", ring=R)
        out.append(Comparison(f"omega={list(omega)}", lhs, rhs))
    return out


@_register("QT_NO", "q,t arm/leg square weights", {"T": 6, "q": 6, "t": 6})
def _qt_no(ctx):
    N = ctx.caps["T"]
    R = make_ring({"T": N, "q": ctx.caps["q"], "t": ctx.caps["t"]}, [("u", True)])
    lhs = sum_all(RhoSpec("QT_WEIGHT"), 1, ctx.caps, "ALL_SQUARES", track_s=False, ring=R)
    qtT = [{"q": 1}, {"t": 1}, {"T": 1}]
    rhs = R.one()
    for a, e in (({"u": 1, "q": 1, "T": 1}, 1), ({"u": -1, "t": 1, "T": 1}, 1),
                 ({"T": 1}, -1), ({"q": 1, "t": 1, "T": 1}, -1)):
        rhs = _poch(R, a, qtT, e, rhs)
    return [Comparison("sum", lhs, rhs)]


def _conj_rhs_pairs(R, r, a, q_cap, t_cap):
    """First product form: pairs (i, j) with i + j = 1 mod r."""
    acc = R.one()
    for i in range(1, q_cap + 2):
        for j in range(1, t_cap + 2):
            if (i + j - 1) % r:
                continue
            for num, e in (({"u": 1, "q": i, "t": j - 1}, 1), ({"u": -1, "q": i - 1, "t": j}, 1),
                           ({"q": i, "t": j - 1}, -1), ({"q": i - 1, "t": j}, -1)):
                acc = _poch(R, {**num, **a}, [a], e, acc)
    return acc


def _conj_rhs_blocks(R, r, a):
    """Second product form: r blocks with bases q^r, t^r, a."""
    acc = R.one()
    bases = [{"q": r}, {"t": r}, a]
    for i in range(1, r + 1):
        for num, e in (({"u": 1, "q": i, "t": r - i}, 1), ({"u": -1, "q": r - i, "t": i}, 1),
                       ({"q": i, "t": r - i}, -1), ({"q": r - i, "t": i}, -1)):
            acc = _poch(R, {**num, **a}, bases, e, acc)
    return acc


@_register("CONJ_QT_MOD", "modular q,t square weights, all cores", {"T": 6, "q": 5, "t": 5},
           r=2, conjecture=True)
def _conj_qt_mod(ctx):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N, "S": _s_cap(ctx), "q": ctx.caps["q"], "t": ctx.caps["t"]}, [("u", True)])
    lhs = sum_all(RhoSpec("QT_WEIGHT"), r, ctx.caps, "SQUARES_MOD_R", ring=R)
    st = {"S": 1, "T": r}
    pre = _eta(R, st, -r, _cores_prefactor(R, r))
    rhs1 = pre * _conj_rhs_pairs(R, r, st, ctx.caps["q"], ctx.caps["t"])
    rhs2 = pre * _conj_rhs_blocks(R, r, st)
    return [Comparison("product forms agree", rhs1, rhs2),
            Comparison("sum = pair product", lhs, rhs1),
            Comparison("sum = block product", lhs, rhs2)]


@_register("CONJ_QT_MOD_CORE", "fixed core, modular q,t square weights", {"T": 5, "q": 5, "t": 5},
           r=2, core=True, conjecture=True)
def _conj_qt_mod_core(ctx):
    r, N = ctx.r, ctx.caps["T"]
    R = make_ring({"T": N, "q": ctx.caps["q"], "t": ctx.caps["t"]}, [("u", True)])
    a = {"T": 1}
    pre = _eta(R, a, -r)
    rhs1 = pre * _conj_rhs_pairs(R, r, a, ctx.caps["q"], ctx.caps["t"])
    rhs2 = pre * _conj_rhs_blocks(R, r, a)
    out = [Comparison("product forms agree", rhs1, rhs2)]
    rho = RhoSpec("QT_WEIGHT")
    for omega in ctx.cores:
        lhs = sum_fixed_core(omega, rho, r, ctx.caps, "SQUARES_MOD_R", ring=R)
        out.append(Comparison(f"omega={list(omega)} pair product", lhs, rhs1))
        out.append(Comparison(f"omega={list(omega)} block product", lhs, rhs2))
    return out


# ---------------------------------------------------------------------------
# generic-weight multiplication theorems
# ---------------------------------------------------------------------------

def _f_r(rho: RhoSpec, r: int, ring: Ring, bottom: bool) -> MultiSeries:
    """``sum_nu T^|nu| prod rho(r h)`` over all (or bottom) hooks of nu."""
    dom = "BOTTOM_MOD_R" if bottom else "ALL_MOD_R"
    return _weighted_sum(ring, partitions_up_to(ring.caps["T"]), lambda lam: {"T": lam.size},
                         lambda lam: tuple(r * h for h in _domain_key(lam, 1, dom)),
                         lambda k: rho.product(ring, k))


def _generic_rings(ctx, with_s: bool):
    """Big ring (T, S, weight vars) and the ring for f_r (T only up to T//r)."""
    N, r, rho = ctx.caps["T"], ctx.r, ctx.rho
    wcaps = dict(ctx.caps)
    big = {"T": N}
    if with_s:
        big["S"] = _s_cap(ctx)
    big.update(rho.truncated_vars(wcaps))
    small = dict(big, T=N // r if with_s else N)
    small.pop("S", None)
    return make_ring(big, rho.exact_vars()), make_ring(small, rho.exact_vars())


@_register("HANJI_MULT", "multiplication theorem for r-divisible hooks", {"T": 6}, r=2, rho="NO")
def _hanji_mult(ctx):
    r, rho = ctx.r, ctx.rho
    R, Rs = _generic_rings(ctx, True)
    lhs = sum_all(rho, r, ctx.caps, "ALL_MOD_R", ring=R)
    f = _f_r(rho, r, Rs, False).substitute("T", {"S": 1, "T": r}, ring=R)
    rhs = _cores_prefactor(R, r) * f.pow(r)
    return [Comparison("sum", lhs, rhs)]


@_register("HANJI_MOD", "fixed-core multiplication theorem for r-divisible hooks", {"T": 6},
           r=2, core=True, rho="NO")
def _hanji_mod(ctx):
    r, rho = ctx.r, ctx.rho
    R, _ = _generic_rings(ctx, False)
    rhs = _f_r(rho, r, R, False).pow(r)
    return [Comparison(f"omega={list(omega)}", sum_fixed_core(omega, rho, r, ctx.caps, "ALL_MOD_R", ring=R),
                       rhs) for omega in ctx.cores]


@_register("MULT_NEW", "fixed-core multiplication theorem for bottom hooks", {"T": 6},
           r=2, core=True, rho="NO")
def _mult_new(ctx):
    r, rho = ctx.r, ctx.rho
    R, _ = _generic_rings(ctx, False)
    rhs = _eta(R, {"T": 1}, 1 - r, _f_r(rho, r, R, True))
    return [Comparison(f"omega={list(omega)}",
                       sum_fixed_core(omega, rho, r, ctx.caps, "BOTTOM_MOD_R", ring=R), rhs)
            for omega in ctx.cores]


@_register("MULT_NEW2", "multiplication theorem for bottom hooks, all cores", {"T": 6}, r=2, rho="NO")
def _mult_new2(ctx):
    r, rho = ctx.r, ctx.rho
    R, Rs = _generic_rings(ctx, True)
    lhs = sum_all(rho, r, ctx.caps, "BOTTOM_MOD_R", ring=R)
    f = _f_r(rho, r, Rs, True).substitute("T", {"S": 1, "T": r}, ring=R)
    rhs = _eta(R, {"S": 1, "T": r}, 1 - r, _cores_prefactor(R, r) * f)
    return [Comparison("sum", lhs, rhs)]


# ---------------------------------------------------------------------------
# BF statistic
# ---------------------------------------------------------------------------

def _bf_r(ctx):
    return ctx.alpha + ctx.beta


@_register("BF_GF", "generating function of the BF statistic", {"T": 12}, bf=(2, 1))
def _bf_gf(ctx):
    a, b = ctx.alpha, ctx.beta
    r = a + b
    R = _plain_ring(ctx, "T", z=True)
    lhs = _weighted_sum(R, partitions_up_to(ctx.caps["T"]),
                        lambda lam: {"T": lam.size, "z": bf_stat(lam, a, b)})
    rhs = _eta(R, {"T": r}, 1, _eta(R, {"T": 1}, -1))
    rhs = _poch(R, {"z": 1, "T": r}, [{"T": r}], -1, rhs)
    return [Comparison("sum", lhs, rhs)]


@_register("BF_FIXED_A", "fixed core, BF statistic", {"T": 4}, core=True, bf=(2, 1))
def _bf_fixed_a(ctx):
    a, b = ctx.alpha, ctx.beta
    r, N = a + b, ctx.caps["T"]
    R = make_ring({"T": N}, [("z", False)])
    rhs = _eta(R, {"T": 1}, 1 - r, _poch(R, {"z": 1, "T": 1}, [{"T": 1}], -1))
    out = []
    for omega in ctx.cores:
        base = omega.size
        lhs = _weighted_sum(R, core_class(omega, r, N),
                            lambda lam: {"T": (lam.size - base) // r, "z": bf_stat(lam, a, b)})
        out.append(Comparison(f"omega={list(omega)}", lhs, rhs))
    return out


@_register("BF_FIXED_B", "BF statistic with S tracking r-divisible hooks", {"T": 12}, bf=(2, 1))
def _bf_fixed_b(ctx):
    a, b = ctx.alpha, ctx.beta
    r = a + b
    R = make_ring({"T": ctx.caps["T"], "S": ctx.caps.get("S", ctx.caps["T"] // r)}, [("z", False)])
    lhs = _weighted_sum(R, partitions_up_to(ctx.caps["T"]), _mono_s(r, lambda lam: bf_stat(lam, a, b)))
    return [Comparison("sum", lhs, _bf_b_rhs(R, r))]


# ---------------------------------------------------------------------------
# elliptic identities
# ---------------------------------------------------------------------------

@_register("ENO", "elliptic arm/leg square weights", {"T": 4, "p": 1, "q": 4, "t": 4})
def _eno(ctx):
    F = eno_frame(ctx.caps)
    R = F.ring
    cache: dict = {}

    def sq(a, l):
        w = cache.get((a, l))
        if w is None:
            w = F.theta(u=1, q=a + 1, t=l) * F.theta(u=-1, q=a, t=l + 1)
            w = w * (F.theta(q=a + 1, t=l) * F.theta(q=a, t=l + 1)).inverse()
            cache[(a, l)] = w
        return w

    lhs = _weighted_sum(R, partitions_up_to(ctx.caps["T"]), lambda lam: {"T": lam.size},
                        lambda lam: _domain_key(lam, 1, "ALL_SQUARES"),
                        lambda k: prod((sq(a, l) for a, l in k), start=R.one()))
    return [Comparison("sum", lhs, eno_rhs(ctx.caps, frame=F), F)]


@_register("PQ_NO", "elliptic r-divisible hooks with t = q", {"T": 5, "p": 1, "q": 5}, r=1)
def _pq_no(ctx):
    r, N, P = ctx.r, ctx.caps["T"], ctx.caps["p"]
    sc = _s_cap(ctx)
    F = ShiftedFrame(P, {"T": N, "S": sc, "q": ctx.caps["q"]}, shift=max(N, 1), shifted=("q",))
    R = F.ring
    cache: dict = {}

    def hook(h):
        w = cache.get(h)
        if w is None:
            w = F.theta(u=1, q=h) * F.theta(u=-1, q=h) * F.theta(q=h).inverse() ** 2
            cache[h] = w
        return w

    lhs = _weighted_sum(R, partitions_up_to(N), lambda lam: F.exps(**_mono_s(r)(lam)),
                        lambda lam: _domain_key(lam, r, "ALL_MOD_R"),
                        lambda k: prod((hook(h) for h in k), start=R.one()))
    st = {"S": 1, "T": r}
    rhs = _cores_prefactor(R, r) * _qno_mod_rhs(R, r, st, r)
    ex: dict = {}
    qr = F.monomial(q=r)

    def put(power, **e):
        for f in pochhammer_factors(F.monomial(**e), [qr, qr], R):
            ex[f] = ex.get(f, 0) + power

    if P and sc:
        table = c_table(P * sc)
        for m in range(1, P + 1):
            for k in range(1, sc + 1):
                for l, n1, n2, c in table.support(k * m):
                    base = {"p": m, "S": k, "T": k * r}
                    d = n2 - n1
                    put(c * r, **base, u=l + 1, q=(d + 1) * r)
                    put(c * r, **base, u=l - 1, q=(d + 1) * r)
                    put(-c * r, **base, u=l, q=d * r)
                    put(-c * r, **base, u=l, q=(d + 2) * r)
    rhs = binomial_product({f: e for f, e in ex.items() if e}, rhs)
    return [Comparison("sum", lhs, rhs, F)]


def _n1_closed_form(r, pt, p_cap):
    """Sum over k of the single-square weights with (a, l) = (k - 1, r - k)."""
    total = None
    q, t, u = pt.q, pt.t, pt.u
    for k in range(1, r + 1):
        x = q ** k * t ** (r - k)
        y = q ** (k - 1) * t ** (r - k + 1)
        term = _theta_q(u * x, p_cap) * _theta_q(y / u, p_cap) * _theta_inv_q(x, p_cap) * _theta_inv_q(y, p_cap)
        total = term if total is None else total + term
    return total


@_register("ELLIPTIC_OMEGA", "core independence of elliptic modular sums", {"T": 3, "p": 2},
           r=2, core=True, conjecture=True, points=3)
def _elliptic_omega(ctx):
    r, N, P = ctx.r, ctx.caps["T"], ctx.caps["p"]
    cores = list(ctx.cores)
    if Partition(()) not in cores:
        cores.insert(0, Partition(()))
    out = []
    for i, pt in enumerate(ctx.points):
        for n in range(N + 1):
            ref = f_omega_rn((), r, n, pt, P)
            if n == 1:
                out.append(Comparison(f"point {i} n=1 closed form", ref, _n1_closed_form(r, pt, P)))
            for omega in cores:
                f = ref if not omega else f_omega_rn(omega, r, n, pt, P)
                if omega:
                    out.append(Comparison(f"point {i} n={n} omega={list(omega)}", f, ref))
                shift, g = f_omega_rn_pu(omega, r, n, pt, P)
                if shift != -n:
                    raise AssertionError(f"quasi-periodicity shift {shift} != {-n}")
                out.append(Comparison(f"point {i} n={n} omega={list(omega)} quasi-periodicity",
                                      g, f * ((pt.t / (pt.u ** 2 * pt.q)) ** n)))
    return out


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _resolve(cfg: VerificationConfig, d: Descriptor) -> tuple[_Ctx, dict]:
    caps = dict(d.caps)
    for k, v in cfg.caps.items():
        if not isinstance(v, int) or v < 0:
            raise ConfigError(f"cap for {k} must be a nonnegative integer, got {v!r}")
        caps[k] = v
    if caps.get("T", 1) < 0:
        raise ConfigError("cap T must be nonnegative")
    alpha = beta = None
    if d.bf:
        alpha = d.bf[0] if cfg.alpha is None else cfg.alpha
        beta = d.bf[1] if cfg.beta is None else cfg.beta
        if alpha < 1 or beta < 0:
            raise ConfigError("need alpha >= 1 and beta >= 0")
        r = alpha + beta
    elif cfg.alpha is not None or cfg.beta is not None:
        raise ConfigError(f"{d.id} takes no alpha/beta")
    else:
        r = d.r if cfg.r is None else cfg.r
        if d.r is None and cfg.r not in (None, 1):
            raise ConfigError(f"{d.id} takes no r")
        r = r or 1
    if d.bf and cfg.r is not None and cfg.r != r:
        raise ConfigError(f"r is alpha + beta = {r} for {d.id}")
    if r < 1:
        raise ConfigError("r must be positive")
    if cfg.core is not None:
        if not d.uses_core:
            raise ConfigError(f"{d.id} takes no core")
        omega = Partition(cfg.core)
        if not is_r_core(omega, r):
            raise ConfigError(f"not-an-r-core: {list(omega)} is not a {r}-core")
        cores = [omega]
    else:
        max_core = 2 if d.id == "CONJ_QT_MOD_CORE" else 3
        cores = list(enumerate_r_cores(r, max_core)) if d.uses_core else []
    rho = None
    if d.rho:
        kind = cfg.rho or d.rho
        if kind not in KINDS:
            raise ConfigError(f"unknown weight kind {kind!r}")
        rho = RhoSpec(kind, random_points(1, cfg.seed)[0] if cfg.seed else DEFAULT_POINT)
        if kind == "THETA_WEIGHT":
            caps.setdefault("p", 2)
    elif cfg.rho:
        raise ConfigError(f"{d.id} takes no weight")
    points = []
    if d.points:
        count = cfg.points or d.points
        if count < 1:
            raise ConfigError("need at least one point")
        points = random_points(count, cfg.seed)
    params: dict = {"caps": caps}
    if d.r is not None or d.bf:
        params["r"] = r
    if d.uses_core:
        params["cores"] = [list(c) for c in cores]
    if rho:
        params["rho"] = rho.as_json()
    if d.bf:
        params["alpha"], params["beta"] = alpha, beta
    if points:
        params["seed"] = cfg.seed
        params["points"] = [p.as_json() for p in points]
    return _Ctx(r, caps, cores, rho, alpha, beta, points, cfg.seed), params


def verify(cfg: VerificationConfig) -> IdentityReport:
    """Build both sides of ``cfg.identity``, compare them and report."""
    t0 = time.perf_counter()
    params: dict = {}
    try:
        d = get(cfg.identity)
        ctx, params = _resolve(cfg, d)
        comparisons = d.builder(ctx)
    except (ConfigError, SeriesError, DenominatorVanishes, ValueError) as exc:
        params["error"] = str(exc)
        return IdentityReport(cfg.identity, params, ERROR, None,
                              int((time.perf_counter() - t0) * 1000))
    status = CONSISTENT if d.conjecture else PASS
    first = None
    params["comparisons"] = [c.label for c in comparisons]
    params["terms"] = max((len(c.lhs) for c in comparisons), default=0)
    for c in comparisons:
        mm = c.mismatch()
        if mm is not None:
            status, first = FAIL, mm
            params["failed"] = c.label
            break
    return IdentityReport(d.id, params, status, first, int((time.perf_counter() - t0) * 1000))


