import time
from collections import Counter
from fractions import Fraction

import pytest

import hooklab.harness as H
from hooklab.elliptic import _theta_inv_q, _theta_q, f_omega_rn, random_points
from hooklab.harness import (VerificationConfig, bf_multiset, core_class, registry, sum_all,
                             sum_fixed_core, verify)
from hooklab.partitions import enumerate_r_cores
from hooklab.series import Ring, pochhammer
from hooklab.weights import KINDS, RhoSpec, make_ring

ALL_IDS = [
    "GF_PART", "GF_RKERNELS", "GF_FIXED_CORE", "GF_CORES", "GF_KERNELS_FIXED_CORE", "FRT_SQUARE",
    "HOOK_EXP", "HOOK_EXP_MOD", "NO", "NO_MOD", "HANJI_MULT", "HANJI_MOD", "MULT_NEW", "MULT_NEW2",
    "APP_CONST_A", "APP_CONST_B", "APP_LEN_A", "APP_LEN_B", "INVOLUTION", "EXP_BOTTOM",
    "EXP_BOTTOM_MOD_A", "EXP_BOTTOM_MOD_B", "Q_BOTTOM", "AMDEBERHAN_T", "UNIFY_A", "UNIFY_B",
    "QT_T0_PAIR", "QNO_MOD", "QT_NO", "CONJ_QT_MOD", "CONJ_QT_MOD_CORE", "ELLIPTIC_OMEGA", "ENO",
    "PQ_NO", "BF_GF", "BF_FIXED_A", "BF_FIXED_B",
]
CONJECTURES = {"CONJ_QT_MOD", "CONJ_QT_MOD_CORE", "ELLIPTIC_OMEGA"}


def test_registry_contents():
    ids = [d.id for d in registry()]
    assert len(ids) >= 30
    assert sorted(ids) == sorted(ALL_IDS)
    assert {d.id for d in registry() if d.conjecture} == CONJECTURES


@pytest.mark.parametrize("identity", ALL_IDS)
def test_defaults_verify(identity):
    t0 = time.perf_counter()
    rep = verify(VerificationConfig(identity))
    assert rep.status == ("CONJECTURE-CONSISTENT" if identity in CONJECTURES else "PASS"), rep.as_json()
    assert rep.first_mismatch is None
    assert rep.exit_code == 0
    assert time.perf_counter() - t0 < 60


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("identity", ["HANJI_MULT", "MULT_NEW", "HANJI_MOD", "MULT_NEW2"])
def test_multiplication_theorems_hold_for_every_weight(identity, kind, r):
    rep = verify(VerificationConfig(identity, r=r, rho=kind, caps={"T": 6} if identity in
                                    ("HANJI_MULT", "MULT_NEW2") else {"T": 4}))
    assert rep.status == "PASS", rep.as_json()


# -- sum_all / sum_fixed_core examples ----------------------------------------

def test_sum_all_examples():
    R = make_ring({"T": 8}, [("z", False)])
    got = sum_all(RhoSpec("CONST_Z"), 1, {"T": 8}, "BOTTOM_MOD_R", track_s=False, ring=R)
    assert got == pochhammer({"z": 1, "T": 1}, [{"T": 1}], -1, ring=R)
    R1 = make_ring({"T": 8})
    assert sum_all(RhoSpec("INV_H_SQ"), 1, {"T": 8}, track_s=False, ring=R1) == R1.gen("T").exp()
    no = sum_all(RhoSpec("NO"), 1, {"T": 8}, track_s=False, ring=R)
    assert no == pochhammer("T", ["T"], ring=R).pow(R.gen("z") - 1)


def test_sum_all_tracks_s():
    got = sum_all(None, 2, {"T": 6, "S": 3})
    # empty 2-core, quotient of total size 2: five bipartitions
    assert got.coefficient(T=4, S=2) == 5
    assert got.coefficient(T=5, S=1) == 2  # 2-core (1), quotient size 1


def test_sum_fixed_core_examples():
    R = make_ring({"T": 6})
    ones = pochhammer("T", ["T"], -2, ring=R)
    for omega in enumerate_r_cores(2, 6):
        assert sum_fixed_core(omega, None, 2, {"T": 6}, ring=R) == ones
    Rz = make_ring({"T": 5}, [("z", False)])
    got = sum_fixed_core((2,), RhoSpec("CONST_Z"), 3, {"T": 5}, "BOTTOM_MOD_R", ring=Rz)
    want = pochhammer("T", ["T"], -2, into=pochhammer({"z": 1, "T": 1}, [{"T": 1}], -1, ring=Rz))
    assert got == want
    r1 = sum_fixed_core((), RhoSpec("NO"), 1, {"T": 6}, ring=make_ring({"T": 6}, [("z", False)]))
    assert r1 == sum_all(RhoSpec("NO"), 1, {"T": 6}, track_s=False, ring=r1.ring)


@pytest.mark.parametrize("r", [2, 3])
def test_bottom_hook_sums_are_core_independent(r):
    rho = RhoSpec("Q_WEIGHT")
    caps = {"T": 3 if r == 3 else 4}
    R = make_ring({"T": caps["T"], "q": 6}, rho.exact_vars())
    sums = [sum_fixed_core(w, rho, r, caps, "BOTTOM_MOD_R", ring=R) for w in enumerate_r_cores(r, 6)]
    assert len(sums) > 3
    assert all(s == sums[0] for s in sums)


def test_core_class_rejects_non_core():
    with pytest.raises(ValueError, match="not-an-r-core"):
        core_class((2,), 2, 3)
    assert len(core_class((), 2, 2)) == 8  # bipartitions of size 0, 1, 2: 1 + 2 + 5


# -- BF data -----------------------------------------------------------------

BF9 = {(): Counter({0: 10, 1: 8, 2: 3, 3: 1}), (4, 2): Counter({0: 2, 1: 1}),
       (2, 2, 1, 1): Counter({0: 2, 1: 1}), (5, 3, 1): Counter({0: 1}), (3, 2, 2, 1, 1): Counter({0: 1})}


@pytest.mark.parametrize("ab", [(3, 0), (2, 1), (1, 2)])
def test_bf_multisets_at_nine(ab):
    total = 0
    for omega in enumerate_r_cores(3, 9):
        ms = bf_multiset(9, *ab, omega)
        assert ms == BF9.get(tuple(omega), Counter())
        total += sum(ms.values())
    assert total == 30


def test_bf_multiset_errors():
    with pytest.raises(ValueError, match="not-a-core"):
        bf_multiset(9, 2, 1, (3,))


# -- failures are detected -------------------------------------------------------

def test_wrong_qt_denominator_is_rejected():
    """The q,t product needs (T, qtT; q,t,T) downstairs; (T, tT; q,t,T) fails."""
    R = make_ring({"T": 4, "q": 4, "t": 4}, [("u", True)])
    lhs = sum_all(RhoSpec("QT_WEIGHT"), 1, {"T": 4}, "ALL_SQUARES", track_s=False, ring=R)
    bases = [{"q": 1}, {"t": 1}, {"T": 1}]

    def rhs(second):
        acc = R.one()
        for a, e in (({"u": 1, "q": 1, "T": 1}, 1), ({"u": -1, "t": 1, "T": 1}, 1),
                     ({"T": 1}, -1), (second, -1)):
            acc = pochhammer(a, bases, e, into=acc)
        return acc

    assert lhs.compare(rhs({"q": 1, "t": 1, "T": 1})) is None
    assert lhs.compare(rhs({"t": 1, "T": 1})) is not None


def test_wrong_modular_q_denominator_is_rejected(monkeypatch):
    def halved(R, r, a, power):
        bases = [{"q": r}, {"q": r}, a]
        acc = R.one()
        for num, e in (({"u": 1, "q": r}, power), ({"u": -1, "q": r}, power), ({}, -power),
                       ({"q": r}, -power)):
            acc = H._poch(R, {**num, **a}, bases, e, acc)
        return acc

    monkeypatch.setattr(H, "_qno_mod_rhs", halved)
    rep = verify(VerificationConfig("QNO_MOD"))
    assert rep.status == "FAIL"
    assert rep.exit_code == 1
    assert rep.as_json()["first_mismatch"]["monomial"] == {"T": 1, "q": 2}


def test_wrong_single_step_closed_form_is_rejected():
    pt = random_points(1, 0)[0]
    r, P = 3, 2
    q, t, u = pt.q, pt.t, pt.u

    def closed(first_power):
        total = None
        for k in range(1, r + 1):
            x, y = q ** k * t ** (r - k), q ** (k - 1) * t ** (r - k + 1)
            d = q ** first_power(k) * t ** (r - k)
            term = _theta_q(u * x, P) * _theta_q(y / u, P) * _theta_inv_q(d, P) * _theta_inv_q(y, P)
            total = term if total is None else total + term
        return total

    f1 = f_omega_rn((), r, 1, pt, P)
    assert f1 == closed(lambda k: k)
    assert f1 != closed(lambda k: 1)


def test_conjecture_failure_reports_witness(monkeypatch):
    real = H._conj_rhs_blocks
    monkeypatch.setattr(H, "_conj_rhs_blocks", lambda R, r, a: real(R, r, a) * (1 + R.gen("q")))
    rep = verify(VerificationConfig("CONJ_QT_MOD", caps={"T": 4, "q": 3, "t": 3}))
    assert rep.status == "FAIL"
    assert rep.exit_code == 2
    data = rep.as_json()
    assert set(data) == {"identity", "params", "status", "first_mismatch", "elapsed_ms"}
    assert set(data["first_mismatch"]) == {"monomial", "lhs", "rhs"}


# -- configuration errors ----------------------------------------------------------

@pytest.mark.parametrize("cfg", [
    VerificationConfig("NOPE"),
    VerificationConfig("MULT_NEW", r=2, core=(2,)),
    VerificationConfig("NO", core=()),
    VerificationConfig("NO", alpha=2),
    VerificationConfig("BF_GF", alpha=0, beta=1),
    VerificationConfig("NO", caps={"T": -1}),
    VerificationConfig("NO", rho="CONST_Z"),
    VerificationConfig("HANJI_MULT", rho="BOGUS"),
    VerificationConfig("BF_GF", r=4),
    VerificationConfig("NO", r=2),
])
def test_misconfiguration_is_an_error(cfg):
    rep = verify(cfg)
    assert rep.status == "ERROR"
    assert rep.exit_code == 3
    assert rep.params["error"]


def test_reports_are_deterministic():
    a = verify(VerificationConfig("QT_T0_PAIR")).as_json()
    b = verify(VerificationConfig("QT_T0_PAIR")).as_json()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_theta_weight_point_follows_seed():
    a = verify(VerificationConfig("HANJI_MULT", rho="THETA_WEIGHT", seed=5, caps={"T": 4}))
    assert a.status == "PASS"
    assert a.params["rho"]["point"] == random_points(1, 5)[0].as_json()


def test_weight_values():
    R = make_ring({"T": 1, "q": 3}, [("z", False), ("u", True)])
    w = RhoSpec("Q_WEIGHT").hook_value(R, 2)
    assert w.coefficient(z=1) == 1
    assert w.coefficient(z=1, q=2) == 1
    assert w.coefficient(z=1, u=1, q=2) == -1
    assert RhoSpec("INV_H_SQ").hook_value(Ring([("T", 1)]), 3).constant_term() == Fraction(1, 9)
    with pytest.raises(ValueError, match="unknown weight kind"):
        RhoSpec("NOPE")
