"""Acceptance criteria 1-7.

Each criterion prints one line ``criterion N: PASS|FAIL (elapsed) detail``.
Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""

import os
import random
import sys
import time
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from bijections import check_phi, check_psi  # noqa: E402
import test_series as props  # noqa: E402

from hooklab.elliptic import c_table, n2_cancellation, random_points, theta_addition_check  # noqa: E402
from hooklab.harness import VerificationConfig, bf_multiset, registry, verify  # noqa: E402
from hooklab.littlewood import phi, psi  # noqa: E402
from hooklab.partitions import (bf_stat, bottom_hooks_mod, enumerate_r_cores, modular_length,  # noqa: E402
                                partitions_of)
from hooklab.weights import KINDS  # noqa: E402


class Criterion:
    def __init__(self, number, limit):
        self.number, self.limit = number, limit
        self.failures = []
        self.notes = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def run_verify(self, identity, expect="PASS", limit=None, **kw):
        t0 = time.perf_counter()
        rep = verify(VerificationConfig(identity, **kw))
        dt = time.perf_counter() - t0
        label = f"{identity}{kw or ''}"
        self.check(rep.status == expect, f"{label}: {rep.status} {rep.as_json()['first_mismatch']}")
        if limit is not None:
            self.check(dt < limit, f"{label}: {dt:.1f}s over {limit}s")
        return rep


def _report(c, elapsed):
    in_time = elapsed < c.limit
    ok = not c.failures and in_time
    detail = "; ".join(c.failures[:3] + ([] if in_time else [f"over {c.limit}s limit"]) + c.notes)
    line = f"criterion {c.number}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {c.limit}s)"
    return ok, line + (f" {detail}" if detail else "")


# -- the criteria ---------------------------------------------------------------------

def worked_examples(c):
    cq = phi((5, 4, 4, 1), 3)
    c.check(cq.core == (2,) and cq.quotient == ((), (1, 1), (2,)), f"phi_3(5,4,4,1) = {cq}")
    kp = psi((14, 6, 6, 1), 3)
    c.check(kp.kernel == (5, 3, 3, 1) and kp.cofactor == (3, 1, 1), f"psi_3(14,6,6,1) = {kp}")
    hb = bottom_hooks_mod((6, 5, 5, 3, 1, 1), 1)
    c.check(Counter(hb) == Counter({1: 4, 2: 2}), f"bottom hooks {dict(hb)}")
    c.check(modular_length((3, 2, 2, 1, 1, 1, 1), 2) == 3, "modular length")
    c.check(bf_stat((7, 6, 4, 4, 2, 1), 2, 1) == 5, "BF_{2,1}")
    c.check(bf_stat((7, 6, 4, 4, 2, 1), 4, 2) == 2, "BF_{4,2}")


def bijection_suites(c):
    checks = 0
    for n in range(26):
        for lam in partitions_of(n):
            for r in range(1, 6):
                checks += check_phi(lam, r) + check_psi(lam, r)
    c.notes.append(f"{checks} checks")


def theorem_identities(c):
    for d in registry():
        if not d.conjecture:
            c.run_verify(d.id, limit=60)
    c.run_verify("NO", caps={"T": 10}, limit=60)
    for r in (2, 3):
        c.run_verify("NO_MOD", r=r, caps={"T": 9, "S": 3}, limit=60)
    c.run_verify("QT_NO", caps={"T": 6, "q": 6, "t": 6}, limit=60)
    for kind in KINDS:
        for r in (1, 2, 3):
            c.run_verify("HANJI_MULT", r=r, rho=kind, caps={"T": 6}, limit=60)
            c.run_verify("MULT_NEW", r=r, rho=kind, caps={"T": 6}, limit=60)
    for a, b in [(1, 0), (3, 0), (2, 1), (1, 2), (4, 2), (2, 2)]:
        c.run_verify("BF_GF", alpha=a, beta=b, caps={"T": 12}, limit=60)


BF9 = {(): Counter({0: 10, 1: 8, 2: 3, 3: 1}), (4, 2): Counter({0: 2, 1: 1}),
       (2, 2, 1, 1): Counter({0: 2, 1: 1}), (5, 3, 1): Counter({0: 1}),
       (3, 2, 2, 1, 1): Counter({0: 1})}


def bf_table(c):
    for a, b in [(3, 0), (2, 1), (1, 2)]:
        total = 0
        for omega in enumerate_r_cores(3, 9):
            ms = bf_multiset(9, a, b, omega)
            c.check(ms == BF9.get(tuple(omega), Counter()), f"({a},{b}) at {omega}: {dict(ms)}")
            total += sum(ms.values())
        c.check(total == 30, f"({a},{b}) total {total}")


def conjecture_evidence(c):
    ok = "CONJECTURE-CONSISTENT"
    for r in (2, 3):
        rep = c.run_verify("CONJ_QT_MOD", ok, 120, r=r, caps={"T": 6, "q": 5, "t": 5})
        c.check(rep.params["comparisons"][0].startswith("product forms"), "product forms not compared")
        for omega in [(), (1,), (2,), (1, 1)]:
            if omega in [tuple(w) for w in enumerate_r_cores(r, 2)]:
                c.run_verify("CONJ_QT_MOD_CORE", ok, 120, r=r, core=omega, caps={"T": 5, "q": 5, "t": 5})
        c.run_verify("ELLIPTIC_OMEGA", ok, 120, r=r, caps={"T": 3, "p": 2}, points=3)
        for pt in random_points(3, 0):
            res = n2_cancellation(r, pt, 2)
            c.check(all(res.values()), f"n=2 cancellation r={r} at {pt}: {res}")


def elliptic_machinery(c):
    inv = c_table(3).invariants()
    c.check(all(inv.values()), f"c_table(3) {inv}")
    for r in (1, 2):
        c.run_verify("PQ_NO", limit=120, r=r, caps={"p": 1, "q": 5, "T": 5})
    rng = random.Random(1)

    def rr():
        return Fraction(rng.randint(1, 30), rng.randint(1, 30)) * rng.choice([1, -1])

    t0 = time.perf_counter()
    ok = all(theta_addition_check(rr(), rr(), rr(), rr(), 4) for _ in range(20))
    dt = time.perf_counter() - t0
    c.check(ok, "theta addition")
    c.check(dt < 10, f"theta addition {dt:.1f}s over 10s")


def series_properties(c):
    calls = Counter()
    per = 170
    cases = [
        ("ring laws", (props.series(), props.series(), props.series()), props.test_ring_laws),
        ("inverse", (props.units(),), props.test_inverse_round_trip),
        ("exp/log", (props.series(min_degree=1), props.units()), props.test_exp_log_round_trip),
        ("truncation", (props.series(), props.series(), st.integers(0, 5), st.integers(0, 3)),
         props.test_truncation_commutes_with_products),
        ("symbolic pow", (props.tails, st.integers(-3, 3)), props.test_symbolic_power_specializes_to_integer_power),
        ("json", (props.series(),), props.test_json_round_trip),
    ]
    def counted(name, inner):
        def body(args):
            calls[name] += 1
            inner(*args)
        return body

    for name, strategies, test in cases:
        run = given(st.tuples(*strategies))(counted(name, test.hypothesis.inner_test))
        settings(max_examples=per, deadline=None, database=None, derandomize=True)(run)()
    total = sum(calls.values())
    c.check(total >= 1000, f"only {total} cases")
    c.notes.append(f"{total} cases")


CRITERIA = [
    (1, 1, worked_examples),
    (2, 300, bijection_suites),
    (3, 60 * 60, theorem_identities),  # per-run limit of 60 s is checked inside
    (4, 1, bf_table),
    (5, 6 * 120, conjecture_evidence),  # each run < 2 min, checked inside
    (6, 3 * 120, elliptic_machinery),
    (7, 30, series_properties),
]


def run_criterion(number):
    _, limit, fn = next(row for row in CRITERIA if row[0] == number)
    c = Criterion(number, limit)
    t0 = time.perf_counter()
    try:
        fn(c)
    except AssertionError as exc:
        c.failures.append(f"assertion: {exc}".splitlines()[0])
    return _report(c, time.perf_counter() - t0)


@pytest.mark.parametrize("number", [row[0] for row in CRITERIA])
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n, _, _ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
