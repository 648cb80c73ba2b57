import random
from fractions import Fraction

import pytest

from hooklab.elliptic import (DenominatorVanishes, RationalPoint, c_table, elliptic_square_weight,
                              eno_frame, eno_rhs, f_omega_rn, n2_cancellation, quasi_periodicity_check,
                              random_points, theta_addition_check, theta_shifted, theta_trunc)
from hooklab.series import Ring, pochhammer

POINTS = random_points(3, 0)


def test_theta_expansion_and_reflection():
    R = Ring([("p", 3)], [("z", True)])
    th = theta_trunc({"z": 1}, 3, R)
    assert th == -R.gen("z") * theta_trunc({"z": -1}, 3, R)
    # product form (p;p)(z;p)(p/z;p)
    prod = pochhammer("p", ["p"], ring=R)
    prod = pochhammer({"z": 1}, ["p"], into=prod)
    prod = pochhammer({"p": 1, "z": -1}, ["p"], into=prod)
    assert th == prod
    assert theta_trunc({"z": 1}, 0, Ring([("p", 0)], [("z", True)])) == 1 - Ring([("p", 0)], [("z", True)]).gen("z")


def test_theta_shift():
    # theta(c p) = -theta(c) / c
    c = Fraction(3, 7)
    e, g = theta_shifted(c, 1, 4)
    assert e == 0
    assert g == theta_trunc(c, 4) * (-1 / c)
    # theta(c / p) = -(c / p) theta(c)
    e, g = theta_shifted(c, -1, 4)
    assert e == -1
    assert g == theta_trunc(c, 4) * (-c)


def test_theta_rejects_zero():
    with pytest.raises(ValueError, match="zero-argument"):
        theta_trunc(0, 2)


def test_addition_formula_at_random_points():
    rng = random.Random(1)

    def rr():
        return Fraction(rng.randint(1, 30), rng.randint(1, 30)) * rng.choice([1, -1])

    assert all(theta_addition_check(rr(), rr(), rr(), rr(), 4) for _ in range(20))


def test_c_table_invariants_and_frozen_values():
    table = c_table(3)
    assert table.invariants() == {"symmetry": True, "u=1 sum vanishes": True, "l-support bound": True}
    assert len(table.entries) == 114
    assert table.support(1) == [(-1, 0, 1, -1), (-1, 1, 0, -1), (0, -1, 0, 1), (0, 0, -1, 1),
                                (0, 0, 1, 1), (0, 1, 0, 1), (1, -1, 0, -1), (1, 0, -1, -1)]
    assert all(abs(n1) + abs(n2) <= m for (m, _, n1, n2) in c_table(5).entries)
    assert c_table(5).invariants()["symmetry"]
    with pytest.raises(ValueError):
        table.support(4)
    assert table[(1, 0, 0, 1)] == 1
    assert table[(1, 5, 5, 5)] == 0


def test_random_points_reproducible():
    assert POINTS[0] == RationalPoint(Fraction(2, 3), Fraction(3, 5), Fraction(5, 7))
    assert random_points(4, 9) == random_points(4, 9)
    assert len(set(random_points(5, 3))) == 5


@pytest.mark.parametrize("r", [2, 3])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_quasi_periodicity(r, n):
    for pt in POINTS:
        assert quasi_periodicity_check((), r, n, pt, 2)


@pytest.mark.parametrize("r", [2, 3])
def test_n2_cancellation(r):
    for pt in POINTS:
        assert all(n2_cancellation(r, pt, 2).values())


def test_n2_cancellation_needs_r_at_least_2():
    with pytest.raises(ValueError):
        n2_cancellation(1, POINTS[0], 2)


def test_core_independence_small():
    for n in range(3):
        assert f_omega_rn((), 2, n, POINTS[1], 2) == f_omega_rn((1,), 2, n, POINTS[1], 2)


def test_singular_denominator():
    pt = RationalPoint(Fraction(1), Fraction(1), Fraction(2))
    with pytest.raises(DenominatorVanishes):
        elliptic_square_weight(0, 0, pt, 2)


def test_eno_product_side_specializations():
    caps = {"p": 1, "T": 4, "q": 3, "t": 3}
    F = eno_frame(caps)
    # u = 1 collapses to the partition generating function
    at_one = eno_rhs(caps, u=1, frame=F)
    R = at_one.ring
    expected = pochhammer(F.monomial(T=1).specialize(u=1), [F.monomial(T=1).specialize(u=1)],
                          power=-1, ring=R)
    assert at_one == expected
    # p-cap 0 is the q,t product
    caps0 = dict(caps, p=0)
    F0 = eno_frame(caps0)
    qt = eno_rhs(caps0, frame=F0)
    R0 = F0.ring
    ref = R0.one()
    for a, e in (({"u": 1, "q": 1, "T": 1}, 1), ({"u": -1, "t": 1, "T": 1}, 1),
                 ({"T": 1}, -1), ({"q": 1, "t": 1, "T": 1}, -1)):
        ref = pochhammer(a, ["q", "t", "T"], e, into=ref)
    assert qt == ref
