"""Shared checks of the two decompositions, used by unit and acceptance tests."""

from collections import Counter

from hooklab.littlewood import CoreQuotient, KernelPair, phi, phi_inverse, psi, psi_inverse, r_core
from hooklab.partitions import bottom_hooks_mod, hook_multiset_mod, is_r_core, is_r_kernel


def _scaled(hooks, r):
    return Counter({h * r: m for h, m in hooks.items()})


def check_phi(lam, r):
    """Round trip plus size and hook bookkeeping; returns the number of checks made."""
    cq = phi(lam, r)
    assert is_r_core(cq.core, r)
    assert len(cq.quotient) == r
    assert phi_inverse(CoreQuotient(cq.core, cq.quotient), r) == lam
    assert sum(lam) == sum(cq.core) + r * sum(sum(q) for q in cq.quotient)
    expected = Counter()
    for q in cq.quotient:
        expected += _scaled(hook_multiset_mod(q, 1), r)
    assert Counter(hook_multiset_mod(lam, r)) == expected
    return 5


def check_psi(lam, r):
    kp = psi(lam, r)
    mu, nu = kp.kernel, kp.cofactor
    assert is_r_kernel(mu, r)
    assert psi_inverse(KernelPair(mu, nu), r) == lam
    assert sum(lam) == sum(mu) + r * sum(nu)
    assert Counter(bottom_hooks_mod(lam, r)) == _scaled(bottom_hooks_mod(nu, 1), r)
    assert r_core(lam, r) == r_core(mu, r)
    return 5
