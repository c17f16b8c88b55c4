"""Structure function, unirrep constraints, and the algebraic spectrum."""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath as mp
import pytest

from singosc.qalg import (CentralEigs, exact_sqrt, harmonic_limit_check, m_values,
                          recursion_consistency, set_solution, solve_unirreps,
                          structure_fn_factored, structure_fn_raw,
                          structure_poly_factored, structure_poly_raw)


def _rational_m_eigs(rng, N=None, n=None):
    """Random CentralEigs engineered so that m1, m2 come out rational."""
    N = N or rng.randrange(2, 9)
    n = n or rng.randrange(1, N)
    d1, d2 = n, N - n
    l1 = rng.randrange(0, 2 if d1 == 1 else 4)
    l2 = rng.randrange(0, 2 if d2 == 1 else 4)
    hbar = Fraction(rng.randrange(1, 4), rng.randrange(1, 3))
    omega = Fraction(rng.randrange(1, 5), rng.randrange(1, 4))
    m1_min = abs(2 * l1 + d1 - 2)
    m2_min = abs(2 * l2 + d2 - 2)
    m1 = m1_min + Fraction(rng.randrange(0, 9), rng.randrange(1, 5))
    m2 = m2_min + Fraction(rng.randrange(0, 9), rng.randrange(1, 5))
    c1 = hbar ** 2 * (m1 ** 2 - m1_min ** 2) / 8
    c2 = hbar ** 2 * (m2 ** 2 - m2_min ** 2) / 8
    ce = CentralEigs(N=N, n=n, l_n=l1, l_Nn=l2, c1=c1, c2=c2, hbar=hbar, omega=omega)
    return ce, m1, m2


def test_m_values_examples():
    ce = CentralEigs(N=4, n=2, l_n=0, l_Nn=0)
    mq = m_values(ce)
    assert mq.m1 == 0 and mq.m2 == 0
    ce = CentralEigs(N=6, n=3, l_n=0, l_Nn=0, c1=Fraction(1))  # c1 = hbar^2
    assert m_values(ce).m1 == 3  # 8 + 1 = 9
    ce = CentralEigs(N=5, n=2, l_n=1, l_Nn=0, c1=Fraction(1, 8))
    assert m_values(ce).m1_squared == Fraction(1) + 4 + 0  # 8c1/h^2 + 4l(l) + 0


def test_m_values_harmonic_limit_closed_form():
    # oracle: at c = 0 the radicand is the perfect square (2l + m - 2)^2
    for n in range(2, 7):
        for l in range(0, 11):
            ce = CentralEigs(N=n + 2, n=n, l_n=l, l_Nn=0)
            mq = m_values(ce)
            assert mq.m1 == 2 * l + n - 2
    ce = CentralEigs(N=2, n=1, l_n=0, l_Nn=0)
    mq = m_values(ce)
    assert mq.m1 == 1 and mq.m2 == 1


def test_raw_equals_factored_on_random_rational_tuples():
    rng = random.Random(101)
    for _ in range(20):
        ce, m1, m2 = _rational_m_eigs(rng)
        mq = m_values(ce)
        assert mq.exact and mq.m1 == m1 and mq.m2 == m2
        u = Fraction(rng.randrange(-9, 9), rng.randrange(1, 8))
        energy = Fraction(rng.randrange(-9, 9), rng.randrange(1, 8))
        raw = structure_poly_raw(u, energy, ce)
        fac = structure_poly_factored(u, energy, ce, mq)
        assert raw.degree == 6 and fac.degree == 6
        assert raw.agrees_with(fac)


def test_unshifted_last_factor_reading_fails():
    ce = CentralEigs(N=4, n=2, l_n=0, l_Nn=1, c1=Fraction(9, 8), c2=Fraction(1, 2))
    raw = structure_poly_raw(Fraction(1, 3), Fraction(5, 2), ce)
    fac = structure_poly_factored(Fraction(1, 3), Fraction(5, 2), ce,
                                  shift_last_factor=False)
    assert not raw.agrees_with(fac)


def test_factored_root_locations():
    ce = CentralEigs(N=5, n=2, l_n=0, l_Nn=0, c1=Fraction(9, 8), c2=Fraction(15, 8))
    mq = m_values(ce)
    assert (mq.m1, mq.m2) == (3, 4)
    u, energy = Fraction(-2), Fraction(7, 2)
    # x + u = (2 + m1 + m2)/4 must be a root of the factored form
    x_root = Fraction(2 + 3 + 4, 4) - u
    assert structure_fn_factored(x_root, u, energy, ce) == 0
    # and of the raw form, exactly
    assert structure_fn_raw(x_root, u, energy, ce) == 0


def test_degenerate_harmonic_p0_values():
    # m1 = m2 = 0: the upper boundary root collides with the bracket roots,
    # so the value at x = 1 is an exact zero, while the interior stays positive
    ce = CentralEigs(N=4, n=2, l_n=0, l_Nn=0)
    mq = m_values(ce)
    u, energy = set_solution(1, 1, 1, 0, ce, mq)
    assert energy == 2  # hbar omega N / 2 with N = 4
    phi = structure_poly_factored(u, energy, ce, mq)
    assert phi(Fraction(1)) == 0
    assert phi(Fraction(1, 2)) > 0


def test_solve_unirreps_boundaries_and_positivity():
    ce = CentralEigs(N=4, n=2, l_n=1, l_Nn=2, c1=Fraction(3, 2), c2=Fraction(1, 4))
    sols = solve_unirreps(3, ce)
    assert len(sols) == 12
    by_key = {(s.set_id, s.eps1, s.eps2): s for s in sols}
    best = by_key[(1, 1, 1)]
    assert best.admissible and best.failing_x is None
    assert best.phi_values[0] == 0 or abs(best.phi_values[0]) < mp.mpf("1e-25")
    # set 2 never satisfies the upper boundary: leading -x factor
    for eps in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        sol = by_key[(2, *eps)]
        assert not sol.admissible
        assert sol.failing_x == 4
    # set 3 with both signs positive is admissible as well, same energy
    s3 = by_key[(3, 1, 1)]
    assert s3.admissible
    assert abs(mp.mpf(float(s3.energy)) - mp.mpf(float(best.energy))) < 1e-12


def test_negative_branch_with_large_m_is_inadmissible():
    ce = CentralEigs(N=4, n=2, l_n=0, l_Nn=0, c1=Fraction(32), c2=Fraction(32))
    sols = solve_unirreps(2, ce)
    for s in sols:
        if s.set_id in (1, 3) and (s.eps1, s.eps2) == (-1, -1):
            assert not s.admissible
            assert (s.energy <= 0) or s.failing_x is not None


def test_energy_monotonic_in_p_with_constant_gap():
    ce = CentralEigs(N=5, n=2, l_n=1, l_Nn=0, c1=Fraction(9, 8), c2=Fraction(2))
    mq = m_values(ce)
    energies = [set_solution(1, 1, 1, p, ce, mq)[1] for p in range(5)]
    gaps = [b - a for a, b in zip(energies, energies[1:])]
    assert all(g == 2 * ce.hbar * ce.omega for g in gaps)


def test_harmonic_limit_all_partitions():
    for N, l_max in [(4, 4), (8, 3)]:
        checks = harmonic_limit_check(N, l_max)
        assert checks and all(c.passed for c in checks)


def test_harmonic_limit_expected_examples():
    checks = {(c.n, c.l, c.p, c.l_n, c.l_Nn): c for c in harmonic_limit_check(4, 2)}
    assert checks[(2, 0, 0, 0, 0)].energy == 2
    for key, c in checks.items():
        if key[0] == 2 and key[1] == 2:
            assert c.energy == 4
    checks8 = {(c.n, c.l, c.p, c.l_n, c.l_Nn): c for c in harmonic_limit_check(8, 1)}
    assert checks8[(4, 1, 0, 1, 0)].energy == 5


def test_recursion_consistency_exact_and_inexact():
    ce = CentralEigs(N=4, n=2, l_n=0, l_Nn=0, c1=Fraction(9, 8), c2=Fraction(2))
    ok, ratios = recursion_consistency(4, ce)
    assert ok
    assert ratios[0] == Fraction(1, 3 * 2 ** 20)
    ce2 = CentralEigs(N=5, n=2, l_n=1, l_Nn=0, c1=Fraction(9, 8), c2=Fraction(1, 3),
                      hbar=Fraction(2), omega=Fraction(3, 2))
    ok2, _ = recursion_consistency(3, ce2)
    assert ok2


def test_central_eigs_validation():
    with pytest.raises(ValueError):
        CentralEigs(N=4, n=0, l_n=0, l_Nn=0)
    with pytest.raises(ValueError):
        CentralEigs(N=4, n=1, l_n=2, l_Nn=0)
    with pytest.raises(ValueError):
        CentralEigs(N=4, n=2, l_n=0, l_Nn=0, c1=Fraction(-1))
    ce = CentralEigs(N=4, n=1, l_n=1, l_Nn=0)
    assert ce.j2 == 0  # parity label on a one-coordinate block keeps J2 = 0


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(2)) is None
    with pytest.raises(ValueError):
        exact_sqrt(Fraction(-1))
