import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from xep.arith import primes_upto
from xep.curves import PreconditionError, ReducedCurve
from xep.frey import (
    PadicInt,
    construct_good,
    construct_mult,
    find_uc,
    good_alpha,
    hensel_root,
    lift_good,
    verify_ell_primitive,
)

ELLS = [ell for ell in primes_upto(500) if ell >= 5]
PS = [p for p in primes_upto(50) if p > 3]


def brute_force_u(A, B, ell, p):
    """Every u in F_ell^* for which alpha u^12 is a p-th power."""
    alpha = good_alpha(A, B, ell)
    pth = {pow(x, p, ell) for x in range(1, ell)}
    return [u for u in range(1, ell) if alpha * pow(u, 12, ell) % ell in pth]


def test_good_worked_example():
    sol = construct_good(0, 1, 7, 5)
    assert (sol.abar, sol.bbar, sol.cbar, sol.u) == (3, 0, 4, 1)


def test_good_against_brute_force():
    rng = random.Random(23)
    for _ in range(200):
        ell = rng.choice(ELLS)
        p = rng.choice([q for q in PS if q != ell])
        A, B = rng.randrange(ell), rng.randrange(ell)
        if (4 * A**3 + 27 * B * B) % ell == 0:
            continue
        sol = construct_good(A, B, ell, p)
        admissible = brute_force_u(A, B, ell, p)
        assert sol.u in admissible
        if (ell - 1) % p:
            assert sol.u == 1 and len(admissible) == ell - 1
        E0 = ReducedCurve(ell, A, B)
        F = ReducedCurve(ell, 3 * sol.bbar, -2 * sol.abar)
        assert F.j_invariant() == E0.j_invariant()
        assert (sol.abar**2 + sol.bbar**3 - good_alpha(A, B, ell) * pow(sol.u, 12, ell)) % ell == 0


def test_good_rejects():
    with pytest.raises(PreconditionError):
        construct_good(0, 0, 7, 5)
    with pytest.raises(PreconditionError):
        construct_good(0, 1, 7, 3)
    with pytest.raises(PreconditionError):
        construct_good(0, 1, 7, 7)


def test_good_lifts_are_primitive():
    sol = construct_good(2, 5, 31, 5)
    a, b, c = lift_good(sol, 1)
    assert verify_ell_primitive(a, b, c, 5)


def test_find_uc_worked_example():
    assert find_uc(1, 5, 7) == 2


def test_find_uc_brute_force():
    for ell in [q for q in primes_upto(100) if q >= 5]:
        for p in (5, 7, 11):
            if p == ell:
                continue
            for uE in range(1, ell):
                uc = find_uc(uE, ell, p)
                cubes = {pow(x, 3, ell) for x in range(1, ell)}
                squares = {pow(x, 2, ell) for x in range(1, ell)}
                ok = [u for u in range(1, ell)
                      if uE * pow(u, p, ell) % ell in cubes
                      and -uE * pow(u, p, ell) * pow(3, -1, ell) % ell in squares]
                assert uc == ok[0]


def test_mult_worked_example():
    sol = construct_mult(1, 1, 7, 5, prec=10)
    assert sol.u_c == 2 and sol.c.valuation() == 1
    mod = 5**10
    a, b, c = sol.a.residue, sol.b.residue, sol.c.residue
    assert (a * a + b**3 - pow(c, 7, mod)) % mod == 0


def test_mult_precision_guard():
    with pytest.raises(PreconditionError):
        construct_mult(1, 2, 5, 7, prec=10)
    with pytest.raises(PreconditionError):
        construct_mult(7, 1, 5, 7, prec=8)


def test_mult_lift_coherence():
    rng = random.Random(29)
    for _ in range(60):
        ell = rng.choice([q for q in ELLS if q <= 200])
        p = rng.choice([q for q in PS if q != ell])
        k = rng.choice([1, 2])
        uE = rng.randrange(1, ell)
        n = k * p + 1
        lo = construct_mult(uE, k, p, ell, prec=n)
        hi = construct_mult(uE, k, p, ell, prec=n + 7)
        assert (hi.a.truncate(n), hi.b.truncate(n), hi.c.truncate(n)) == (lo.a, lo.b, lo.c)


def test_mult_twist_class():
    sol = construct_mult(1, 1, 7, 5, prec=10, c6_target=1728 * 3)
    assert sol.twist in (1, 2, 3)


def test_hensel_examples():
    one = PadicInt(7, 12, 1)
    assert hensel_root(2, one) ** 2 == one and hensel_root(3, one) ** 3 == one
    with pytest.raises(ArithmeticError):
        hensel_root(2, PadicInt(7, 5, 3))
    with pytest.raises(PreconditionError):
        hensel_root(2, PadicInt(7, 5, 14))


@given(st.sampled_from(ELLS[:40]), st.integers(1, 30), st.integers(0, 10**12), st.sampled_from([2, 3]))
def test_hensel_root_property(ell, prec, x, r):
    if x % ell == 0:
        return
    target = PadicInt(ell, prec, pow(x, r, ell**prec))
    root = hensel_root(r, target)
    assert pow(root.residue, r, ell**prec) == target.residue


def test_verify_examples():
    for ell in (5, 7, 101):
        for p in (5, 7, 11):
            three, mtwo, one = (PadicInt(ell, 6, v) for v in (3, -2, 1))
            assert verify_ell_primitive(three, mtwo, one, p)
            e = PadicInt(ell, 6, ell)
            assert not verify_ell_primitive(e, e, e, p)
    with pytest.raises(ValueError):
        verify_ell_primitive(PadicInt(5, 3, 1), PadicInt(5, 4, 1), PadicInt(5, 3, 1), 7)


def test_padic_valuation():
    assert PadicInt(5, 4, 0).valuation() == 4
    assert PadicInt(5, 4, 50).valuation() == 2
    assert "v=>=4" in repr(PadicInt(5, 4, 0))
