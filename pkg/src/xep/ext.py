"""Finite algebras over F_ell for the torsion oracles.

``Residue`` is F_ell[t]/(g); ``QuadAlgebra`` adjoins s with s^2 = z, which
lets a point (t, s) on y^2 = f(x) exist without extracting square roots.
When z is already a square the algebra splits as a product of two fields;
every point handled here keeps its two components negatives of each other,
so equality tests stay meaningful.
"""

from __future__ import annotations

import random

import numpy as np

from . import poly as P

ONE = np.array([1], dtype=np.int64)


class Residue:
    def __init__(self, g: np.ndarray, ell: int):
        self.ell = ell
        self.mod = P.Modulus(g, ell)
        self.degree = self.mod.n
        self._frob_t = None

    def const(self, c: int):
        return P.poly([c], self.ell)

    def gen(self):
        return self.mod.reduce(np.array([0, 1], dtype=np.int64))

    def add(self, a, b):
        return P.add(a, b, self.ell)

    def sub(self, a, b):
        return P.sub(a, b, self.ell)

    def neg(self, a):
        return P.scale(a, -1, self.ell)

    def mul(self, a, b):
        return self.mod.mulmod(a, b)

    def scale(self, a, c):
        return P.scale(a, c, self.ell)

    def pow(self, a, e):
        return self.mod.powmod(a, e)

    def is_zero(self, a):
        return len(a) == 0

    def eq(self, a, b):
        return np.array_equal(a, b)

    def frob(self, a):
        """a^ell, via a(t^ell)."""
        if self._frob_t is None:
            self._frob_t = self.mod.x_power(self.ell)
        acc = a[:0]
        for c in reversed(a.tolist()):
            acc = self.add(self.mul(acc, self._frob_t), self.const(c))
        return acc


class QuadAlgebra:
    """L[s]/(s^2 - z); elements are pairs (u, v) meaning u + v s."""

    def __init__(self, base: Residue, z):
        self.base = base
        self.z = z
        self.ell = base.ell
        self._s_frob = base.pow(z, (self.ell - 1) // 2)

    def const(self, c):
        return (self.base.const(c), self.base.const(0))

    def lift(self, u):
        return (u, self.base.const(0))

    def s(self):
        return (self.base.const(0), self.base.const(1))

    def add(self, a, b):
        B = self.base
        return (B.add(a[0], b[0]), B.add(a[1], b[1]))

    def sub(self, a, b):
        B = self.base
        return (B.sub(a[0], b[0]), B.sub(a[1], b[1]))

    def neg(self, a):
        return (self.base.neg(a[0]), self.base.neg(a[1]))

    def mul(self, a, b):
        B = self.base
        u = B.add(B.mul(a[0], b[0]), B.mul(B.mul(a[1], b[1]), self.z))
        v = B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0]))
        return (u, v)

    def scale(self, a, c):
        return (self.base.scale(a[0], c), self.base.scale(a[1], c))

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def eq(self, a, b):
        return self.base.eq(a[0], b[0]) and self.base.eq(a[1], b[1])

    def frob(self, a):
        # (u + v s)^ell = u^ell + v^ell z^((ell-1)/2) s
        B = self.base
        return (B.frob(a[0]), B.mul(B.frob(a[1]), self._s_frob))


class CurveOver:
    """Projective points on y^2 = x^3 + A x + B over an algebra; None is the identity."""

    def __init__(self, R, A: int, B: int):
        self.R = R
        self.A = A
        self.B = B

    def point(self, x, y):
        return (x, y, self.R.const(1))

    def on_curve(self, Pt) -> bool:
        if Pt is None:
            return True
        R = self.R
        X, Y, Z = Pt
        lhs = R.mul(R.mul(Y, Y), Z)
        Z2 = R.mul(Z, Z)
        rhs = R.add(R.add(R.mul(R.mul(X, X), X), R.scale(R.mul(X, Z2), self.A)), R.scale(R.mul(Z2, Z), self.B))
        return R.eq(lhs, rhs)

    def eq(self, P1, P2) -> bool:
        if P1 is None or P2 is None:
            return P1 is None and P2 is None
        R = self.R
        X1, Y1, Z1 = P1
        X2, Y2, Z2 = P2
        return R.eq(R.mul(X1, Z2), R.mul(X2, Z1)) and R.eq(R.mul(Y1, Z2), R.mul(Y2, Z1))

    def neg(self, Pt):
        if Pt is None:
            return None
        return (Pt[0], self.R.neg(Pt[1]), Pt[2])

    def double(self, Pt):
        if Pt is None:
            return None
        R = self.R
        X, Y, Z = Pt
        if R.is_zero(Y):
            return None
        w = R.add(R.scale(R.mul(Z, Z), self.A), R.scale(R.mul(X, X), 3))
        s = R.mul(Y, Z)
        Bq = R.mul(R.mul(X, Y), s)
        h = R.sub(R.mul(w, w), R.scale(Bq, 8))
        X3 = R.scale(R.mul(h, s), 2)
        s2 = R.mul(s, s)
        Y3 = R.sub(R.mul(w, R.sub(R.scale(Bq, 4), h)), R.scale(R.mul(R.mul(Y, Y), s2), 8))
        Z3 = R.scale(R.mul(s2, s), 8)
        return (X3, Y3, Z3)

    def add(self, P1, P2):
        if P1 is None:
            return P2
        if P2 is None:
            return P1
        R = self.R
        X1, Y1, Z1 = P1
        X2, Y2, Z2 = P2
        Y1Z2, Y2Z1 = R.mul(Y1, Z2), R.mul(Y2, Z1)
        X1Z2, X2Z1 = R.mul(X1, Z2), R.mul(X2, Z1)
        if R.eq(X1Z2, X2Z1):
            if R.eq(Y1Z2, Y2Z1):
                return self.double(P1)
            return None
        u = R.sub(Y2Z1, Y1Z2)
        v = R.sub(X2Z1, X1Z2)
        Z1Z2 = R.mul(Z1, Z2)
        v2 = R.mul(v, v)
        v3 = R.mul(v2, v)
        v2X1Z2 = R.mul(v2, X1Z2)
        Aq = R.sub(R.sub(R.mul(R.mul(u, u), Z1Z2), v3), R.scale(v2X1Z2, 2))
        X3 = R.mul(v, Aq)
        Y3 = R.sub(R.mul(u, R.sub(v2X1Z2, Aq)), R.mul(v3, Y1Z2))
        Z3 = R.mul(v3, Z1Z2)
        return (X3, Y3, Z3)

    def sub(self, P1, P2):
        return self.add(P1, self.neg(P2))

    def mul(self, k: int, Pt):
        if k < 0:
            return self.mul(-k, self.neg(Pt))
        acc = None
        while k:
            if k & 1:
                acc = self.add(acc, Pt)
            Pt = self.double(Pt)
            k >>= 1
        return acc

    def frob(self, Pt):
        if Pt is None:
            return None
        return tuple(self.R.frob(c) for c in Pt)


# --- factorisation over F_ell -------------------------------------------------


def _monic(f, ell):
    return P.scale(f, pow(int(f[-1]), -1, ell), ell)


def distinct_degree(f, ell):
    """[(product of all irreducible factors of degree d, d)] for squarefree f."""
    f = _monic(f, ell)
    out = []
    x = np.array([0, 1], dtype=np.int64)
    h = x
    d = 0
    while P.degree(f) >= 2 * (d + 1):
        d += 1
        M = P.Modulus(f, ell)
        h = M.powmod(h, ell)
        g = P.gcd(P.sub(h, x, ell), f, ell)
        if P.degree(g) > 0:
            out.append((g, d))
            f = P.divmod_poly(f, g, ell)[0]
            h = P.divmod_poly(h, f, ell)[1] if P.degree(f) > 0 else h
    if P.degree(f) > 0:
        out.append((_monic(f, ell), P.degree(f)))
    return out


def equal_degree(f, d, ell, rng):
    """Split f (product of distinct degree-d irreducibles) by Cantor-Zassenhaus."""
    n = P.degree(f)
    if n == d:
        return [_monic(f, ell)]
    M = P.Modulus(f, ell)
    e = (ell**d - 1) // 2
    while True:
        a = P.trim(np.array([rng.randrange(ell) for _ in range(n)], dtype=np.int64))
        if P.degree(a) < 1:
            continue
        b = P.sub(M.powmod(a, e), ONE, ell)
        g = P.gcd(b, f, ell)
        if 0 < P.degree(g) < n:
            return equal_degree(g, d, ell, rng) + equal_degree(P.divmod_poly(f, g, ell)[0], d, ell, rng)


def factor_squarefree(f, ell, seed: int = 0):
    """Monic irreducible factors of a squarefree f, sorted by (degree, coefficients)."""
    if P.degree(P.gcd(f, P.derivative(f, ell), ell)) > 0:
        raise ValueError("polynomial is not squarefree")
    rng = random.Random(seed)
    factors = []
    for g, d in distinct_degree(f, ell):
        factors.extend(equal_degree(g, d, ell, rng))
    return sorted(factors, key=lambda g: (len(g), g.tolist()))


def is_irreducible(f, ell) -> bool:
    parts = distinct_degree(f, ell)
    return len(parts) == 1 and parts[0][1] == P.degree(f)
