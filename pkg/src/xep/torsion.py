"""Division polynomials and the action of Frobenius on E[p].

Division polynomials are stored in the convention f_n = psi_n for odd n and
f_n = psi_n / (2y) for even n, so every entry is a polynomial in x alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly as P
from .count import FrobeniusData, frobenius_data_reduced
from .curves import PreconditionError, ReducedCurve
from .ext import CurveOver, QuadAlgebra, Residue, factor_squarefree


class DivisionPolys:
    """Lazily computed f_n, optionally reduced modulo a fixed polynomial.

    Only the indices needed by the doubling recurrence are ever computed, so
    f_n costs O(log n) ring products.
    """

    def __init__(self, curve: ReducedCurve, modulus: P.Modulus | None = None):
        self.curve = curve
        self.ell = ell = curve.ell
        self.modulus = modulus
        A, B = curve.A, curve.B
        F = P.poly([B, A, 0, 1], ell)
        self.F = self._red(F)
        self.F2x16 = self._mul(P.scale(self.F, 16, ell), self.F)
        base = {
            0: P.poly([0], ell),
            1: P.poly([1], ell),
            2: P.poly([1], ell),
            3: P.poly([-A * A, 12 * B, 6 * A, 0, 3], ell),
            4: P.poly([-2 * (A**3 + 8 * B * B), -8 * A * B, -10 * A * A, 40 * B, 10 * A, 0, 2], ell),
        }
        self._cache = {k: self._red(v) for k, v in base.items()}

    def _red(self, a):
        return a if self.modulus is None else self.modulus.reduce(a)

    def _mul(self, a, b):
        if self.modulus is None:
            return P.mul(a, b, self.ell)
        return self.modulus.mulmod(a, b)

    def _sqr(self, a):
        return self._mul(a, a)

    def __getitem__(self, n: int):
        if n < 0:
            # psi_{-n} = -psi_n
            return P.scale(self[-n], -1, self.ell)
        if n not in self._cache:
            self._cache[n] = self._compute(n)
        return self._cache[n]

    def _compute(self, n):
        ell = self.ell
        m = n // 2
        if n % 2:
            fm3 = self._mul(self._sqr(self[m]), self[m])
            fm1_3 = self._mul(self._sqr(self[m + 1]), self[m + 1])
            left = self._mul(self[m + 2], fm3)
            right = self._mul(self[m - 1], fm1_3)
            if m % 2 == 0:
                left = self._mul(left, self.F2x16)
            else:
                right = self._mul(right, self.F2x16)
            return P.sub(left, right, ell)
        return self._mul(self[m], self.D(m))

    def D(self, m):
        """f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2, so that f_{2m} = f_m * D(m)."""
        a = self._mul(self[m + 2], self._sqr(self[m - 1]))
        b = self._mul(self[m - 2], self._sqr(self[m + 1]))
        return P.sub(a, b, self.ell)

    def x_poly(self, n: int):
        """Polynomial whose roots are the x-coordinates of the nonzero n-torsion."""
        if n % 2:
            return self[n]
        return self._mul(self.F, self[n])

    def psi(self, n: int) -> list:
        return [self[k] for k in range(n + 1)]


def division_poly(C: ReducedCurve, n: int) -> DivisionPolys:
    if n < 0:
        raise ValueError("n must be >= 0")
    dp = DivisionPolys(C)
    dp.psi(n)
    return dp


def lambda_for(a_ell: int, p: int) -> int:
    return a_ell * pow(2, -1, p) % p


def frob_is_scalar(C: ReducedCurve, p: int, lam: int, a_ell: int | None = None, check_unit: bool = True) -> bool:
    """True iff (x, y) -> (x^ell, y^ell) acts on E[p] as multiplication by lam.

    Both coordinates are compared in F_ell[x]/(psi_p) after clearing the
    denominators of the multiplication-by-lam formulas.
    """
    ell = C.ell
    if p < 3 or p == ell:
        raise PreconditionError("need an odd prime p != ell")
    if a_ell is None:
        a_ell = frobenius_data_reduced(C).a_ell
    lam %= p
    if (2 * lam - a_ell) % p or (lam * lam - ell) % p:
        raise PreconditionError(f"lambda={lam} is not a double root of x^2 - {a_ell}x + {ell} mod {p}")
    psi_p = DivisionPolys(C)[p]
    M = P.Modulus(psi_p, ell)
    dp = DivisionPolys(C, M)
    # [-k] = -[k]: use the representative in [1, (p-1)/2] and flip the y-part
    k, sign = (lam, 1) if lam <= (p - 1) // 2 else (p - lam, -1)
    fk = dp[k]
    if check_unit and P.degree(P.gcd(fk, psi_p, ell)) != 0:
        raise ArithmeticError(f"psi_{k} is not a unit modulo psi_{p}")
    F = dp.F
    # x([k]P) = x - num/den
    if k % 2:
        den = dp._sqr(fk)
        num = dp._mul(P.scale(F, 4, ell), dp._mul(dp[k - 1], dp[k + 1]))
    else:
        den = dp._mul(P.scale(F, 4, ell), dp._sqr(fk))
        num = dp._mul(dp[k - 1], dp[k + 1])
    x_ell = M.x_power(ell)
    x = M.reduce(np.array([0, 1], dtype=np.int64))
    lhs = dp._mul(x_ell, den)
    rhs = P.sub(dp._mul(x, den), num, ell)
    if not np.array_equal(lhs, rhs):
        return False
    # y([k]P) = y * D_k / f_k^3 (odd k) or y * D_k / (16 F^2 f_k^3) (even k); y^ell = y F^((ell-1)/2)
    den_y = dp._mul(dp._sqr(fk), fk)
    if k % 2 == 0:
        den_y = dp._mul(den_y, dp.F2x16)
    y_ell = M.powmod(F, (ell - 1) // 2)
    lhs = dp._mul(y_ell, den_y)
    rhs = P.scale(dp.D(k), sign, ell)
    return bool(np.array_equal(lhs, rhs))


def frob_order_divisible(C: ReducedCurve, fd: FrobeniusData, p: int, mode: str = "exact") -> tuple[bool, str]:
    """Does p divide the order of Frobenius acting on E[p]?

    Returns (answer, method). Methods: "trivial" when p does not divide
    Delta_ell, "shortcut" when v_p(Delta_ell) = 1 and the mode allows it,
    otherwise "exact" (division-polynomial scalar test).
    """
    if mode not in ("exact", "shortcut"):
        raise ValueError(f"unknown mode {mode!r}")
    if not fd.ordinary:
        raise PreconditionError("frob_order_divisible needs ordinary reduction")
    if p < 3 or p == fd.ell:
        raise PreconditionError("need an odd prime p != ell")
    delta = fd.delta_ell
    if delta % p:
        return False, "trivial"
    # Delta_ell = b_E^2 * disc(End); v_p(Delta_ell) = 1 rules out p | b_E
    if mode == "shortcut" and delta % (p * p):
        return True, "shortcut"
    lam = lambda_for(fd.a_ell, p)
    return not frob_is_scalar(C, p, lam, fd.a_ell), "exact"


# --- brute-force oracle ---------------------------------------------------------


@dataclass(frozen=True)
class TorsionMatrix:
    """Matrix of Frobenius on a basis of E[p], columns are images of basis vectors."""

    p: int
    ell: int
    entries: tuple[tuple[int, int], tuple[int, int]]

    def trace(self) -> int:
        return (self.entries[0][0] + self.entries[1][1]) % self.p

    def det(self) -> int:
        (a, b), (c, d) = self.entries
        return (a * d - b * c) % self.p

    def order(self) -> int:
        p = self.p
        (a, b), (c, d) = self.entries
        cur = (a, b, c, d)
        for k in range(1, p**4):
            if cur == (1, 0, 0, 1):
                return k
            w, x, y, z = cur
            cur = ((w * a + x * c) % p, (w * b + x * d) % p, (y * a + z * c) % p, (y * b + z * d) % p)
        raise ArithmeticError("matrix is not invertible")


def torsion_points_from_factor(C: ReducedCurve, g, seed_point=True):
    """Curve over L[s]/(s^2 - f(t)) with L = F_ell[t]/(g), and the point (t, s)."""
    L = Residue(g, C.ell)
    t = L.gen()
    z = L.add(L.add(L.mul(L.mul(t, t), t), L.scale(t, C.A)), L.const(C.B))
    if L.is_zero(z):
        raise ValueError("g divides x^3 + Ax + B: its roots are 2-torsion with y = 0")
    R = QuadAlgebra(L, z)
    E = CurveOver(R, C.A, C.B)
    return E, E.point(R.lift(t), R.s())


def torsion_matrix_oracle(C: ReducedCurve, p: int, seed: int = 0) -> TorsionMatrix:
    """Frobenius on E[p] from explicit points, without using the characteristic polynomial.

    For each irreducible factor g of psi_p, P = (t, s) is a p-torsion point. If
    Frob(P) is not a multiple of P then (P, Frob P) is a basis and Frob^2 P is
    located in it by search; if every P is an eigenvector, Frobenius is scalar.
    """
    ell = C.ell
    if p > 13 or ell > 200:
        raise ValueError("oracle limited to p <= 13 and ell <= 200")
    if p < 3 or p == ell:
        raise ValueError("need an odd prime p != ell")
    psi_p = DivisionPolys(C)[p]
    eigen = set()
    for g in factor_squarefree(psi_p, ell, seed):
        E, Pt = torsion_points_from_factor(C, g)
        mults = [None, Pt]
        for _ in range(p - 2):
            mults.append(E.add(mults[-1], Pt))
        assert E.add(mults[-1], Pt) is None, "point is not p-torsion"
        FP = E.frob(Pt)
        hit = [i for i in range(1, p) if E.eq(FP, mults[i])]
        if hit:
            eigen.add(hit[0])
            continue
        F2P = E.frob(FP)
        fmults = [None, FP]
        for _ in range(p - 2):
            fmults.append(E.add(fmults[-1], FP))
        for c1 in range(p):
            T = E.sub(F2P, fmults[c1])
            for c0 in range(p):
                if E.eq(T, mults[c0]):
                    return TorsionMatrix(p, ell, ((0, c0), (1, c1)))
        raise ArithmeticError("Frob^2 P not in the span of P, Frob P")
    if len(eigen) != 1:
        raise ArithmeticError(f"every point is an eigenvector but eigenvalues differ: {eigen}")
    lam = eigen.pop()
    return TorsionMatrix(p, ell, ((lam, 0), (0, lam)))
