"""Frobenius traces of reduced curves over F_ell."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import legendre
from .curves import CurveRecord, ReducedCurve, reduce_mod


@dataclass(frozen=True)
class FrobeniusData:
    ell: int
    a_ell: int
    delta_ell: int
    ordinary: bool

    def __post_init__(self):
        assert self.a_ell * self.a_ell <= 4 * self.ell, "Hasse bound violated"
        assert self.delta_ell == self.a_ell**2 - 4 * self.ell
        assert self.delta_ell < 0


def count_points_naive(C: ReducedCurve) -> int:
    """#E(F_ell) = ell + 1 + sum_x (f(x)/ell), one Legendre symbol per x."""
    ell = C.ell
    return ell + 1 + sum(legendre(C.rhs(x), ell) for x in range(ell))


def _vec_powmod(base: np.ndarray, e: int, ell: int) -> np.ndarray:
    result = np.ones_like(base)
    for bit in bin(e)[2:]:
        result = result * result % ell
        if bit == "1":
            result = result * base % ell
    return result


@lru_cache(maxsize=8)
def legendre_table(ell: int) -> np.ndarray:
    """(x/ell) for every residue x, by Euler's criterion vectorised over x."""
    if ell > 3_000_000_000:
        raise ValueError("vectorised character sum needs ell^2 < 2^63")
    x = np.arange(ell, dtype=np.int64)
    euler = _vec_powmod(x, (ell - 1) // 2, ell)
    chi = np.where(euler == 1, 1, -1).astype(np.int8)
    chi[0] = 0
    chi.flags.writeable = False
    return chi


def trace_char_sum(C: ReducedCurve) -> int:
    """a_ell = -sum_x (f(x)/ell)."""
    ell = C.ell
    x = np.arange(ell, dtype=np.int64)
    f = (x * x % ell * x + C.A * x + C.B) % ell
    return -int(legendre_table(ell)[f].sum(dtype=np.int64))


# --- baby-step giant-step order search (optional path) ---------------------


def _ec_add(P, Q, A, ell):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % ell == 0:
            return None
        lam = (3 * x1 * x1 + A) * pow(2 * y1, -1, ell) % ell
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, ell) % ell
    x3 = (lam * lam - x1 - x2) % ell
    return x3, (lam * (x1 - x3) - y1) % ell


def _ec_mul(k, P, A, ell):
    if k < 0:
        k = -k
        P = None if P is None else (P[0], -P[1] % ell)
    R = None
    while k:
        if k & 1:
            R = _ec_add(R, P, A, ell)
        P = _ec_add(P, P, A, ell)
        k >>= 1
    return R


def _points(C: ReducedCurve):
    from .arith import sqrt_mod

    for x in range(C.ell):
        y = sqrt_mod(C.rhs(x), C.ell)
        if y is not None and y != 0:
            yield x, y


def _trace_candidates(C: ReducedCurve, P, bound: int) -> set[int]:
    """Traces a in [-bound, bound] with [ell + 1 - a] P = O."""
    ell, A = C.ell, C.A
    m = math.isqrt(2 * bound) + 1
    baby = {}
    R = None
    for j in range(m):
        key = R
        baby.setdefault(key, []).append(j)
        R = _ec_add(R, P, A, ell)
    # [ell + 1 + bound - i*m - j] P = O  <=>  [ell + 1 + bound - i*m] P = [j] P
    step = _ec_mul(-m, P, A, ell)
    G = _ec_mul(ell + 1 + bound, P, A, ell)
    found = set()
    for i in range(2 * bound // m + 2):
        for j in baby.get(G, ()):
            a = -bound + i * m + j
            if -bound <= a <= bound:
                found.add(a)
        G = _ec_add(G, step, A, ell)
    return found


def trace_bsgs(C: ReducedCurve, max_points: int = 8) -> int | None:
    """Trace from point orders on E and its quadratic twist (Mestre); None if ambiguous."""
    ell = C.ell
    bound = math.isqrt(4 * ell)
    cands = set(range(-bound, bound + 1))
    d = next(z for z in range(2, ell) if legendre(z, ell) == -1)
    twist = C.twist(d)
    gens = (_points(C), _points(twist))
    for _ in range(max_points):
        for sign, gen in zip((1, -1), gens):
            P = next(gen, None)
            if P is None:
                continue
            cands &= {sign * a for a in _trace_candidates(C if sign == 1 else twist, P, bound)}
            if len(cands) == 1:
                return cands.pop()
    return None


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _trace_cached(ainvs: tuple, ell: int, method: str) -> int:
    C = _reduce_ainvs(ainvs, ell)
    if method == "bsgs":
        a = trace_bsgs(C)
        if a is not None:
            return a
    return trace_char_sum(C)


def _reduce_ainvs(ainvs, ell):
    return reduce_mod(CurveRecord("_", ainvs, 1), ell)


def frobenius_data(E: CurveRecord, ell: int, method: str = "sum") -> FrobeniusData:
    """a_ell, Delta_ell and ordinarity; raises BadReduction at bad primes."""
    reduce_mod(E, ell)  # validates ell and good reduction
    a = _trace_cached(E.ainvs, ell, method)
    return FrobeniusData(ell, a, a * a - 4 * ell, a != 0)


def frobenius_data_reduced(C: ReducedCurve) -> FrobeniusData:
    a = trace_char_sum(C)
    return FrobeniusData(C.ell, a, a * a - 4 * C.ell, a != 0)
