"""Dense univariate polynomials over F_ell on numpy int64 arrays (lowest degree first).

Multiplication dispatches on size: schoolbook, then Karatsuba, then Kronecker
substitution through GMP integers. Reduction modulo a fixed polynomial uses a
precomputed Newton inverse of the reversed modulus.

Coefficients are int64, so ell must stay below 2^31 (products of two residues
must fit); this is far above anything the criterion needs.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import numpy as np

SCHOOLBOOK_CUTOFF = 64
KRONECKER_CUTOFF = 1024

_I64_MAX = (1 << 63) - 1
MAX_ELL = 1 << 31


def _check_ell(ell):
    if not 2 <= ell < MAX_ELL:
        raise ValueError(f"modulus {ell} outside [2, 2^31)")


def poly(coeffs, ell: int) -> np.ndarray:
    return trim(np.asarray([c % ell for c in coeffs], dtype=np.int64))


def trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    if len(nz) == 0:
        return a[:0]
    return a[: nz[-1] + 1]


def degree(a: np.ndarray) -> int:
    return len(a) - 1


def is_zero(a: np.ndarray) -> bool:
    return len(a) == 0


def add(a, b, ell):
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] += b
    return trim(out % ell)


def sub(a, b, ell):
    n = max(len(a), len(b))
    out = np.zeros(n, dtype=np.int64)
    out[: len(a)] += a
    out[: len(b)] -= b
    return trim(out % ell)


def scale(a, c, ell):
    c %= ell
    if c == 0:
        return a[:0]
    return trim(a * c % ell)


def shift(a, k):
    """Multiply by x^k."""
    if len(a) == 0:
        return a
    return np.concatenate([np.zeros(k, dtype=np.int64), a])


def _fits_convolve(n, ell):
    return n * (ell - 1) ** 2 <= _I64_MAX


def mul_schoolbook(a, b, ell):
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    if _fits_convolve(min(len(a), len(b)), ell):
        return trim(np.convolve(a, b) % ell)
    out = [0] * (len(a) + len(b) - 1)
    bl = [int(v) for v in b]
    for i, ai in enumerate(a.tolist()):
        if ai:
            for j, bj in enumerate(bl):
                out[i + j] += ai * bj
    return trim(np.array([v % ell for v in out], dtype=np.int64))


def mul_karatsuba(a, b, ell, cutoff=SCHOOLBOOK_CUTOFF):
    n = max(len(a), len(b))
    if min(len(a), len(b)) <= cutoff:
        return mul_schoolbook(a, b, ell)
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = mul_karatsuba(trim(a0), trim(b0), ell, cutoff)
    z2 = mul_karatsuba(a1, b1, ell, cutoff)
    mid = mul_karatsuba(add(a0, a1, ell), add(b0, b1, ell), ell, cutoff)
    z1 = sub(sub(mid, z0, ell), z2, ell)
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    out[: len(z0)] += z0
    out[h : h + len(z1)] += z1
    out[2 * h : 2 * h + len(z2)] += z2
    return trim(out % ell)


def _slot_bytes(n, ell):
    bits = (n * (ell - 1) ** 2).bit_length() + 1
    return (bits + 7) // 8


def _pack(a, k):
    raw = np.ascontiguousarray(a.astype("<u8")).view(np.uint8).reshape(-1, 8)
    if k <= 8:
        body = raw[:, :k]
    else:
        body = np.zeros((len(a), k), dtype=np.uint8)
        body[:, :8] = raw
    return gmpy2.mpz(int.from_bytes(np.ascontiguousarray(body).tobytes(), "little"))


def _unpack(z, n_out, k, ell):
    buf = int(z).to_bytes(n_out * k, "little")
    cells = np.frombuffer(buf, dtype=np.uint8).reshape(n_out, k)
    lo = np.zeros((n_out, 8), dtype=np.uint8)
    lo[:, : min(k, 8)] = cells[:, :8]
    out = lo.view("<u8").reshape(n_out) % np.uint64(ell)
    if k > 8:
        hi = np.zeros((n_out, 8), dtype=np.uint8)
        hi[:, : k - 8] = cells[:, 8:]
        hi = hi.view("<u8").reshape(n_out) % np.uint64(ell)
        out = (out + hi * np.uint64(pow(2, 64, ell))) % np.uint64(ell)
    return out.astype(np.int64)


def mul_kronecker(a, b, ell):
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    k = _slot_bytes(min(len(a), len(b)), ell)
    if k > 16:
        return mul_karatsuba(a, b, ell)
    za = _pack(a, k)
    zb = za if b is a else _pack(b, k)
    n_out = len(a) + len(b) - 1
    return trim(_unpack(za * zb, n_out, k, ell))


def mul(a, b, ell):
    _check_ell(ell)
    m = min(len(a), len(b))
    if m <= SCHOOLBOOK_CUTOFF:
        return mul_schoolbook(a, b, ell)
    if m <= KRONECKER_CUTOFF:
        return mul_karatsuba(a, b, ell)
    return mul_kronecker(a, b, ell)


def sqr(a, ell):
    return mul(a, a, ell)


def derivative(a, ell):
    if len(a) <= 1:
        return a[:0]
    return trim(a[1:] * np.arange(1, len(a), dtype=np.int64) % ell)


def divmod_poly(a, b, ell):
    """Long division, vectorised over the divisor; reductions are deferred."""
    _check_ell(ell)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = (a % ell).astype(np.int64)
    db = len(b) - 1
    if len(r) <= db:
        return a[:0], trim(r)
    inv_lead = pow(int(b[-1]), -1, ell)
    q = np.zeros(len(r) - db, dtype=np.int64)
    tmp = np.empty(len(b), dtype=np.int64)
    # each step adds at most (ell-1)^2 to a coefficient's magnitude
    budget = _I64_MAX // ((ell - 1) ** 2 + ell) - 1
    steps = 0
    for i in range(len(r) - 1, db - 1, -1):
        c = int(r[i]) * inv_lead % ell
        if c:
            q[i - db] = c
            seg = r[i - db : i + 1]
            np.multiply(b, c, out=tmp)
            np.subtract(seg, tmp, out=seg)
            steps += 1
            if steps >= budget:
                r %= ell
                steps = 0
    return trim(q), trim(r[:db] % ell)


def gcd(a, b, ell):
    """Monic gcd by the Euclidean algorithm."""
    a, b = trim(a % ell), trim(b % ell)
    while len(b):
        a, b = b, divmod_poly(a, b, ell)[1]
    if len(a) == 0:
        return a
    return scale(a, pow(int(a[-1]), -1, ell), ell)


def evaluate(a, x, ell):
    acc = 0
    for c in reversed(a.tolist()):
        acc = (acc * x + c) % ell
    return acc


def series_inverse(f, n, ell):
    """g with f*g = 1 mod x^n, by Newton iteration; f[0] must be a unit."""
    g = np.array([pow(int(f[0]), -1, ell)], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        fg = mul(f[:k], g, ell)[:k]
        corr = (-fg) % ell
        if len(corr):
            corr[0] = (corr[0] + 2) % ell
        else:
            corr = np.array([2], dtype=np.int64)
        g = mul(g, trim(corr), ell)[:k]
        g = np.pad(g, (0, max(0, k - len(g))))
    return trim(g)


@dataclass
class Modulus:
    """Fixed modulus for repeated reduction (quotient ring F_ell[x]/(m))."""

    m: np.ndarray
    ell: int

    def __post_init__(self):
        _check_ell(self.ell)
        self.m = trim(self.m % self.ell)
        if len(self.m) < 2:
            raise ValueError("modulus must have positive degree")
        self.n = len(self.m) - 1
        rev = self.m[::-1].copy()
        self._rev_inv = series_inverse(rev, self.n, self.ell)

    def reduce(self, a):
        n, ell = self.n, self.ell
        if len(a) <= n:
            return a
        if len(a) > 2 * n + 1:
            return divmod_poly(a, self.m, ell)[1]
        qlen = len(a) - n
        rev_a = trim(a[::-1][:qlen].copy())
        q_rev = mul(rev_a, self._rev_inv[:qlen], ell)[:qlen]
        q_rev = np.pad(q_rev, (0, qlen - len(q_rev)))
        q = trim(q_rev[::-1].copy())
        qm = mul(q, self.m, ell)
        low = a[:n].copy()
        low[: min(n, len(qm))] -= qm[:n]
        return trim(low % ell)

    def mulmod(self, a, b):
        return self.reduce(mul(a, b, self.ell))

    def sqrmod(self, a):
        return self.reduce(sqr(a, self.ell))

    def powmod(self, a, e: int):
        result = np.array([1], dtype=np.int64)
        base = self.reduce(a)
        for bit in bin(e)[2:]:
            result = self.sqrmod(result)
            if bit == "1":
                result = self.mulmod(result, base)
        return result

    def x_power(self, e: int):
        """x^e mod m; multiplication by x is a shift."""
        result = np.array([1], dtype=np.int64)
        for bit in bin(e)[2:]:
            result = self.sqrmod(result)
            if bit == "1":
                result = self.reduce(shift(result, 1))
        return result
