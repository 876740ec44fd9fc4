"""Integer and prime-field arithmetic kernel."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DEFAULT_TRIAL_BOUND = 1 << 20


class IncompleteFactorization(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    """Primes p <= n by the sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def _check_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise ValueError(f"modulus {p} is not an odd prime")


@dataclass(frozen=True)
class Fp:
    """Element of the prime field F_ell."""

    ell: int
    value: int = field(compare=True)

    def __post_init__(self):
        _check_odd_prime(self.ell)
        object.__setattr__(self, "value", self.value % self.ell)

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.ell != self.ell:
                raise ValueError("field mismatch")
            return other.value
        return other % self.ell

    def __add__(self, other):
        return Fp(self.ell, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.ell, self.value - self._coerce(other))

    def __rsub__(self, other):
        return Fp(self.ell, self._coerce(other) - self.value)

    def __mul__(self, other):
        return Fp(self.ell, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(self.ell, -self.value)

    def __truediv__(self, other):
        return self * Fp(self.ell, self._coerce(other)).inverse()

    def __rtruediv__(self, other):
        return Fp(self.ell, self._coerce(other)) * self.inverse()

    def __pow__(self, e: int):
        return Fp(self.ell, pow(self.value, e, self.ell))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def inverse(self) -> Fp:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_ell")
        return Fp(self.ell, pow(self.value, -1, self.ell))

    def __repr__(self):
        return f"Fp({self.ell}, {self.value})"


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _check_odd_prime(p)
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol by quadratic reciprocity (cross-check path for legendre)."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("n must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_perfect_square(n: int) -> int | None:
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def _split_power(n: int, r: int) -> tuple[int, int]:
    """Write n = r^s * t with r not dividing t."""
    s = 0
    while n % r == 0:
        n //= r
        s += 1
    return s, n


def _non_rth_power(ell: int, r: int) -> int:
    # smallest z with z^((ell-1)/r) != 1
    e = (ell - 1) // r
    for z in range(2, ell):
        if pow(z, e, ell) != 1:
            return z
    raise ArithmeticError("no r-th power non-residue")  # unreachable for r | ell-1


def _sylow_dlog(eps: int, c: int, r: int, s: int, ell: int) -> int:
    """Log of eps to base c in the cyclic group of order r^s, one base-r digit at a time."""
    gamma = Fp(ell, pow(c, r ** (s - 1), ell))
    j = 0
    for i in range(s):
        h = eps * pow(c, -j, ell) % ell
        h = pow(h, r ** (s - 1 - i), ell)
        j += subgroup_dlog(Fp(ell, h), gamma, r) * r**i
    return j


def _root_mod(t: int, r: int, ell: int) -> int | None:
    n = ell - 1
    if n % r:
        return pow(t, pow(r, -1, n), ell)
    if pow(t, n // r, ell) != 1:
        return None
    # Adleman-Manders-Miller; ell - 1 = r^s * q with gcd(r, q) = 1
    s, q = _split_power(n, r)
    x = pow(t, pow(r, -1, q), ell) if q > 1 else 1
    # x^r = t * eps with eps in the Sylow r-subgroup, generated by c
    eps = pow(x, r, ell) * pow(t, -1, ell) % ell
    c = pow(_non_rth_power(ell, r), q, ell)
    j = _sylow_dlog(eps, c, r, s, ell)
    assert j % r == 0
    return x * pow(c, -(j // r), ell) % ell


def rth_root(t: Fp, r: int) -> Fp | None:
    """An r-th root of t in F_ell^*, or None if t is not an r-th power."""
    if not t:
        raise ValueError("rth_root requires t != 0")
    x = _root_mod(t.value, r, t.ell)
    if x is None:
        return None
    assert pow(x, r, t.ell) == t.value
    return Fp(t.ell, x)


def sqrt_mod(t: int, ell: int) -> int | None:
    t %= ell
    if t == 0:
        return 0
    root = rth_root(Fp(ell, t), 2)
    return None if root is None else root.value


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for q, e in self.factors:
            n *= q**e
        return n

    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]


@lru_cache(maxsize=4)
def _trial_primes(bound: int) -> tuple[int, ...]:
    return tuple(primes_upto(bound))


def factor_trial(n: int, bound: int = DEFAULT_TRIAL_BOUND) -> Factorization:
    """Factor by trial division over primes <= bound.

    Raises IncompleteFactorization if a cofactor with no prime factor <= bound
    is composite.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    factors = []
    for q in _trial_primes(bound):
        if q * q > n:
            break
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            factors.append((q, e))
    else:
        if n > 1 and not is_prime(n):
            raise IncompleteFactorization(f"composite cofactor {n} above bound {bound}")
    if n > 1:
        factors.append((n, 1))
    return Factorization(sign, tuple(factors))


def valuation(n: int, q: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def subgroup_dlog(t: Fp, g: Fp, r: int) -> int:
    """Discrete log of t to base g, where g has order r; baby-step giant-step."""
    ell = t.ell
    m = math.isqrt(r - 1) + 1
    baby = {}
    cur = 1
    for j in range(m):
        baby.setdefault(cur, j)
        cur = cur * g.value % ell
    giant = pow(g.value, -m, ell)
    gamma = t.value
    for i in range(m):
        j = baby.get(gamma)
        if j is not None:
            e = (i * m + j) % r
            return e
        gamma = gamma * giant % ell
    raise ValueError(f"{t} is not in the subgroup generated by {g}")
