"""Constructing ell-primitive solutions of x^2 + y^3 = z^p with a prescribed Frey curve.

Two branches: a target with good reduction is matched over F_ell by scaling
its short model; a target with multiplicative reduction is matched on the
j-invariant over Z_ell, to finite precision, by Hensel lifting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import Fp, is_prime, legendre, rth_root, subgroup_dlog
from .curves import PreconditionError

DEFAULT_PRECISION = 8


@dataclass(frozen=True)
class PadicInt:
    """Element of Z_ell known modulo ell^prec."""

    ell: int
    prec: int
    residue: int

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.ell**self.prec)

    @property
    def modulus(self) -> int:
        return self.ell**self.prec

    def _other(self, other) -> int:
        if isinstance(other, PadicInt):
            if (other.ell, other.prec) != (self.ell, self.prec):
                raise ValueError("ell or precision mismatch")
            return other.residue
        return int(other)

    def _new(self, r):
        return PadicInt(self.ell, self.prec, r)

    def __add__(self, other):
        return self._new(self.residue + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.residue - self._other(other))

    def __rsub__(self, other):
        return self._new(self._other(other) - self.residue)

    def __mul__(self, other):
        return self._new(self.residue * self._other(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def __pow__(self, e: int):
        return self._new(pow(self.residue, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, PadicInt):
            return (self.ell, self.prec, self.residue) == (other.ell, other.prec, other.residue)
        return self.residue == int(other) % self.modulus

    def __hash__(self):
        return hash((self.ell, self.prec, self.residue))

    def is_zero(self) -> bool:
        return self.residue == 0

    def valuation(self) -> int:
        """v_ell; equals prec when the element is 0 to working precision (meaning >= prec)."""
        if self.residue == 0:
            return self.prec
        v, r = 0, self.residue
        while r % self.ell == 0:
            r //= self.ell
            v += 1
        return v

    def is_unit(self) -> bool:
        return self.residue % self.ell != 0

    def inverse(self) -> PadicInt:
        if not self.is_unit():
            raise ZeroDivisionError("only units are invertible")
        return self._new(pow(self.residue, -1, self.modulus))

    def truncate(self, prec: int) -> PadicInt:
        if prec > self.prec:
            raise ValueError("cannot raise precision by truncation")
        return PadicInt(self.ell, prec, self.residue)

    def to_dict(self) -> dict:
        return {"ell": self.ell, "N": self.prec, "residue": self.residue}

    def __repr__(self):
        v = self.valuation()
        tag = f">={v}" if self.residue == 0 else str(v)
        return f"PadicInt({self.residue} mod {self.ell}^{self.prec}, v={tag})"


def hensel_root(r: int, target: PadicInt, prec: int | None = None) -> PadicInt:
    """x with x^r = target mod ell^prec, for r in {2, 3} and a unit target."""
    ell = target.ell
    prec = target.prec if prec is None else prec
    if r not in (2, 3):
        raise ValueError("r must be 2 or 3")
    if ell < 5:
        raise PreconditionError("Hensel lifting here needs ell >= 5")
    if prec > target.prec:
        raise ValueError("target known to lower precision than requested")
    if not target.is_unit():
        raise PreconditionError("target must be a unit")
    root = rth_root(Fp(ell, target.residue), r)
    if root is None:
        raise ArithmeticError(f"{target.residue % ell} has no {r}-th root mod {ell}")
    x, k = root.value, 1
    t = target.residue
    # Newton: x <- x - (x^r - t) / (r x^(r-1)); precision doubles each step
    while k < prec:
        k = min(2 * k, prec)
        mod = ell**k
        fx = (pow(x, r, mod) - t) % mod
        dfx = r * pow(x, r - 1, mod) % mod
        x = (x - fx * pow(dfx, -1, mod)) % mod
    out = PadicInt(ell, prec, x)
    assert out**r == target.truncate(prec)
    return out


def verify_ell_primitive(a: PadicInt, b: PadicInt, c: PadicInt, p: int) -> bool:
    if len({(x.ell, x.prec) for x in (a, b, c)}) != 1:
        raise ValueError("a, b, c must share ell and precision")
    if a * a + b**3 != c**p:
        return False
    return min(a.valuation(), b.valuation(), c.valuation()) == 0


# --- good reduction ---------------------------------------------------------------


@dataclass(frozen=True)
class GoodSolution:
    ell: int
    p: int
    abar: int
    bbar: int
    cbar: int
    u: int

    def check(self, A: int, B: int) -> None:
        ell, p = self.ell, self.p
        a, b, c, u = self.abar, self.bbar, self.cbar, self.u
        assert (a * a + b**3 - pow(c, p, ell)) % ell == 0
        assert c % ell and (a % ell or b % ell)
        assert (3 * b - A * u**4) % ell == 0 and (-2 * a - B * u**6) % ell == 0

    def to_dict(self) -> dict:
        return {"ell": self.ell, "p": self.p, "a": self.abar, "b": self.bbar, "c": self.cbar, "u": self.u}


def _check_branch_inputs(ell: int, p: int) -> None:
    if not is_prime(ell) or ell < 5:
        raise PreconditionError("ell must be a prime >= 5")
    if not is_prime(p) or p <= 3:
        raise PreconditionError("p must be a prime > 3")
    if p == ell:
        raise PreconditionError("p must differ from ell")


def good_alpha(A: int, B: int, ell: int) -> int:
    """B^2/4 + A^3/27, the value of a^2 + b^3 at u = 1."""
    return (B * B * pow(4, -1, ell) + A**3 * pow(27, -1, ell)) % ell


def _pth_power_nonresidue(ell: int, p: int) -> int:
    e = (ell - 1) // p
    return next(z for z in range(2, ell) if pow(z, e, ell) != 1)


def construct_good(A: int, B: int, ell: int, p: int) -> GoodSolution:
    """Solution mod ell whose Frey curve is y^2 = x^3 + A u^4 x + B u^6."""
    _check_branch_inputs(ell, p)
    if (4 * A**3 + 27 * B * B) % ell == 0:
        raise PreconditionError("singular curve")
    alpha = good_alpha(A, B, ell)
    assert alpha != 0
    u = 1
    if (ell - 1) % p == 0:
        # pick u = z^e with alpha * u^12 in the kernel of x -> x^((ell-1)/p)
        z = _pth_power_nonresidue(ell, p)
        e = (ell - 1) // p
        zeta = Fp(ell, pow(z, e, ell))
        d = subgroup_dlog(Fp(ell, pow(alpha, e, ell)), zeta, p)
        u = pow(z, -d * pow(12, -1, p) % p, ell)
    abar = -B * pow(2, -1, ell) * pow(u, 6, ell) % ell
    bbar = A * pow(3, -1, ell) * pow(u, 4, ell) % ell
    t = (abar * abar + bbar**3) % ell
    assert t == alpha * pow(u, 12, ell) % ell
    root = rth_root(Fp(ell, t), p)
    assert root is not None
    sol = GoodSolution(ell, p, abar, bbar, root.value, u)
    sol.check(A, B)
    return sol


def lift_good(sol: GoodSolution, prec: int) -> tuple[PadicInt, PadicInt, PadicInt]:
    """Canonical lifts of (abar, bbar, cbar); any lift is ell-primitive, so a^2 + b^3 = c^p only mod ell."""
    return tuple(PadicInt(sol.ell, prec, v) for v in (sol.abar, sol.bbar, sol.cbar))


# --- multiplicative reduction --------------------------------------------------------


@dataclass(frozen=True)
class MultSolution:
    ell: int
    p: int
    k: int
    a: PadicInt
    b: PadicInt
    c: PadicInt
    u_c: int
    u_E0: PadicInt
    twist: int | None = None  # 1, or a non-square unit, when the target's c6 is known

    def j_invariant(self) -> tuple[PadicInt, int]:
        """j(F_{a,b}) = 12^3 b^3 / c^p as (unit part, valuation)."""
        uc = PadicInt(self.ell, self.a.prec, self.u_c)
        unit = 1728 * self.b**3 * (uc**self.p).inverse()
        return unit, -self.k * self.p

    def check(self) -> None:
        a, b, c, p = self.a, self.b, self.c, self.p
        assert a.is_unit() and b.is_unit()
        assert c.valuation() == self.k
        assert a * a + b**3 == c**p
        uc = PadicInt(self.ell, a.prec, self.u_c)
        assert 1728 * b**3 == self.u_E0 * uc**p
        assert a * a == c**p - self.u_E0 * uc**p * PadicInt(self.ell, a.prec, 1728).inverse()
        unit, v = self.j_invariant()
        assert unit == self.u_E0 and v == -self.k * p

    def to_dict(self) -> dict:
        return {
            "ell": self.ell, "p": self.p, "k": self.k, "N": self.a.prec,
            "a": self.a.residue, "b": self.b.residue, "c": self.c.residue,
            "u_c": self.u_c, "u_E0": self.u_E0.residue, "twist": self.twist,
        }


def find_uc(u_E0: int, ell: int, p: int) -> int:
    """Smallest u_c in F_ell^* with u_E0 u_c^p a cube and -u_E0 u_c^p / 3 a square."""
    u_E0 %= ell
    for uc in range(1, ell):
        t = u_E0 * pow(uc, p, ell) % ell
        square = legendre(-t * pow(3, -1, ell), ell) == 1
        if (ell - 1) % 3:
            # every unit is a cube
            ok = square
        else:
            # -1/3 is a square, so the pair of conditions is "t is a sixth power"
            ok = pow(t, (ell - 1) // 6, ell) == 1
            assert ok == (square and pow(t, (ell - 1) // 3, ell) == 1)
        if ok:
            return uc
    raise ArithmeticError("no admissible u_c")  # excluded by gcd(6, p) = 1


def construct_mult(u_E0: int | PadicInt, k: int, p: int, ell: int, prec: int = DEFAULT_PRECISION, c6_target: int | None = None) -> MultSolution:
    """Solution with v(a) = v(b) = 0, c = u_c ell^k and j(F_{a,b}) = u_E0 ell^(-kp)."""
    _check_branch_inputs(ell, p)
    if k < 1:
        raise PreconditionError("k must be positive")
    if prec < 2:
        raise PreconditionError("precision must be >= 2")
    if prec <= k * p:
        raise PreconditionError(f"precision {prec} must exceed k*p = {k * p} so that c^p is not 0 mod ell^N")
    uE = u_E0 if isinstance(u_E0, PadicInt) else PadicInt(ell, prec, u_E0)
    if uE.prec < prec:
        raise ValueError("u_E0 known to lower precision than requested")
    uE = uE.truncate(prec)
    if not uE.is_unit():
        raise PreconditionError("u_E0 must be a unit")
    uc = find_uc(uE.residue, ell, p)
    U = PadicInt(ell, prec, uc)
    inv1728 = PadicInt(ell, prec, 1728).inverse()
    b = hensel_root(3, uE * U**p * inv1728, prec)
    c = U * ell**k
    a = hensel_root(2, c**p - b**3, prec)
    twist = None
    if c6_target is not None:
        # c6 of y^2 = x^3 + 3bx - 2a is 1728 a; twists change c6 by a square class
        ratio = 1728 * a.residue * pow(c6_target, -1, ell) % ell
        twist = 1 if legendre(ratio, ell) == 1 else next(z for z in range(2, ell) if legendre(z, ell) == -1)
    sol = MultSolution(ell, p, k, a, b, c, uc, uE, twist)
    sol.check()
    return sol
