"""Decide whether X_E^-(p) has Q_ell-points at a good-reduction prime ell."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .arith import factor_trial, is_perfect_square, is_prime, legendre
from .count import FrobeniusData, frobenius_data
from .curves import CurveRecord, PreconditionError, good_reduction, reduce_mod
from .torsion import frob_order_divisible

EMPTY = "Empty"
NONEMPTY = "NonEmpty"
MODES = ("exact", "shortcut")


@dataclass
class CriterionReport:
    label: str
    ell: int
    p: int
    mode: str
    cond1: bool
    cond5: bool | None = None
    ordinary: bool | None = None
    a_ell: int | None = None
    delta_ell: int | None = None
    cond2: bool | None = None
    s: int | None = None
    m: int | None = None
    cond4: bool | None = None
    delta_factors: list[list[int]] | None = None
    legendre_values: list[list[int]] | None = None
    q_equals_p: bool | None = None
    cond3: bool | None = None
    cond3_method: str | None = None
    real_points: bool = True  # X_E^-(p)(R) is never empty
    verdict: str = NONEMPTY
    failed: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict) -> CriterionReport:
        return cls(**doc)


def condition4(delta_ell: int, ell: int, p: int) -> tuple[bool, list[list[int]]]:
    """Every prime q != ell dividing Delta_ell must have (q/p) != -1.

    Returns the verdict and [q, (q/p)] for each prime examined.
    """
    fac = factor_trial(delta_ell)
    witnesses = [[q, legendre(q, p)] for q in fac.primes() if q != ell]
    return all(sym != -1 for _, sym in witnesses), witnesses


def _check_inputs(E: CurveRecord, ell: int, p: int, mode: str) -> None:
    if mode not in MODES:
        raise PreconditionError(f"mode must be one of {MODES}")
    if not (is_prime(ell) and is_prime(p)):
        raise PreconditionError("ell and p must be prime")
    if p < 3:
        raise PreconditionError("p must be >= 3")
    if ell == p:
        raise PreconditionError("ell must differ from p")
    if not good_reduction(E, ell):
        raise PreconditionError(f"bad reduction: {E.label} at ell={ell}")
    if ell in (2, 3):
        raise PreconditionError("ell in {2, 3} unsupported")


def evaluate(E: CurveRecord, ell: int, p: int, mode: str = "exact", frob: FrobeniusData | None = None) -> CriterionReport:
    """Check conditions cheapest first, stopping at the first failure.

    Order: (1) p = 3 mod 4, (5) ell < p^2/16, ordinarity, (2) -p Delta a square,
    (4) Legendre condition on the primes of Delta, (3) p | order of Frobenius on E[p].
    """
    _check_inputs(E, ell, p, mode)
    rep = CriterionReport(E.label, ell, p, mode, cond1=p % 4 == 3)
    if not rep.cond1:
        rep.failed = "cond1"
        return rep
    rep.cond5 = 16 * ell < p * p
    if not rep.cond5:
        rep.failed = "cond5"
        return rep
    fd = frob if frob is not None else frobenius_data(E, ell)
    rep.a_ell, rep.delta_ell, rep.ordinary = fd.a_ell, fd.delta_ell, fd.ordinary
    if not fd.ordinary:
        rep.failed = "ordinary"
        return rep
    s = is_perfect_square(-p * fd.delta_ell)
    rep.cond2 = s is not None
    if not rep.cond2:
        rep.failed = "cond2"
        return rep
    rep.s, rep.m = s, s // p
    assert s % p == 0 and fd.delta_ell == -p * rep.m**2 and rep.m % p, "condition (2) witness"
    rep.cond4, rep.legendre_values = condition4(fd.delta_ell, ell, p)
    rep.delta_factors = [list(qe) for qe in factor_trial(fd.delta_ell).factors]
    rep.q_equals_p = any(q == p for q, _ in rep.legendre_values)
    if not rep.cond4:
        rep.failed = "cond4"
        return rep
    rep.cond3, rep.cond3_method = frob_order_divisible(reduce_mod(E, ell), fd, p, mode)
    if not rep.cond3:
        rep.failed = "cond3"
        return rep
    rep.verdict = EMPTY
    assert p % 4 == 3 and fd.delta_ell % p == 0
    return rep
