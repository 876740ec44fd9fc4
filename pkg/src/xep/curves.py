"""Elliptic curves over Q, their reductions mod ell, and Frey curves."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arith import factor_trial, is_prime

DB_ENV_VAR = "XEP_CURVE_DB"
BUNDLED_LABELS = ("27a1", "54a1", "96a1", "288a1", "864a1", "864b1", "864c1")
TWISTS = (1, -1, 2, -2, 3, -3, 6, -6)


class CurveDataError(ValueError):
    pass


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class BadReduction(PreconditionError):
    pass


def _b_invariants(a1, a2, a3, a4, a6):
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def c_invariants(ainvs) -> tuple[int, int, int]:
    """(c4, c6, discriminant) of a general Weierstrass model."""
    b2, b4, b6, b8 = _b_invariants(*ainvs)
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, c6, disc


@dataclass(frozen=True)
class CurveRecord:
    label: str
    ainvs: tuple[int, int, int, int, int]
    conductor: int
    cm: bool = False
    isogeny_degrees: tuple[int, ...] = ()
    discriminant: int = field(init=False)

    def __post_init__(self):
        if len(self.ainvs) != 5:
            raise CurveDataError(f"{self.label}: expected five a-invariants")
        c4, c6, disc = c_invariants(self.ainvs)
        object.__setattr__(self, "discriminant", disc)
        if disc == 0:
            raise CurveDataError(f"{self.label}: singular model (discriminant 0)")
        if self.conductor < 1:
            raise CurveDataError(f"{self.label}: conductor must be positive")
        bad = set(factor_trial(self.conductor).primes())
        if not bad <= set(factor_trial(disc).primes()):
            raise CurveDataError(f"{self.label}: conductor primes {sorted(bad)} not all divide the discriminant")

    @property
    def c4(self) -> int:
        return c_invariants(self.ainvs)[0]

    @property
    def c6(self) -> int:
        return c_invariants(self.ainvs)[1]

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(self.c4**3, self.discriminant)

    def bad_primes(self) -> list[int]:
        return factor_trial(self.conductor).primes()


def _record_from_doc(doc: dict, lineno: int) -> CurveRecord:
    try:
        rec = CurveRecord(
            label=str(doc["label"]),
            ainvs=tuple(int(a) for a in doc["ainvs"]),
            conductor=int(doc["conductor"]),
            cm=bool(doc.get("cm", False)),
            isogeny_degrees=tuple(int(d) for d in doc.get("isogeny_degrees", ())),
        )
    except KeyError as exc:
        raise CurveDataError(f"line {lineno}: missing field {exc}") from None
    if "discriminant" in doc and int(doc["discriminant"]) != rec.discriminant:
        raise CurveDataError(
            f"{rec.label}: stored discriminant {doc['discriminant']} != recomputed {rec.discriminant}"
        )
    return rec


def parse_db(text: str) -> dict[str, CurveRecord]:
    db = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CurveDataError(f"line {lineno}: {exc.msg}") from None
        if not isinstance(doc, dict):
            raise CurveDataError(f"line {lineno}: expected an object")
        rec = _record_from_doc(doc, lineno)
        if rec.label in db:
            raise CurveDataError(f"line {lineno}: duplicate label {rec.label}")
        db[rec.label] = rec
    return db


def default_db_path() -> Path:
    return Path(str(resources.files("xep") / "data" / "curves.jsonl"))


def load_db(source: str | os.PathLike | None = None) -> dict[str, CurveRecord]:
    """Load a curve file; falls back to $XEP_CURVE_DB, then the bundled file."""
    if source is None:
        source = os.environ.get(DB_ENV_VAR) or default_db_path()
    return parse_db(Path(source).read_text(encoding="utf-8"))


_DEFAULT_DB: dict[str, CurveRecord] | None = None


def get_curve(label: str) -> CurveRecord:
    global _DEFAULT_DB
    if _DEFAULT_DB is None:
        _DEFAULT_DB = load_db()
    return _DEFAULT_DB[label]


def good_reduction(E: CurveRecord, ell: int) -> bool:
    return E.conductor % ell != 0


@dataclass(frozen=True)
class ReducedCurve:
    """y^2 = x^3 + A x + B over F_ell, ell >= 5."""

    ell: int
    A: int
    B: int

    def __post_init__(self):
        if self.ell < 5 or not is_prime(self.ell):
            raise ValueError(f"ell = {self.ell} must be a prime >= 5")
        object.__setattr__(self, "A", self.A % self.ell)
        object.__setattr__(self, "B", self.B % self.ell)
        if (4 * self.A**3 + 27 * self.B**2) % self.ell == 0:
            raise ValueError(f"singular curve A={self.A}, B={self.B} over F_{self.ell}")

    def rhs(self, x: int) -> int:
        return (x * x * x + self.A * x + self.B) % self.ell

    def j_invariant(self) -> int:
        ell, A, B = self.ell, self.A, self.B
        num = 1728 * 4 * A**3
        den = 4 * A**3 + 27 * B**2
        return num * pow(den, -1, ell) % ell

    def twist(self, d: int) -> ReducedCurve:
        return ReducedCurve(self.ell, d * d * self.A, d**3 * self.B)


def reduce_mod(E: CurveRecord, ell: int) -> ReducedCurve:
    if ell in (2, 3):
        raise PreconditionError("reduction to short Weierstrass form needs ell >= 5")
    if not good_reduction(E, ell):
        raise BadReduction(f"{E.label} has bad reduction at {ell}")
    c4, c6, _ = c_invariants(E.ainvs)
    A = -c4 * pow(48, -1, ell)
    B = -c6 * pow(864, -1, ell)
    return ReducedCurve(ell, A, B)


@dataclass(frozen=True)
class FreyCurve:
    """Frey curve y^2 = x^3 + 3b x - 2a, twisted by d; coefficients in any ring."""

    a: object
    b: object
    d: int = 1

    def __post_init__(self):
        if self.d not in TWISTS:
            raise ValueError(f"twist {self.d} not in {TWISTS}")
        if _is_zero(self.a * self.a + self.b * self.b * self.b):
            raise ValueError("singular Frey curve: a^2 + b^3 = 0")

    @property
    def A(self):
        return 3 * self.d**2 * self.b

    @property
    def B(self):
        return -2 * self.d**3 * self.a

    @property
    def c4(self):
        return -48 * self.A

    @property
    def c6(self):
        return -864 * self.B

    @property
    def discriminant(self):
        return -1728 * self.d**6 * (self.a * self.a + self.b * self.b * self.b)


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return not x


def frey_curve(a, b, d: int = 1) -> FreyCurve:
    return FreyCurve(a, b, d)
