"""Search for exceptional triples (E, ell, p) and rebuild the table of excluded pairs."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .arith import is_perfect_square, primes_upto
from .count import FrobeniusData, _trace_cached
from .criterion import EMPTY, CriterionReport, evaluate
from .curves import CurveRecord, get_curve, good_reduction

TABLE_CURVES = ("864a1", "864b1", "864c1")
# rational isogenies that give X_E^-(p) a rational point for these residues of p mod 24
ISOGENY_EXCLUSIONS = {"96a1": 19, "54a1": 7}
EXACT_MAX_P = 211


@dataclass(frozen=True)
class Applicability:
    ok: bool
    reason: str
    reduced_space: bool  # p = 19 mod 24 and E one of the conductor-864 curves


def applicable(E: CurveRecord, p: int) -> Applicability:
    reduced = p % 24 == 19 and E.label in TABLE_CURVES
    if p % 4 == 1:
        return Applicability(False, "p = 1 mod 4", reduced)
    if E.cm:
        return Applicability(False, "CM", reduced)
    if ISOGENY_EXCLUSIONS.get(E.label) == p % 24:
        return Applicability(False, "isogeny", reduced)
    return Applicability(True, "ok", reduced)


@dataclass(frozen=True)
class ExceptionalTriple:
    label: str
    ell: int
    p: int
    report: CriterionReport

    def __post_init__(self):
        assert self.report.verdict == EMPTY
        assert 5 <= self.ell and 16 * self.ell < self.p**2 and self.ell != self.p

    def to_json(self) -> str:
        doc = {"label": self.label, "ell": self.ell, "p": self.p, "report": self.report.to_dict()}
        return json.dumps(doc, separators=(",", ":"))


@dataclass
class ScanPlan:
    curves: tuple[str, ...] = TABLE_CURVES
    p_residue: int | None = 19  # modulo 24; None scans every p
    pmax: int = 1000
    lmax: int | None = None  # None means the full window ell < p^2/16
    mode: str = "auto"  # exact for p <= exact_max_p, shortcut above
    exact_max_p: int = EXACT_MAX_P
    stop: str = "all"  # or "first"
    force: bool = False
    jobs: int = 1

    def mode_for(self, p: int) -> str:
        if self.mode == "auto":
            return "exact" if p <= self.exact_max_p else "shortcut"
        return self.mode

    def ell_bound(self, p: int) -> int:
        """Exclusive upper bound on ell."""
        full = (p * p + 15) // 16
        return full if self.lmax is None else min(full, self.lmax + 1)

    def complete_for(self, p: int) -> bool:
        return self.lmax is None or self.lmax + 1 >= (p * p + 15) // 16

    def primes(self) -> list[int]:
        ps = [p for p in primes_upto(self.pmax - 1) if p >= 7]
        if self.p_residue is not None:
            ps = [p for p in ps if p % 24 == self.p_residue]
        return ps


def _candidate(p: int, ell: int, a: int) -> bool:
    # a != 0 and Delta = -p m^2 with m^2 < p/4
    if a == 0:
        return False
    s = is_perfect_square(-p * (a * a - 4 * ell))
    return s is not None and s % p == 0 and 4 * (s // p) ** 2 < p


def _traces_chunk(args):
    ainvs_list, ells = args
    return [[_trace_cached(ainvs, ell, "sum") for ell in ells] for ainvs in ainvs_list]


def compute_traces(curves: list[CurveRecord], ells: list[int], jobs: int = 1) -> dict[str, dict[int, int]]:
    """a_ell for every curve and every good ell, split over processes by ell."""
    out = {E.label: {} for E in curves}
    per_curve = {E.label: [ell for ell in ells if good_reduction(E, ell)] for E in curves}
    # all curves share the ell list when bad primes are below 5
    todo = sorted(set().union(*per_curve.values())) if per_curve else []
    ainvs = [E.ainvs for E in curves]
    if jobs <= 1 or len(todo) < 64:
        chunks = [todo]
        results = [_traces_chunk((ainvs, todo))]
    else:
        chunks = [todo[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_traces_chunk, [(ainvs, c) for c in chunks]))
    for chunk, res in zip(chunks, results):
        for E, row in zip(curves, res):
            for ell, a in zip(chunk, row):
                out[E.label][ell] = a
    return out


def _evaluate_task(args):
    E, ell, p, mode, a = args
    fd = FrobeniusData(ell, a, a * a - 4 * ell, a != 0)
    return evaluate(E, ell, p, mode, frob=fd)


def _run_tasks(tasks, jobs):
    if jobs <= 1 or len(tasks) < 2:
        return [_evaluate_task(t) for t in tasks]
    with ProcessPoolExecutor(jobs) as pool:
        return list(pool.map(_evaluate_task, tasks))


def find_exceptional(E: CurveRecord, p: int, plan: ScanPlan | None = None, traces: dict[int, int] | None = None) -> list[ExceptionalTriple]:
    """Exceptional ell for (E, p), sorted by ell; empty when (E, p) is excluded and not forced."""
    plan = plan or ScanPlan()
    if not plan.force and not applicable(E, p).ok:
        return []
    ells = [ell for ell in primes_upto(plan.ell_bound(p) - 1) if ell >= 5 and ell != p and good_reduction(E, ell)]
    if traces is None:
        traces = compute_traces([E], ells, plan.jobs)[E.label]
    mode = plan.mode_for(p)
    tasks = [(E, ell, p, mode, traces[ell]) for ell in ells if _candidate(p, ell, traces[ell])]
    found = []
    if plan.stop == "first":
        for t in tasks:
            rep = _evaluate_task(t)
            if rep.verdict == EMPTY:
                return [ExceptionalTriple(E.label, rep.ell, p, rep)]
        return []
    for rep in _run_tasks(tasks, plan.jobs):
        if rep.verdict == EMPTY:
            found.append(ExceptionalTriple(E.label, rep.ell, p, rep))
    return sorted(found, key=lambda t: t.ell)


@dataclass
class ScanResult:
    triples: list[ExceptionalTriple]
    complete: bool
    skipped: dict[tuple[str, int], str] = field(default_factory=dict)

    def table(self, labels) -> dict[str, list[int]]:
        rows = {label: set() for label in labels}
        for t in self.triples:
            rows[t.label].add(t.p)
        return {label: sorted(ps) for label, ps in rows.items()}


def scan(plan: ScanPlan, db: dict[str, CurveRecord] | None = None) -> ScanResult:
    curves = [db[label] if db is not None else get_curve(label) for label in plan.curves]
    ps = plan.primes()
    if not ps:
        return ScanResult([], True)
    lbound = max(plan.ell_bound(p) for p in ps)
    ells = [ell for ell in primes_upto(lbound - 1) if ell >= 5]
    traces = compute_traces(curves, ells, plan.jobs)
    tasks, skipped = [], {}
    for E in curves:
        for p in ps:
            app = applicable(E, p)
            if not plan.force and not app.ok:
                skipped[(E.label, p)] = app.reason
                continue
            mode = plan.mode_for(p)
            for ell in ells:
                if ell >= plan.ell_bound(p):
                    break
                if ell == p or not good_reduction(E, ell):
                    continue
                a = traces[E.label][ell]
                if _candidate(p, ell, a):
                    tasks.append((E, ell, p, mode, a))
    triples = [
        ExceptionalTriple(rep.label, rep.ell, rep.p, rep)
        for rep in _run_tasks(tasks, plan.jobs)
        if rep.verdict == EMPTY
    ]
    if plan.stop == "first":
        firsts = {}
        for t in sorted(triples, key=lambda t: (t.label, t.p, t.ell)):
            firsts.setdefault((t.label, t.p), t)
        triples = list(firsts.values())
    triples.sort(key=lambda t: (plan.curves.index(t.label), t.p, t.ell))
    complete = all(plan.complete_for(p) for p in ps)
    return ScanResult(triples, complete, skipped)


def build_table(pmax: int = 1000, jobs: int = 1, db=None, **plan_kw) -> dict[str, list[int]]:
    """Primes p < pmax, p = 19 mod 24, with an exceptional ell, per conductor-864 curve."""
    if pmax < 7:
        raise ValueError("pmax must be >= 7")
    plan = ScanPlan(pmax=pmax, jobs=jobs, **plan_kw)
    return scan(plan, db).table(plan.curves)


def table_csv(table: dict[str, list[int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "count", "primes"])
    for label, ps in table.items():
        w.writerow([label, len(ps), " ".join(map(str, ps))])
    return buf.getvalue()
