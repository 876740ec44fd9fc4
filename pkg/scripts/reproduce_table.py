"""Reproduce the table of primes p = 19 mod 24 with an exceptional ell for the conductor-864 curves."""

import argparse
import json
import time

from xep.scan import ScanPlan, scan

EXPECTED = {
    "864a1": [19, 43, 211, 307, 499, 523, 547, 571, 739, 787, 859, 907],
    "864b1": [19, 43, 67, 307, 331, 571, 619, 643, 691, 787, 811, 859],
    "864c1": [211, 331, 499, 523, 571, 643, 691, 859],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pmax", type=int, default=1000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--mode", default="auto", choices=["auto", "exact", "shortcut"])
    ap.add_argument("--triples", help="write witnessing triples as JSON lines to this path")
    args = ap.parse_args()

    t0 = time.perf_counter()
    plan = ScanPlan(pmax=args.pmax, jobs=args.jobs, mode=args.mode)
    res = scan(plan)
    table = res.table(plan.curves)
    for label, ps in table.items():
        print(f"{label}: {ps}")
    if args.pmax == 1000:
        print("matches published table:", table == EXPECTED)
    print(f"{len(res.triples)} triples in {time.perf_counter() - t0:.1f}s")
    if args.triples:
        with open(args.triples, "w") as fh:
            for t in res.triples:
                fh.write(t.to_json() + "\n")
    # ell values per (label, p), handy for spotting triples beyond the minimal witnesses
    by_pair = {}
    for t in res.triples:
        by_pair.setdefault(f"{t.label},{t.p}", []).append(t.ell)
    print(json.dumps(by_pair))


if __name__ == "__main__":
    main()
