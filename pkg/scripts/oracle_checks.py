"""Randomised cross-checks of the fast paths against brute-force oracles.

  * Frobenius scalar test vs the explicit torsion-matrix oracle
  * exact vs shortcut condition (3) on random ordinary reductions
  * both Frey constructions against their defining congruences
"""

import argparse
import random
import time

from xep.arith import primes_upto
from xep.count import frobenius_data_reduced
from xep.curves import ReducedCurve
from xep.frey import construct_good, construct_mult
from xep.torsion import frob_order_divisible, torsion_matrix_oracle


def random_curve(rng, ell):
    while True:
        A, B = rng.randrange(ell), rng.randrange(ell)
        if (4 * A**3 + 27 * B * B) % ell:
            return ReducedCurve(ell, A, B)


def check_torsion(rng, n):
    ells = [ell for ell in primes_upto(200) if ell >= 5]
    hits = 0
    for _ in range(n):
        ell = rng.choice(ells)
        p = rng.choice([q for q in (3, 5, 7, 11, 13) if q != ell])
        C = random_curve(rng, ell)
        fd = frobenius_data_reduced(C)
        if not fd.ordinary:
            continue
        fast, _ = frob_order_divisible(C, fd, p, "exact")
        M = torsion_matrix_oracle(C, p)
        assert fast == (M.order() % p == 0), (C, p)
        hits += fd.delta_ell % p == 0
    return hits


def check_modes(rng, n):
    disagreements = 0
    for _ in range(n):
        p = rng.choice([q for q in primes_upto(60) if q >= 3])
        ell = rng.choice([q for q in primes_upto(2000) if q >= 5 and q != p])
        C = random_curve(rng, ell)
        fd = frobenius_data_reduced(C)
        if fd.ordinary and fd.delta_ell % p == 0:
            disagreements += frob_order_divisible(C, fd, p, "exact")[0] != frob_order_divisible(C, fd, p, "shortcut")[0]
    return disagreements


def check_frey(rng, n):
    ells = [ell for ell in primes_upto(500) if ell >= 5]
    ps = [p for p in primes_upto(50) if p > 3]
    for _ in range(n):
        ell, p = rng.choice(ells), rng.choice(ps)
        if ell == p:
            continue
        C = random_curve(rng, ell)
        construct_good(C.A, C.B, ell, p)  # asserts its own invariants
        k = rng.choice([1, 2])
        construct_mult(rng.randrange(1, ell), k, p, ell, prec=k * p + 3)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n", type=int, default=200)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    t0 = time.perf_counter()
    print(f"torsion oracle: agreement on {args.n} draws ({check_torsion(rng, args.n)} with p | Delta)")
    print(f"exact vs shortcut: {check_modes(rng, args.n * 5)} disagreements")
    check_frey(rng, args.n)
    print(f"frey constructions: {args.n} draws ok")
    print(f"{time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
