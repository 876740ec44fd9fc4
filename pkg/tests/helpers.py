import random

from xep.curves import ReducedCurve


def random_curve(rng: random.Random, ell: int) -> ReducedCurve:
    while True:
        A, B = rng.randrange(ell), rng.randrange(ell)
        if (4 * A**3 + 27 * B * B) % ell:
            return ReducedCurve(ell, A, B)


class Fq2:
    """F_{ell^2} = F_ell[i]/(i^2 - r), r a non-residue; elements are int pairs."""

    def __init__(self, ell):
        self.ell = ell
        self.r = next(z for z in range(2, ell) if pow(z, (ell - 1) // 2, ell) == ell - 1)
        self.all = [(a, b) for a in range(ell) for b in range(ell)]

    def c(self, k):
        return (k % self.ell, 0)

    def add(self, u, v):
        return ((u[0] + v[0]) % self.ell, (u[1] + v[1]) % self.ell)

    def sub(self, u, v):
        return ((u[0] - v[0]) % self.ell, (u[1] - v[1]) % self.ell)

    def mul(self, u, v):
        ell, r = self.ell, self.r
        return ((u[0] * v[0] + r * u[1] * v[1]) % ell, (u[0] * v[1] + u[1] * v[0]) % ell)

    def inv(self, u):
        ni = pow((u[0] * u[0] - self.r * u[1] * u[1]) % self.ell, -1, self.ell)
        return (u[0] * ni % self.ell, -u[1] * ni % self.ell)


def _points(K, cA, cB):
    roots = {}
    for y in K.all:
        roots.setdefault(K.mul(y, y), []).append(y)
    for x in K.all:
        fx = K.add(K.add(K.mul(K.mul(x, x), x), K.mul(cA, x)), cB)
        for y in roots.get(fx, []):
            yield x, y


def _add(K, cA, P1, P2):
    if P1 is None:
        return P2
    if P2 is None:
        return P1
    (x1, y1), (x2, y2) = P1, P2
    if x1 == x2:
        if K.add(y1, y2) == (0, 0):
            return None
        lam = K.mul(K.add(K.mul(K.c(3), K.mul(x1, x1)), cA), K.inv(K.mul(K.c(2), y1)))
    else:
        lam = K.mul(K.sub(y2, y1), K.inv(K.sub(x2, x1)))
    x3 = K.sub(K.sub(K.mul(lam, lam), x1), x2)
    return (x3, K.sub(K.mul(lam, K.sub(x1, x3)), y1))


def torsion_x_fq2(ell, A, B, nmax):
    """{n: x-coordinates in F_{ell^2} of nonzero n-torsion points}, by enumeration.

    A point with x in F_{ell^2} has y in F_{ell^2} or in F_{ell^4}; the second
    kind is a point over F_{ell^2} of the twist by a non-square delta, with
    x-coordinate delta * x.
    """
    K = Fq2(ell)
    squares = {K.mul(y, y) for y in K.all}
    delta = next(u for u in K.all if u not in squares)
    d2 = K.mul(delta, delta)
    dinv = K.inv(delta)
    out = {n: set() for n in range(1, nmax + 1)}
    models = [(K.c(A), K.c(B), None), (K.mul(d2, K.c(A)), K.mul(K.mul(d2, delta), K.c(B)), dinv)]
    for cA, cB, back in models:
        for pt in _points(K, cA, cB):
            Q = None
            for n in range(1, nmax + 1):
                Q = _add(K, cA, Q, pt)
                if Q is None:
                    x = K.mul(pt[0], back) if back else pt[0]
                    for m in range(n, nmax + 1, n):
                        out[m].add(x)
                    break
    return out


def roots_fq2(coeffs, ell):
    """Roots in F_{ell^2} (same representation as Fq2) of a polynomial over F_ell."""
    import numpy as np

    K = Fq2(ell)
    a = np.repeat(np.arange(ell, dtype=np.int64), ell)
    b = np.tile(np.arange(ell, dtype=np.int64), ell)
    ra = np.zeros_like(a)
    rb = np.zeros_like(b)
    for c in reversed([int(c) for c in coeffs]):
        ra, rb = (ra * a + K.r * rb % ell * b + c) % ell, (ra * b + rb * a) % ell
    hit = np.flatnonzero((ra == 0) & (rb == 0))
    return {(int(a[i]), int(b[i])) for i in hit}
