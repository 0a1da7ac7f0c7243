"""Independent brute-force oracles for values frozen into the C++ tests.

Run: python3 tests/oracles/oracles.py
"""
from fractions import Fraction as Fr
from itertools import product, combinations
import math


def reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def free_ball(k, r):
    letters = [s * (i + 1) for i in range(k) for s in (1, -1)]
    seen = {()}
    frontier = [()]
    for _ in range(r):
        nxt = []
        for w in frontier:
            for x in letters:
                v = reduce(w + (x,))
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return seen


def main():
    a, b = 1, 2
    print("F2 ball sizes", [len(free_ball(2, r)) for r in range(7)])
    print("(ab)(b^-1 a) =", reduce((a, b, -b, a)))
    A = [0, 1, 3]
    print("Z diff {0,1,3}", sorted({x - y for x in A for y in A}))
    L = 6
    print("{0}m2+{0}m3 residues", sorted({(x + y) % L for x in range(0, L, 2) for y in range(0, L, 3)}))

    # thick witness: T=[40,60) probe 0..9 search [0,100)
    T = set(range(40, 60))
    print("thick witness", next(g for g in range(100) if all(p + g in T for p in range(10))))

    # squares piecewise syndetic bounded refutation
    C = {n * n for n in range(21)}
    pool = range(-10, 11)
    found = None
    for size in (1, 2):
        for F in combinations(pool, size):
            FC = {f + c for f in F for c in C if 0 <= f + c <= 400}
            for g in range(0, 401):
                if all(p + g in FC for p in range(10)):
                    found = (F, g)
                    break
            if found:
                break
        if found:
            break
    print("squares witness", found)

    th = (math.sqrt(5) - 1) / 2
    d = lambda x: abs(x - round(x))
    print("bohr |13 th|", d(13 * th), "|2 th|", d(2 * th))

    # F2 convolution
    gens = [(a,), (-a,), (b,), (-b,)]
    mu = {g: Fr(1, 4) for g in gens}
    def conv(m1, m2):
        out = {}
        for g, p in m1.items():
            for h, q in m2.items():
                x = reduce(g + h)
                out[x] = out.get(x, 0) + p * q
        return out
    m2 = conv(mu, mu)
    print("mu*mu(e)", m2[()], "support", len(m2))

    # cylinder harmonic h_a via closed form: from distance d, hit-prob of root 3^-d.
    def h_a(w):
        if not w:
            return Fr(1, 4)
        d = len(w)
        if w[0] == a:
            return 1 - Fr(1, 3) ** d * Fr(3, 4)
        return Fr(1, 3) ** d * Fr(1, 4)
    print("h_a(e), h_a(a), h_a(b)", h_a(()), h_a((a,)), h_a((b,)))
    # right harmonicity check h(g) = sum mu(s) h(g s)
    for g in sorted(free_ball(2, 3)):
        s = sum(Fr(1, 4) * h_a(reduce(g + x)) for x in gens)
        assert s == h_a(g), g
    print("h_a right-harmonic on Ball(3): ok")
    bad = max(abs(h_a(g) - sum(Fr(1, 4) * h_a(reduce(x + g)) for x in gens)) for g in free_ball(2, 2))
    print("h_a left residual max on Ball(2)", float(bad))

    # Choi-Effros (h_a box h_a)(e) and (h_a box h_b)(e) exact for n = 1..12
    def h_b(w):
        if not w:
            return Fr(1, 4)
        d = len(w)
        if w[0] == b:
            return 1 - Fr(1, 3) ** d * Fr(3, 4)
        return Fr(1, 3) ** d * Fr(1, 4)
    m = dict(mu)
    seq_aa, seq_ab = [], []
    for n in range(1, 9):
        if n > 1:
            m = conv(m, mu)
        # left-harmonic version h(g^-1); at g = e integrand at h
        inv = lambda w: tuple(-x for x in reversed(w))
        seq_aa.append(float(sum(p * h_a(inv(h)) ** 2 for h, p in m.items())))
        seq_ab.append(float(sum(p * h_a(inv(h)) * h_b(inv(h)) for h, p in m.items())))
    print("CE aa", seq_aa)
    print("CE ab", seq_ab)

    # Z4 rep mean
    print("Z4 rep mean", sum(1 + 1j ** g for g in range(4)) / 4)

    # compact cover
    def meas_overlap(N, C, D):
        best = None
        for k in range(N):
            ov = len(set(C) & {(k + x) % N for x in D})
            if best is None or ov > best[1]:
                best = (k, ov)
        return best
    print("Z4 best_translate {0,1},{0,2}", meas_overlap(4, [0, 1], [0, 2]))
    print("Z4 corr {0,1},{0}", sorted({k for k in range(4) if {0, 1} & {(k + 0) % 4}}))
    N = 6
    Aset, Bset = {0, 1, 2}, {0, 1}
    k0, ov = meas_overlap(N, Aset, Bset)
    E = Aset & {(k0 + x) % N for x in Bset}
    U = {k for k in range(N) if Aset & {(k + x) % N for x in Bset}}
    print("Z6 k0,E,U", k0, sorted(E), sorted(U))
    cov = set(U)
    F = [0]
    while len(cov) < N:
        k = min(set(range(N)) - cov)
        F.append(k)
        cov |= {(k + u) % N for u in U}
    print("Z6 greedy F", F)
    def min_cover(N, U):
        for s in range(1, N + 1):
            for F in combinations(range(N), s):
                if {(f + u) % N for f in F for u in U} == set(range(N)):
                    return s, F
    print("Z6 exact", min_cover(6, U))

    def thm2(N, A, B):
        Binv = {(-x) % N for x in B}
        k0, ov = meas_overlap(N, A, Binv)
        U = {(x + y) % N for x in A for y in B}
        return k0, ov, sorted(U), min_cover(N, U)
    print("Z12 thm2", thm2(12, set(range(0, 12, 2)), {0, 1, 2, 3}))
    print("Z4 thm2", thm2(4, {0, 1}, {0, 1}))

    # Markov Z3: P = (S + S^-1)/2, phi = 1_{0}; average_{k=1..n} P^k phi
    import numpy as np
    P = np.zeros((3, 3))
    for y in range(3):
        P[y, (y + 1) % 3] += 0.5
        P[y, (y - 1) % 3] += 0.5
    phi = np.array([1.0, 0, 0])
    acc = np.zeros(3)
    v = phi.copy()
    n = 10000
    for _ in range(n):
        v = P @ v
        acc += v
    acc /= n
    print("Z3 cesaro avg", acc, "dev", math.sqrt(sum((acc - 1 / 3) ** 2) / 3))


if __name__ == "__main__":
    main()
