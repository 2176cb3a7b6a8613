"""Independent reference values for the C++ unit tests.

Everything here is computed with exact rationals or plain enumeration, without
reusing any of the library's algorithms. Run it and compare with the constants
frozen in the test sources.
"""
from fractions import Fraction as F
from itertools import product, combinations
import math


def compositions(k, m, exact=True):
    for y in product(range(1, k + 1), repeat=m):
        if (sum(y) == k) if exact else (sum(y) <= k):
            yield y


def osa_objective(n, theta, y):
    return sum(F(ni) ** 2 * ti / yi for ni, ti, yi in zip(n, theta, y))


def osa_brute(n, theta, k):
    theta = [F(t) for t in theta]
    best = None
    for y in compositions(k, len(n), exact=False):
        v = osa_objective(n, theta, y)
        if best is None or v < best[0] or (v == best[0] and sum(y) == k and sum(best[1]) < k):
            best = (v, y)
    optima = [y for y in compositions(k, len(n)) if osa_objective(n, theta, y) == best[0]]
    return min(optima), best[0]


def water_brute(theta, b, caps, step, cost):
    grids = [[F(j) * step for j in range(int(c / step) + 1)] for c in caps]
    best = None
    for y in product(*grids):
        if sum(y) < b:
            continue
        v = sum(F(t) * yi - cost(i, yi) for i, (t, yi) in enumerate(zip(theta, y)))
        if best is None or v > best[0]:
            best = (v, y)
    return tuple(float(v) for v in best[1])


def top_k_lambda(theta, k, eps):
    """Lattice shell search, written independently with fractions."""
    m = len(theta)
    theta = [F(t) for t in theta]

    def phi(th):
        order = sorted(range(m), key=lambda i: (-th[i], i))
        y = [0] * m
        for i in order[:k]:
            y[i] = 1
        return y

    ref = phi(theta)
    steps = int(1 / eps)
    found = [None] * m
    for s in range(1, steps + 1):
        for z in product(range(-s, s + 1), repeat=m):
            if max(abs(v) for v in z) != s:
                continue
            th = [min(F(1), max(F(0), t + F(v) * eps)) for t, v in zip(theta, z)]
            y = phi(th)
            for i in range(m):
                if found[i] is None and y[i] != ref[i]:
                    found[i] = s
        if all(f is not None for f in found):
            break
    return [((f - 1) * eps, f * eps) for f in found]


def gaps(theta, k):
    m = len(theta)
    theta = [F(t) for t in theta]
    decisions = [tuple(1 if i in c else 0 for i in range(m)) for c in combinations(range(m), k)]
    r = {y: sum(t * yi for t, yi in zip(theta, y)) for y in decisions}
    best = max(r, key=r.get)
    return [float(r[best] - max(v for y, v in r.items() if y[i] != best[i])) for i in range(m)]


def main():
    print("reward osa n=(1,1) theta=(0.2,0.1) y=(2,2):",
          float(-osa_objective((1, 1), [F(2, 10), F(1, 10)], (2, 2))))
    print("brute osa n=(1,1,1) theta=0.25 k=6:", osa_brute((1, 1, 1), [F(1, 4)] * 3, 6))
    print("osa n=(20,1,1) theta=1 k=33:", osa_brute((20, 1, 1), [1, 1, 1], 33))
    print("osa n=(1,1) theta=0.25 k=4:", osa_brute((1, 1), [F(1, 4)] * 2, 4))
    print("osa n=(1,1) theta=0 k=5:", osa_brute((1, 1), [0, 0], 5))
    print("osa n=(3,2,1) theta=(0.36,0.16,0.04) k=9:",
          osa_brute((3, 2, 1), [F(36, 100), F(16, 100), F(4, 100)], 9))
    print("osa n=(1,1) theta=(0.25,0) k=6:", osa_brute((1, 1), [F(1, 4), 0], 6))
    print("radius t=3 T=1 tau=1 delta=0.1:", repr(math.sqrt(math.log(4 * 27 / 0.1) / 2)))
    print("thm1 H=1 m=1 tau=1 delta=1:", repr(2 + 12 * math.log(24) + 4 * math.log(4)))
    print("water m=1 b=0 c=1 f=y^2 step=0.25 theta=1:",
          water_brute([1], 0, [1], F(1, 4), lambda i, y: y * y))
    print("water m=2 b=1 c=(1,1) f=y^2/2 step=0.5 theta=(1,0):",
          water_brute([1, 0], 1, [1, 1], F(1, 2), lambda i, y: y * y / 2))
    print("water m=2 b=2 c=(1,1) f=0 theta=(0.3,0.6):",
          water_brute([F(3, 10), F(6, 10)], 2, [1, 1], F(1, 2), lambda i, y: 0))
    print("lambda best-arm (0.8,0.2):", top_k_lambda([F(8, 10), F(2, 10)], 1, F(1, 100)))
    print("lambda top-1 (0.9,0.5,0.1):", top_k_lambda([F(9, 10), F(5, 10), F(1, 10)], 1, F(1, 100)))
    print("lambda best-arm (0.8,0.5,0.2):", top_k_lambda([F(8, 10), F(5, 10), F(2, 10)], 1, F(1, 100)))
    print("gaps top-1 (0.8,0.2):", gaps([F(8, 10), F(2, 10)], 1))
    print("gaps top-2 (0.9,0.8,0.1):", gaps([F(9, 10), F(8, 10), F(1, 10)], 2))
    p = (1 - math.sqrt(1 - 4 * 0.21)) / 2
    print("arm_for_variance 0.21 -> p:", repr(p))
    print("variance of Bernoulli(0.3):", 0.3 * 0.7)


if __name__ == "__main__":
    main()
