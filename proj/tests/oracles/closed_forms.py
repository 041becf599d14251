"""Independent high-precision evaluation of closed-form expected values.

Run with: python3 tests/oracles/closed_forms.py
The printed values are frozen into the C++ unit tests.
"""
import itertools
import math

import mpmath as mp

mp.mp.dps = 50
E = mp.e


def thm1(d, K, gamma, N, alpha, T):
    d, K, gamma, N, alpha, T = map(mp.mpf, (d, K, gamma, N, alpha, T))
    return (2 * d + K * E * (d + 1) * mp.log(K) / gamma
            + gamma * (alpha / (2 * (1 - 1 / E) * (d + 1) * N) + 3 / (K * E)) * T)


def thm3(dbar, K, eta, N, alpha, T):
    dbar, K, eta, N, alpha, T = map(mp.mpf, (dbar, K, eta, N, alpha, T))
    return (3 * dbar + eta * T * dbar + (1 + mp.log(K)) / eta
            + (E * eta / (2 * (1 - 1 / E))) * T
            * (6 * (K / N) * alpha * mp.log(1 + 2 * T * N * N * K) + 1))


def gamma_r(K, d, r):
    return K * E * (d + 1) * mp.sqrt(mp.log(K) / mp.power(2, r))


def r0(K, d):
    return int(mp.ceil(mp.log(mp.log(K), 2) + 2 * mp.log(K * E * (d + 1), 2)))


def grid_best(d, K, N, alpha, T):
    best = None
    for k in range(0, 41):
        g = mp.power(2, -k)
        v = thm1(d, K, g, N, alpha, T)
        if best is None or v < best[1]:
            best = (k, v)
    return best


def alpha_bruteforce(n, edges):
    adj = set()
    for u, v in edges:
        adj.add((u, v)); adj.add((v, u))
    best = 0
    for mask in range(1 << n):
        vs = [i for i in range(n) if mask >> i & 1]
        if len(vs) <= best:
            continue
        if all((a, b) not in adj for a, b in itertools.combinations(vs, 2)):
            best = len(vs)
    return best


if __name__ == "__main__":
    print("thm1(1,2,0.5,2,1,100) =", mp.nstr(thm1(1, 2, 0.5, 2, 1, 100), 20))
    print("thm3(1,2,0.01,2,1,1e4) =", mp.nstr(thm3(1, 2, 0.01, 2, 1, 10**4), 20))
    print("r0(2,0) =", r0(2, 0), " gamma_5 =", mp.nstr(gamma_r(2, 0, 5), 20),
          " gamma_4 =", mp.nstr(gamma_r(2, 0, 4), 20))
    bad = [(K, d) for K in range(2, 65) for d in range(0, 33)
           if gamma_r(K, d, r0(K, d)) > 1 or gamma_r(K, d, r0(K, d) - 1) <= 1]
    print("r0 sweep violations (not <=1 or not minimal):", bad)
    Q = 1 + (E / 2) * (mp.mpf(0.5) / mp.mpf(0.75) * 2)
    print("Q example =", mp.nstr(Q, 20))
    k, v = grid_best(4, 4, 1, 1, 10**4)
    print("single-delayed d=4 K=4 T=1e4 best grid k =", k, "gamma =", mp.nstr(mp.power(2, -k), 10),
          "bound =", mp.nstr(v, 20), " reduction sqrt((d+1)KT) =", mp.nstr(mp.sqrt(5 * 4 * 10**4), 20))
    path6 = [(i, i + 1) for i in range(5)]
    path6_sq = path6 + [(i, i + 2) for i in range(4)]
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    clique4 = list(itertools.combinations(range(4), 2))
    print("alpha P6 =", alpha_bruteforce(6, path6), " P6^2 =", alpha_bruteforce(6, path6_sq),
          " C5 =", alpha_bruteforce(5, c5), " Petersen =", alpha_bruteforce(10, outer + spokes + inner),
          " K4 =", alpha_bruteforce(4, clique4))
    # Arc predicate for the in-neighbourhood example: line 0..5, d(4)=1, ttl(3)=2, ttl(5)=1, others 0.
    d = [0, 0, 0, 0, 1, 0]
    ttl = [0, 0, 0, 2, 0, 1]
    innb = {v: [u for u in range(6) if abs(u - v) <= min(d[v], ttl[u])] for v in range(6)}
    print("in-neighbourhoods:", innb)
