"""Slow, independent reference implementations used to check the package.

Nothing here imports hyperproto; every routine is written from the
definitions in plain Python so a shared bug cannot hide in both places.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

# x^m + ... per m, as printed in standard primitive-polynomial tables
REFERENCE_PRIMITIVE = {
    1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011,
    7: 0b10000011, 8: 0b100011101,
}


def bit_degree(a: int) -> int:
    return a.bit_length() - 1


def clmul(a: int, b: int) -> int:
    out = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            out ^= a << i
        i += 1
    return out


def poly_mod(a: int, b: int) -> int:
    db = bit_degree(b)
    while a and bit_degree(a) >= db:
        a ^= b << (bit_degree(a) - db)
    return a


def divides(b: int, a: int) -> bool:
    return poly_mod(a, b) == 0


def gf_mul(a: int, b: int, m: int, prim: int) -> int:
    return poly_mod(clmul(a, b), prim)


def gf_pow(a: int, e: int, m: int, prim: int) -> int:
    out = 1
    for _ in range(e):
        out = gf_mul(out, a, m, prim)
    return out


def eval_poly_gf2m(p: int, x: int, m: int, prim: int) -> int:
    """Horner evaluation of a binary polynomial at a field element."""
    acc = 0
    for i in range(bit_degree(p), -1, -1):
        acc = gf_mul(acc, x, m, prim) ^ ((p >> i) & 1)
    return acc


def brute_minimal_polynomial(s: int, m: int, prim: int) -> int:
    """Smallest nonzero binary polynomial vanishing at alpha^s (monic by search order)."""
    beta = gf_pow(2 if m > 1 else 1, s, m, prim)
    for p in range(2, 1 << (m + 1)):
        if eval_poly_gf2m(p, beta, m, prim) == 0:
            return p
    raise AssertionError("no minimal polynomial found")


def brute_lcm(a: int, b: int, max_deg: int) -> int | None:
    """Lowest-degree common multiple found by scanning all polynomials up to max_deg."""
    for c in range(1, 1 << (max_deg + 1)):
        if divides(a, c) and divides(b, c):
            return c
    return None


def codewords_by_definition(G: np.ndarray, q: int, mul) -> list[tuple[int, ...]]:
    """All codewords u G over GF(q) in lexicographic message order."""
    k, n = G.shape
    words = []
    for msg in itertools.product(range(q), repeat=k):
        w = [0] * n
        for i, u in enumerate(msg):
            for j in range(n):
                w[j] ^= mul(u, int(G[i, j]))
        words.append(tuple(w))
    return words


def hamming(a, b) -> int:
    return sum(x != y for x, y in zip(a, b))


def brute_dmin(words) -> int:
    return min(hamming(a, b) for a, b in itertools.combinations(words, 2))


def gv_exact(n: int, k: int, d: int) -> bool:
    """2^(n-k) > sum_{i=0}^{d-2} C(n-1, i), in integers."""
    return 2 ** (n - k) > sum(math.comb(n - 1, i) for i in range(d - 1))


def gv_largest_exact(n: int, k: int) -> int:
    best = 0
    for d in range(1, n + 1):
        if gv_exact(n, k, d):
            best = d
    return best


def central_difference(f, x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    g = np.zeros_like(x)
    for idx in np.ndindex(*x.shape):
        xp, xm = x.copy(), x.copy()
        xp[idx] += h
        xm[idx] -= h
        g[idx] = (f(xp) - f(xm)) / (2 * h)
    return g


def lse_reference(C: np.ndarray, t: float) -> float:
    G = C @ C.T
    vals = [t * G[i, j] for i in range(len(C)) for j in range(len(C)) if i != j]
    return float(np.logaddexp.reduce(vals) / t)


def avg_reference(C: np.ndarray) -> float:
    G = C @ C.T
    K = len(C)
    return float(np.mean([max(G[i, j] for j in range(K) if j != i) for i in range(K)]))
