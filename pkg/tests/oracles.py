"""Brute-force reference computations, kept independent of the library code paths."""

import itertools

import numpy as np


def trial_division_is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def members_by_multiplication(p, T):
    """{x in F_p^* : x^T = 1}, raising to the T-th power by repeated multiplication."""
    out = set()
    for x in range(1, p):
        acc = 1
        for _ in range(T):
            acc = acc * x % p
        if acc == 1:
            out.add(x)
    return out


def eval_low_first(coeffs_high_first, x, p):
    return sum(a * x ** k for k, a in enumerate(reversed(coeffs_high_first))) % p


def has_repeated_root(coeffs, p):
    """Factor out roots one at a time by synthetic division and look for a repeat."""
    c = list(coeffs)
    for r in range(p):
        if eval_low_first(c, r, p) == 0:
            q, acc = [], 0
            for a in c[:-1]:
                acc = (acc * r + a) % p
                q.append(acc)
            if len(q) > 1 and eval_low_first(q, r, p) == 0:
                return True
    return False


def reduction_solutions(p, b, V):
    """All v in 1..p-1 with min_k |b_i v - k p| <= V_i for every i."""
    out = []
    for v in range(1, p):
        if all(min(abs(bi * v - k * p) for k in range(bi * v // p - 1, bi * v // p + 3)) <= Vi
               for bi, Vi in zip(b, V)):
            out.append(v)
    return out


def box_points(coeffs, H):
    A, B, C, D, E, F = coeffs
    return sorted((x, y) for x in range(H + 1) for y in range(H + 1)
                  if A * x * x + B * x * y + C * y * y + D * x + E * y + F == 0)


def tf_full_table(p, H_max, max_degree=2):
    """T_f for every polynomial of degree <= max_degree over F_p and H = 1..H_max.

    Builds the whole (T, u) containment table for all polynomials at once with
    no early exit, then takes the lexicographic minimum. Returns int arrays
    T[H-1, i] and U[H-1, i] indexed by the coefficient tuple's base-p rank
    (highest degree first), with T = 0 meaning no interval qualifies.
    """
    n = max_degree + 1
    N = p ** n
    idx = np.arange(N, dtype=np.int64)
    coeffs = [(idx // p ** (n - 1 - j)) % p for j in range(n)]
    x = np.arange(p, dtype=np.int64)
    vals = np.zeros((N, p), dtype=np.int64)
    for a in coeffs:
        vals = (vals * x[None, :] + a[:, None]) % p
    vals2 = np.concatenate([vals, vals], axis=1)
    divisors = [T for T in range(1, p) if (p - 1) % T == 0]
    Tout = np.zeros((H_max, N), dtype=np.int64)
    Uout = np.zeros((H_max, N), dtype=np.int64)
    for T in divisors:
        mask = np.zeros(p, dtype=bool)
        mask[sorted(members_by_multiplication(p, T))] = True
        inG = mask[vals2]
        window = np.ones((N, p), dtype=bool)
        for h in range(1, H_max + 1):
            window &= inG[:, h:p + h]
            hit = window.any(axis=1) & (Tout[h - 1] == 0)
            Tout[h - 1][hit] = T
            Uout[h - 1][hit] = window.argmax(axis=1)[hit]
    return Tout, Uout


def multisets(values, nu):
    return list(itertools.combinations_with_replacement(sorted(values), nu))
