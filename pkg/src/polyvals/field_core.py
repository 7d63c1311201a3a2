"""Prime fields, factorization of p - 1 and the subgroups of F_p^*."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import NotADivisor, NotPrime, OutOfRange

P_MAX = 1 << 62

# The first twelve prime bases are a proven witness set for n < 3.18 * 10^23.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_TRIAL_CUTOFF = 1 << 12
_SMALL_PRIMES = [q for q in range(2, _TRIAL_CUTOFF)
                 if all(q % r for r in range(2, math.isqrt(q) + 1))]
DEFAULT_SEED = 20240613

# Member sets are materialised only for subgroups up to this order.
MEMBER_SET_CAP = 1 << 20


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2^64."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int, rng: random.Random) -> int:
    """Brent's variant of Pollard rho; returns a nontrivial factor of composite odd n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int, seed: int = DEFAULT_SEED) -> dict[int, int]:
    """Full factorization {prime: exponent} of n >= 1."""
    out: dict[int, int] = {}
    for q in _SMALL_PRIMES:
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    if n == 1:
        return dict(sorted(out.items()))
    rng = random.Random(seed)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _rho(m, rng)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


def _divisors(fact: dict[int, int]) -> tuple[int, ...]:
    divs = [1]
    for q, e in fact.items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


@dataclass(frozen=True)
class FieldContext:
    p: int
    totient_factorization: tuple[tuple[int, int], ...]
    divisors: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p - 1

    @cached_property
    def primitive_root(self) -> int:
        """Least primitive root, found by ascending search."""
        p = self.p
        qs = [q for q, _ in self.totient_factorization]
        g = 1
        while True:
            g += 1
            if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
                return g

    def element_order(self, x: int) -> int:
        """Multiplicative order of a nonzero residue x."""
        p = self.p
        x %= p
        if x == 0:
            raise ValueError("0 has no multiplicative order")
        t = p - 1
        for q, e in self.totient_factorization:
            for _ in range(e):
                if pow(x, t // q, p) == 1:
                    t //= q
                else:
                    break
        return t

    @cached_property
    def order_table(self) -> tuple[int, ...]:
        """Orders of 0..p-1, with 0 mapped to 0. Only sensible for desk-scale p."""
        return (0,) + tuple(self.element_order(x) for x in range(1, self.p))


@lru_cache(maxsize=512)
def make_context(p: int, seed: int = DEFAULT_SEED) -> FieldContext:
    if not 3 <= p < P_MAX:
        raise OutOfRange(f"p must satisfy 3 <= p < 2^62, got {p}")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    fact = factorize(p - 1, seed)
    return FieldContext(p, tuple(fact.items()), _divisors(fact))


@dataclass(frozen=True)
class SubgroupSpec:
    p: int
    order: int
    generator: int
    membership_exponent: int

    @cached_property
    def member_set(self) -> frozenset[int]:
        if self.order > MEMBER_SET_CAP:
            raise OverflowError(f"subgroup of order {self.order} too large to enumerate")
        out, x = [], 1
        for _ in range(self.order):
            out.append(x)
            x = x * self.generator % self.p
        return frozenset(out)

    def members(self) -> list[int]:
        return sorted(self.member_set)

    def __contains__(self, x: int) -> bool:
        if self.order <= MEMBER_SET_CAP:
            return x % self.p in self.member_set
        return contains(self, x)


def subgroup_of_order(ctx: FieldContext, T: int) -> SubgroupSpec:
    """The unique subgroup of F_p^* of order T."""
    if T < 1 or (ctx.p - 1) % T:
        raise NotADivisor(f"{T} does not divide p - 1 = {ctx.p - 1}")
    e = (ctx.p - 1) // T
    return SubgroupSpec(ctx.p, T, pow(ctx.primitive_root, e, ctx.p), e)


def contains(G: SubgroupSpec, x: int) -> bool:
    x %= G.p
    return x != 0 and pow(x, G.order, G.p) == 1


def all_subgroups(ctx: FieldContext) -> list[SubgroupSpec]:
    return [subgroup_of_order(ctx, T) for T in ctx.divisors]


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi."""
    return [n for n in range(max(lo, 2), hi) if is_prime(n)]
