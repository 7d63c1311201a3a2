import math

import pytest
from hypothesis import given, settings, strategies as st

from oracles import members_by_multiplication, trial_division_is_prime
from polyvals.errors import NotADivisor, NotPrime, OutOfRange
from polyvals.field_core import (all_subgroups, contains, factorize, is_prime, make_context,
                                 primes_in, subgroup_of_order)

SMALL_PRIMES = primes_in(3, 100)


def test_context_13():
    ctx = make_context(13)
    assert ctx.totient_factorization == ((2, 2), (3, 1))
    assert ctx.divisors == (1, 2, 3, 4, 6, 12)


def test_context_7():
    assert make_context(7).divisors == (1, 2, 3, 6)


@pytest.mark.parametrize("p", [15, 91, 561, 2**61 + 1])
def test_not_prime(p):
    with pytest.raises(NotPrime):
        make_context(p)


@pytest.mark.parametrize("p", [2, 1, -7, 2**62 + 135])
def test_out_of_range(p):
    with pytest.raises(OutOfRange):
        make_context(p)


def test_primality_matches_trial_division():
    for n in range(2000):
        assert is_prime(n) == trial_division_is_prime(n), n


@pytest.mark.parametrize("n", [3215031751, 2152302898747, 3474749660383, 341550071728321,
                               3825123056546413051])
def test_strong_pseudoprimes_rejected(n):
    assert not is_prime(n)


@pytest.mark.parametrize("p", [2**61 - 1, 4611686018427387847, 1000000007, 998244353])
def test_large_context(p):
    ctx = make_context(p)
    assert math.prod(q**e for q, e in ctx.totient_factorization) == p - 1
    assert all(is_prime(q) for q, _ in ctx.totient_factorization)
    assert len(ctx.divisors) == math.prod(e + 1 for _, e in ctx.totient_factorization)
    g = ctx.primitive_root
    assert all(pow(g, (p - 1) // q, p) != 1 for q, _ in ctx.totient_factorization)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 2**62))
def test_factorize_product(n):
    fact = factorize(n)
    assert math.prod(q**e for q, e in fact.items()) == n
    assert all(is_prime(q) for q in fact)


def test_factorize_deterministic():
    n = 1000000007 * 998244353
    assert factorize(n, seed=1) == factorize(n, seed=1) == {998244353: 1, 1000000007: 1}


def test_subgroup_13_4():
    G = subgroup_of_order(make_context(13), 4)
    assert make_context(13).primitive_root == 2
    assert G.generator == 8
    assert G.members() == [1, 5, 8, 12]


def test_trivial_subgroup():
    assert subgroup_of_order(make_context(7), 1).members() == [1]


def test_not_a_divisor():
    with pytest.raises(NotADivisor):
        subgroup_of_order(make_context(7), 4)


@pytest.mark.parametrize("x,expected", [(12, True), (0, False), (2, False), (5, True)])
def test_contains_13_4(x, expected):
    assert contains(subgroup_of_order(make_context(13), 4), x) is expected


def test_full_group_contains_everything_nonzero():
    G = subgroup_of_order(make_context(13), 12)
    assert all(contains(G, x) for x in range(1, 13))


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_subgroups_exhaustive(p):
    ctx = make_context(p)
    groups = all_subgroups(ctx)
    for G in groups:
        mem = G.member_set
        assert len(mem) == G.order
        assert mem == members_by_multiplication(p, G.order)
        assert all(a * b % p in mem for a in mem for b in mem)
        assert all(contains(G, x) == (x in mem) == (x in G) for x in range(p))
        assert pow(G.generator, G.order, p) == 1
        assert all(pow(G.generator, G.order // q, p) != 1
                   for q, _ in ctx.totient_factorization if G.order % q == 0)
    for G1 in groups:
        for G2 in groups:
            if G2.order % G1.order == 0:
                assert G1.member_set <= G2.member_set


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_element_order(p):
    ctx = make_context(p)
    for x in range(1, p):
        k = next(k for k in range(1, p) if pow(x, k, p) == 1)
        assert ctx.element_order(x) == k == ctx.order_table[x]
