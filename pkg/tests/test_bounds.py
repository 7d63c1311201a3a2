import io
import math
import random

import pytest

from polyvals.bounds import (BoundReport, SweepGrid, pigeonhole_check, product_growth,
                             ratio_sweep, read_csv, replay_quadratic_proof, rhs_mobius_count,
                             rhs_mobius_tr, rhs_nfig, rhs_quadr, rhs_tfh, rows_to_csv,
                             sample_monic, sweep_summary)
from polyvals.errors import GridError, Inapplicable, NotFound
from polyvals.field_core import make_context, primes_in, subgroup_of_order
from polyvals.polynomials import PolySpec, is_square_free
from polyvals.quadrics import congruence_pairs
from polyvals.value_sets import IntervalSpec, count_intersection


def test_rhs_nfig():
    assert rhs_nfig(16, 4, 2**20, 2) == pytest.approx(9.6568542, rel=1e-7)
    assert rhs_nfig(1, 4, 101, 2) == pytest.approx((1 + 101 ** -0.125) * 2)
    assert rhs_nfig(1, 1, 10**18, 2) == pytest.approx(1, abs=1e-2)


def test_rhs_tfh():
    assert rhs_tfh(7, 10**6, 2) == pytest.approx(min(7**1.5, 10**1.5))
    assert rhs_tfh(1, 10**6, 3) == 1
    assert rhs_tfh(8, 10**6, 3) == pytest.approx(min(32, 5))


def test_rhs_quadr():
    assert rhs_quadr(16, 9, 2**16) == pytest.approx(9)
    assert rhs_quadr(1, 1, 101) == pytest.approx(1 + 101 ** -0.125)


def test_mobius_catalog():
    assert rhs_mobius_count(16, 4, 2**16) == pytest.approx((1 + 8 / 16) * 2)
    assert rhs_mobius_tr(4, 100) == pytest.approx(min(16, 20))


def test_rhs_monotone():
    for p in (101, 997, 10007):
        for d in (2, 3, 4):
            for T in (1, 2, 5, 50):
                seq = [rhs_nfig(H, T, p, d) for H in range(1, 200)]
                assert all(a <= b for a, b in zip(seq, seq[1:]))
                assert rhs_nfig(10, T, p, d) <= rhs_nfig(10, T + 1, p, d)
            seq = [rhs_tfh(H, p, d) for H in range(1, 200)]
            if d == 2:
                assert all(a <= b for a, b in zip(seq, seq[1:]))
        seq = [rhs_quadr(H, 7, p) for H in range(1, 200)]
        assert all(a <= b for a, b in zip(seq, seq[1:]))


def test_pigeonhole_inapplicable():
    ctx = make_context(13)
    f = PolySpec.from_coeffs([1, 0, 1], 13)
    with pytest.raises(Inapplicable):
        pigeonhole_check(f, IntervalSpec(0, 5), subgroup_of_order(ctx, 1))
    with pytest.raises(Inapplicable):
        pigeonhole_check(f, IntervalSpec(0, 2), subgroup_of_order(ctx, 12))
    with pytest.raises(Inapplicable):          # f(5) = 26 = 0 mod 13
        pigeonhole_check(f, IntervalSpec(0, 6), subgroup_of_order(ctx, 12))


@pytest.mark.parametrize("p", [29, 31, 37])
def test_pigeonhole_best_lambda(p):
    ctx = make_context(p)
    for f in sample_monic(p, 2, 5, seed=3, square_free=True):
        for T in ctx.divisors[1:]:
            G = subgroup_of_order(ctx, T)
            for u in range(0, p, 5):
                for H in range(4, p + 1, 3):
                    try:
                        res = pigeonhole_check(f, IntervalSpec(u, H), G)
                    except Inapplicable:
                        continue
                    counts = {lam: congruence_pairs(f, lam, H, u, within=G)
                              for lam in G.member_set - {1}}
                    best = max(counts.values())
                    assert res.pairs == best == counts[res.lam]
                    assert res.lam == min(l for l, c in counts.items() if c == best)
                    assert res.passed and res.pairs * T >= res.k * (res.k - 2)


def test_sample_monic():
    fs = sample_monic(5, 2, 50, seed=0, square_free=True)
    assert len(fs) == 20 and all(is_square_free(f) for f in fs)
    a = sample_monic(101, 2, 25, seed=7)
    assert a == sample_monic(101, 2, 25, seed=7) and len({f.coefficients for f in a}) == 25


def test_replay_unclamped():
    p, H = 401, 4
    ctx = make_context(p)
    G = subgroup_of_order(ctx, p - 1)
    f = next(f for f in sample_monic(p, 2, 50, seed=11, square_free=True)
             if all(f(x) for x in range(1, H + 1)) and len({f(x) for x in range(1, H + 1)}) == 4)
    rep = replay_quadratic_proof(f, IntervalSpec(0, H), G)
    assert not rep.clamped and rep.reduction.condition_met
    assert rep.ok and rep.peak_bound_ok
    assert len(rep.solutions) >= rep.pigeonhole.pairs


def test_report_round_trip():
    r = BoundReport(101, (1, 0, 3), 5, 10, 20, 4, rhs_quadr(10, 20, 101))
    rows = read_csv(io.StringIO(rows_to_csv([r])))
    assert rows == [r]
    with pytest.raises(ValueError):
        BoundReport(101, (1, 0, 3), 5, 10, 20, 4, 0.0)


def test_empty_sweep():
    rows = ratio_sweep(SweepGrid(primes=(), H_values=()))
    assert rows == []
    assert sweep_summary(rows, "nfig")["max_ratio"] == 0


def test_single_instance_sweep():
    grid = SweepGrid(primes=(101,), H_values=(10,), u_values=(3,), min_T=20, max_T=20)
    (row,) = ratio_sweep(grid)
    f = PolySpec(row.f_coeffs, 101)
    G = subgroup_of_order(make_context(101), 20)
    assert row.exact_count == count_intersection(f, IntervalSpec(3, 10), G)
    assert row.bound_value == rhs_nfig(10, 20, 101, 2)


def test_seeded_sweep_trivial_bound():
    primes = primes_in(100, 1000)
    grid = SweepGrid(primes=tuple(primes[:12]), H_values=(1, 5, 17, 40, 99), u_values=(0, 7),
                     bound="quadr", seed=5)
    rows = ratio_sweep(grid)
    assert len(rows) >= 1000
    assert all(r.exact_count <= min(r.H, r.T) for r in rows)
    assert [r.instance for r in rows] == sorted(r.instance for r in rows)
    assert rows == ratio_sweep(grid)


def test_sweep_parallel_matches_serial():
    grid = SweepGrid(primes=(101, 103, 107), H_values=(3, 9), bound="nfig", degree=3)
    assert ratio_sweep(grid, workers=2) == ratio_sweep(grid)


@pytest.mark.parametrize("kw,field", [
    ({"primes": (100,)}, "primes"),
    ({"primes": (101,), "H_values": (200,)}, "H_values"),
    ({"primes": (101,), "bound": "quadr", "degree": 3}, "degree"),
    ({"primes": (101,), "bound": "bogus"}, "bound"),
    ({"primes": (101,), "u_values": (101,)}, "u_values"),
])
def test_grid_validation(kw, field):
    kw.setdefault("H_values", (1,))
    with pytest.raises(GridError) as exc:
        ratio_sweep(SweepGrid(**kw))
    assert exc.value.field == field


def test_product_growth_report():
    rep = product_growth(PolySpec.from_coeffs([1, 0, 1], 10007), 6, 2)
    assert rep["cardinality"] == 21      # 6 values, 21 multisets, all products distinct below p
    assert rep["growth_ratio"] == pytest.approx(21 / 36)
