"""Reference bounds, exact proof inequalities and ratio sweeps.

The upper bounds evaluated here carry unknown implied constants and p^o(1)
factors, which are set to 1. They are reported as ratios, never asserted.
The inequalities that are asserted (the trivial bound, the pigeonhole pair
count, the lift's z-range) are exact.
"""

from __future__ import annotations

import csv
import io
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GridError, Inapplicable, WrongDegree
from .field_core import SubgroupSpec, is_prime, make_context, subgroup_of_order
from .polynomials import PolySpec, is_square_free
from .quadrics import (CenteredLift, centered_lift, classify,
                       congruence_pairs, count_points_columns, count_points_naive)
from .small_residues import ReductionProblem, ReductionSolution, solve_reduction
from .value_sets import (IntervalSpec, count_intersection, product_set_cardinality,
                         value_table)

OMITTED_FACTORS_NOTE = ("implied constants and p^o(1) factors set to 1; "
                        "ratios are diagnostics, not checks")


# --- reference formulas -------------------------------------------------------

def rhs_nfig(H: float, T: float, p: float, d: int) -> float:
    """(1 + H^((d+1)/4) p^(-1/(4d))) H^(1/(2d)) T^(1/2)."""
    return (1 + H ** ((d + 1) / 4) * p ** (-1 / (4 * d))) * H ** (1 / (2 * d)) * T ** 0.5


def rhs_tfh(H: float, p: float, d: int) -> float:
    """min(H^(2 - 1/d), H^(-(d-1)(d-2)/(2d)) p^(1/(2d)))."""
    return min(H ** (2 - 1 / d), H ** (-(d - 1) * (d - 2) / (2 * d)) * p ** (1 / (2 * d)))


def rhs_quadr(H: float, T: float, p: float) -> float:
    """(1 + H^(3/4) p^(-1/8)) T^(1/2) for square-free quadratics."""
    return (1 + H ** 0.75 * p ** (-1 / 8)) * T ** 0.5


def rhs_mobius_count(H: float, T: float, p: float) -> float:
    """(1 + H^(3/4) p^(-1/4)) T^(1/2), the count bound for linear fractional r."""
    return (1 + H ** 0.75 * p ** -0.25) * T ** 0.5


def rhs_mobius_tr(H: float, p: float) -> float:
    """min(H^2, H^(1/2) p^(1/2))."""
    return min(H ** 2, (H * p) ** 0.5)


def product_range_exponent(d: int, nu: int) -> float:
    """Exponent e of the admissible range H <= c p^e for the product-set growth."""
    return 1 / (4 * d * (d + 1) * nu ** (d + 1))


BOUNDS = {"nfig": rhs_nfig, "quadr": rhs_quadr}


# --- seeded polynomial samples --------------------------------------------------

def random_monic(p: int, d: int, rng: random.Random) -> PolySpec:
    return PolySpec((1,) + tuple(rng.randrange(p) for _ in range(d)), p)


def sample_monic(p: int, d: int, n: int, seed: int, square_free: bool = False) -> list[PolySpec]:
    """n distinct seeded monic polynomials of degree d (all of them if fewer exist)."""
    pool_size = p ** d
    if pool_size <= 4 * n:
        pool = [PolySpec((1,) + tuple(_digits(i, p, d)), p) for i in range(pool_size)]
        if square_free:
            pool = [f for f in pool if is_square_free(f)]
        rng = random.Random(seed * 1_000_003 + p)
        return sorted(rng.sample(pool, min(n, len(pool))), key=lambda f: f.coefficients)
    rng = random.Random(seed * 1_000_003 + p)
    out: dict[tuple, PolySpec] = {}
    while len(out) < n:
        f = random_monic(p, d, rng)
        if square_free and not is_square_free(f):
            continue
        out.setdefault(f.coefficients, f)
    return sorted(out.values(), key=lambda f: f.coefficients)


def _digits(i: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        i, r = divmod(i, p)
        out.append(r)
    return out[::-1]


# --- pigeonhole step -------------------------------------------------------------

@dataclass(frozen=True)
class PigeonholeResult:
    k: int
    lam: int
    pairs: int
    threshold: Fraction
    passed: bool


def pigeonhole_check(f: PolySpec, I: IntervalSpec, G: SubgroupSpec) -> PigeonholeResult:
    """Best ratio lambda in G \\ {1} and its pair count against (k^2 - 2k)/T."""
    if f.degree != 2:
        raise WrongDegree(f"expected a quadratic, got degree {f.degree}")
    p, T = f.p, G.order
    if T == 1:
        raise Inapplicable("trivial subgroup has no lambda != 1")
    if p <= 1 << 16:
        u = I.u % p
        vals = value_table(f, p)[u + 1:u + 1 + I.H]
    else:
        vals = [f(x % p) for x in I.points(p)]
    if 0 in vals:
        raise Inapplicable("f vanishes on the interval")
    members = G.member_set
    cnt = Counter(v for v in vals if v in members)
    k = len(cnt)
    if k < 4:
        raise Inapplicable(f"k = {k} < 4")
    best = _best_ratio(cnt, p)
    pairs = congruence_pairs(f, best, I.H, I.u, within=G)
    return PigeonholeResult(k, best, pairs, Fraction(k * (k - 2), T), pairs * T >= k * (k - 2))


def _best_ratio(cnt: Counter, p: int) -> int:
    """lambda != 1 maximising sum_w cnt[lambda w] cnt[w]; least lambda on ties."""
    if len(cnt) > 16 and p < 1 << 20:
        vs = np.fromiter(cnt.keys(), dtype=np.int64)
        cs = np.fromiter(cnt.values(), dtype=np.int64)
        inv = np.array([pow(int(w), -1, p) for w in vs], dtype=np.int64)
        ratios = (vs[:, None] * inv[None, :]) % p
        hist = np.bincount(ratios.ravel(), weights=np.outer(cs, cs).ravel(), minlength=p)
        hist[1] = -1
        return int(np.argmax(hist))
    items = list(cnt.items())
    hist: dict[int, int] = {}
    for w, cw in items:
        iw = pow(w, -1, p)
        for v, cv in items:
            if v != w:
                lam = v * iw % p
                hist[lam] = hist.get(lam, 0) + cv * cw
    return max(hist.items(), key=lambda t: (t[1], -t[0]))[0]


# --- replay of the quadratic argument ---------------------------------------------

def _fourth_root_floor(num: int, den: int) -> int:
    """floor((num/den)^(1/4))."""
    n = math.isqrt(math.isqrt(num // den))
    while (n + 1) ** 4 * den <= num:
        n += 1
    while n ** 4 * den > num:
        n -= 1
    return n


@dataclass
class ProofReplay:
    f: PolySpec
    shifted: PolySpec
    interval: IntervalSpec
    T: int
    pigeonhole: PigeonholeResult
    V: tuple[int, int, int, int]
    clamped: bool
    reduction: ReductionSolution
    lift: CenteredLift
    solutions: list[tuple[int, int, int]] = field(default_factory=list)
    failures: list[tuple[int, int]] = field(default_factory=list)
    coefficient_bounds_ok: bool = True
    peak_bound_ok: Optional[bool] = None
    z_bound: Optional[int] = None
    counters_agree: bool = True
    z_types: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (not self.failures and self.coefficient_bounds_ok and self.counters_agree
                and self.peak_bound_ok is not False and self.pigeonhole.passed)


def replay_quadratic_proof(f: PolySpec, I: IntervalSpec, G: SubgroupSpec,
                           check_counters: bool = True) -> ProofReplay:
    """Run the chain k -> lambda* -> reduction -> centered lift -> z-range and verify
    that every solution of f(x) = lambda* f(y) in the box lifts to F(x,y) = z p
    with |z| <= z_range.

    Raises Inapplicable (pigeonhole preconditions) or NotFound (no multiplier
    exists for the clamped bounds).
    """
    pig = pigeonhole_check(f, I, G)
    p, H, lam = f.p, I.H, pig.lam
    fu = f.shift(I.u)
    a0, a1, a2 = fu.coefficients
    b = tuple(x % p for x in (a0, -lam * a0, a1, -lam * a1))
    # V1 = V2 = 2 p^(3/4) H^(-1/2), V3 = V4 = 2 p^(3/4) H^(1/2); fourth powers are exact.
    quad4 = (Fraction(16 * p**3, H * H), Fraction(16 * p**3 * H * H))
    raw = [_fourth_root_floor(16 * p**3, H * H), _fourth_root_floor(16 * p**3 * H * H, 1)]
    Vq, Vl = (min(max(v, 1), p - 1) for v in raw)
    clamped = (Vq, Vl) != tuple(raw)
    prod4 = Fraction(1)
    for r4, v_int, v_raw in zip(quad4, (Vq, Vl), raw):
        prod4 *= (r4 if v_int == v_raw else Fraction(v_int) ** 4) ** 2
    met = prod4 > p**12
    prob = ReductionProblem(p, b, (Vq, Vq, Vl, Vl))
    sol = solve_reduction(prob, condition_met=met)
    lift = centered_lift(fu, lam, sol.v, H)
    A, _, C, D, E, _ = lift.conic.coefficients
    rep = ProofReplay(f, fu, I, G.order, pig, (Vq, Vq, Vl, Vl), clamped, sol, lift)
    rep.coefficient_bounds_ok = max(abs(A), abs(C)) <= Vq and max(abs(D), abs(E)) <= Vl
    if not clamped:
        # peak |F| <= 8 p^(3/4) H^(3/2) + p/2, i.e. (2 peak - p)^4 <= 16^4 p^3 H^6
        rep.peak_bound_ok = _peak_within(lift, p, H)
        rep.z_bound = math.ceil(8 * p ** 0.75 * H ** 1.5 / p + 0.5)
        rep.peak_bound_ok = rep.peak_bound_ok and lift.z_range <= rep.z_bound
    ys: dict[int, list[int]] = {}
    for y in range(1, H + 1):
        ys.setdefault(lam * fu(y) % p, []).append(y)
    for x in range(1, H + 1):
        for y in ys.get(fu(x), ()):
            val = lift.conic(x, y)
            if val % p or abs(val // p) > lift.z_range:
                rep.failures.append((x, y))
            else:
                rep.solutions.append((x, y, val // p))
    if check_counters:
        for z in range(-lift.z_range, lift.z_range + 1):
            cz = lift.conic.shifted_constant(-z * p)
            n1, n2 = count_points_naive(cz, H), count_points_columns(cz, H)
            if n1 != n2:
                rep.counters_agree = False
            rep.z_types[z] = (classify(cz), n2)
    return rep


def _peak_within(lift: CenteredLift, p: int, H: int) -> bool:
    peak = max(abs(lift.conic(x, y)) for x in range(1, H + 1) for y in range(1, H + 1))
    excess = 2 * peak - p
    return excess <= 0 or excess**4 <= 16**4 * p**3 * H**6


# --- report rows and sweeps ---------------------------------------------------------

CSV_HEADER = ("p", "f_coeffs", "u", "H", "T", "count", "bound", "ratio")


@dataclass(frozen=True)
class BoundReport:
    p: int
    f_coeffs: tuple[int, ...]
    u: int
    H: int
    T: int
    exact_count: int
    bound_value: float

    def __post_init__(self):
        if not self.bound_value > 0 or not math.isfinite(self.bound_value):
            raise ValueError(f"bound must be finite and positive, got {self.bound_value}")

    @property
    def ratio(self) -> float:
        return self.exact_count / self.bound_value

    @property
    def instance(self) -> tuple:
        return (self.p, self.f_coeffs, self.u, self.H, self.T)

    def csv_row(self) -> list[str]:
        return [str(self.p), ":".join(map(str, self.f_coeffs)), str(self.u), str(self.H),
                str(self.T), str(self.exact_count), repr(self.bound_value), f"{self.ratio:.6g}"]

    @classmethod
    def from_csv_row(cls, row: Sequence[str]) -> "BoundReport":
        p, fc, u, H, T, count, bound, ratio = row
        rep = cls(int(p), tuple(int(c) for c in fc.split(":")), int(u), int(H), int(T),
                  int(count), float(bound))
        if f"{rep.ratio:.6g}" != ratio:
            raise ValueError(f"ratio column {ratio!r} inconsistent with count/bound")
        return rep


@dataclass(frozen=True)
class SweepGrid:
    primes: tuple[int, ...]
    H_values: tuple[int, ...]
    degree: int = 2
    polys_per_prime: int = 1
    u_values: tuple[int, ...] = (0,)
    bound: str = "nfig"
    min_T: int = 1
    max_T: Optional[int] = None
    seed: int = 0

    def validate(self) -> None:
        if self.bound not in BOUNDS:
            raise GridError("bound", f"unknown bound {self.bound!r}; choose from {sorted(BOUNDS)}")
        if self.bound == "quadr" and self.degree != 2:
            raise GridError("degree", "the quadratic bound needs degree 2")
        if self.bound == "nfig" and self.degree < 2:
            raise GridError("degree", "the general bound needs degree >= 2")
        if self.polys_per_prime < 1:
            raise GridError("polys_per_prime", "must be >= 1")
        for p in self.primes:
            if p < 3 or not is_prime(p):
                raise GridError("primes", f"{p} is not an odd prime")
            if any(not 1 <= H <= p for H in self.H_values):
                raise GridError("H_values", f"need 1 <= H <= p = {p}")
            if any(not 0 <= u < p for u in self.u_values):
                raise GridError("u_values", f"need 0 <= u < p = {p}")


def _sweep_prime(grid: SweepGrid, p: int) -> list[BoundReport]:
    ctx = make_context(p)
    polys = sample_monic(p, grid.degree, grid.polys_per_prime, grid.seed,
                         square_free=grid.bound == "quadr")
    Ts = [T for T in ctx.divisors
          if T >= grid.min_T and (grid.max_T is None or T <= grid.max_T)]
    groups = [subgroup_of_order(ctx, T) for T in Ts]
    rows = []
    for f in polys:
        for u in grid.u_values:
            for H in grid.H_values:
                I = IntervalSpec(u, H)
                for G in groups:
                    n = count_intersection(f, I, G)
                    if grid.bound == "quadr":
                        bound = rhs_quadr(H, G.order, p)
                    else:
                        bound = rhs_nfig(H, G.order, p, grid.degree)
                    rows.append(BoundReport(p, f.coefficients, u, H, G.order, n, bound))
    return rows


def ratio_sweep(grid: SweepGrid, workers: int = 1) -> list[BoundReport]:
    """One row per (p, f, u, H, T), sorted lexicographically by that tuple."""
    grid.validate()
    primes = sorted(set(grid.primes))
    if workers > 1 and len(primes) > 1:
        with ProcessPoolExecutor(workers) as ex:
            chunks = list(ex.map(_sweep_prime, [grid] * len(primes), primes))
    else:
        chunks = [_sweep_prime(grid, p) for p in primes]
    rows = [r for c in chunks for r in c]
    rows.sort(key=lambda r: r.instance)
    return rows


def sweep_summary(rows: Sequence[BoundReport], bound: str) -> dict:
    if not rows:
        return {"rows": 0, "bound": bound, "max_ratio": 0, "argmax": None,
                "note": OMITTED_FACTORS_NOTE}
    top = max(rows, key=lambda r: r.ratio)
    return {"rows": len(rows), "bound": bound, "max_ratio": float(f"{top.ratio:.6g}"),
            "argmax": {"p": top.p, "f": list(top.f_coeffs), "u": top.u, "H": top.H, "T": top.T},
            "note": OMITTED_FACTORS_NOTE}


def write_csv(rows: Iterable[BoundReport], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_row())


def read_csv(stream) -> list[BoundReport]:
    rd = csv.reader(stream)
    header = next(rd)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected header {header}")
    return [BoundReport.from_csv_row(row) for row in rd]


def rows_to_csv(rows: Iterable[BoundReport]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def product_growth(f: PolySpec, H: int, nu: int, work_cap: int = 10**7) -> dict:
    """#f(I)^(nu) against H^nu for I = {1..H}, with the position of H in the
    admissible range. Report only."""
    res = product_set_cardinality(f, IntervalSpec(0, H), nu, work_cap=work_cap)
    e = product_range_exponent(f.degree, nu)
    return {"p": f.p, "f": list(f.coefficients), "H": H, "nu": nu,
            "cardinality": res.cardinality, "growth_ratio": res.cardinality / H**nu,
            "range_ratio": H / f.p**e, "note": OMITTED_FACTORS_NOTE}
