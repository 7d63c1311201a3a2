"""Integer conics: classification, exact point counts in boxes, and the
centered lift of v * (f(X) - lambda f(Y))."""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import ZeroLambda, ZeroPolynomial
from .field_core import SubgroupSpec
from .polynomials import BivariateModPoly, PolySpec, build_q_lambda
from .small_residues import centered_lift_value


class ConicType(enum.Enum):
    Degenerate = "Degenerate"
    ParabolaType = "ParabolaType"
    NondegenerateConic = "NondegenerateConic"


@dataclass(frozen=True)
class IntConic:
    A: int
    B: int
    C: int
    D: int
    E: int
    F: int

    def __post_init__(self):
        if not any(self.coefficients):
            raise ZeroPolynomial("conic is identically zero")

    @classmethod
    def parse(cls, text: str) -> "IntConic":
        parts = [int(s) for s in text.split(",")]
        if len(parts) != 6:
            raise ValueError(f"expected six comma-separated integers, got {text!r}")
        return cls(*parts)

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    @property
    def delta(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def det3(self) -> int:
        A, B, C, D, E, F = self.coefficients
        return (2 * A * (4 * C * F - E * E) - B * (2 * B * F - D * E)
                + D * (B * E - 2 * C * D))

    def __call__(self, x: int, y: int) -> int:
        A, B, C, D, E, F = self.coefficients
        return A * x * x + B * x * y + C * y * y + D * x + E * y + F

    def shifted_constant(self, k: int) -> "IntConic":
        """The conic G(X, Y) + k."""
        return IntConic(self.A, self.B, self.C, self.D, self.E, self.F + k)

    def __str__(self):
        return ",".join(map(str, self.coefficients))


def _classify(det3: int, delta: int) -> ConicType:
    if det3 == 0:
        return ConicType.Degenerate
    if delta == 0:
        return ConicType.ParabolaType
    return ConicType.NondegenerateConic


def classify(c: IntConic) -> ConicType:
    """Degenerate iff det3 = 0; otherwise parabola-type iff the discriminant vanishes."""
    return _classify(c.det3, c.delta)


def classify_mod_p(q: BivariateModPoly) -> ConicType:
    A, B, C = q.A, q.B, q.C
    return _classify(q.det3(), (B * B - 4 * A * C) % q.p)


def count_points_naive(c: IntConic, H: int) -> int:
    """#{(x, y) in [0, H]^2 : c(x, y) = 0} by a double loop."""
    A, B, C, D, E, F = c.coefficients
    n = 0
    for x in range(H + 1):
        # c(x, y) = C y^2 + (B x + E) y + (A x^2 + D x + F)
        b = B * x + E
        k = A * x * x + D * x + F
        for y in range(H + 1):
            if (C * y + b) * y + k == 0:
                n += 1
    return n


def count_points_columns(c: IntConic, H: int) -> int:
    """Same count, solving the quadratic in y for each column x exactly."""
    A, B, C, D, E, F = c.coefficients
    n = 0
    for x in range(H + 1):
        b = B * x + E
        k = A * x * x + D * x + F
        if C == 0:
            if b == 0:
                if k == 0:
                    n += H + 1
            elif k % b == 0 and 0 <= -k // b <= H:
                n += 1
            continue
        disc = b * b - 4 * C * k
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        roots = {-b + s, -b - s}
        for num in roots:
            if num % (2 * C) == 0 and 0 <= num // (2 * C) <= H:
                n += 1
    return n


def count_points_box(c: IntConic, H: int, cross_check: bool = False) -> int:
    if H < 0:
        raise ValueError("box size must be >= 0")
    n = count_points_columns(c, H)
    if cross_check:
        m = count_points_naive(c, H)
        if m != n:
            raise AssertionError(f"point counters disagree on {c} with H={H}: {m} vs {n}")
    return n


def congruence_pairs(f: PolySpec, lam: int, H: int, u: int = 0,
                     within: Optional[SubgroupSpec] = None) -> int:
    """#{(x, y) in {u+1..u+H}^2 : f(x) = lam f(y) mod p}.

    With ``within`` given, only pairs whose values f(x), f(y) lie in that
    subgroup are counted.
    """
    p = f.p
    lam %= p
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero mod p")
    vals = [f(x % p) for x in range(u + 1, u + H + 1)]
    if within is not None:
        vals = [v for v in vals if v in within]
    targets = Counter(lam * v % p for v in vals)
    return sum(targets.get(v, 0) for v in vals)


@dataclass(frozen=True)
class CenteredLift:
    conic: IntConic
    v: int
    lam: int
    p: int
    H: int
    z_range: int

    def congruent_to(self, q: BivariateModPoly, x: int, y: int) -> bool:
        return (self.conic(x, y) - self.v * q(x, y)) % self.p == 0


def _range_extremes(vals):
    return min(vals), max(vals)


def centered_lift(f: PolySpec, lam: int, v: int, H: int) -> CenteredLift:
    """Reduce each coefficient of v * Q_lambda into (-p/2, p/2] and bound |z| in
    F(x, y) = z p over the box {1..H}^2."""
    p = f.p
    if math.gcd(v, p) != 1:
        raise ValueError(f"multiplier {v} is not invertible mod {p}")
    q = build_q_lambda(f, lam)
    conic = IntConic(*(centered_lift_value(v * a, p) for a in q.coefficients))
    A, _, C, D, E, F = conic.coefficients
    # B = 0, so F(x, y) = g(x) + h(y) + F splits and |F| peaks at extremes of g and h.
    g_lo, g_hi = _range_extremes([A * x * x + D * x for x in range(1, H + 1)])
    h_lo, h_hi = _range_extremes([C * y * y + E * y for y in range(1, H + 1)])
    peak = max(abs(g_hi + h_hi + F), abs(g_lo + h_lo + F))
    z_range = -(-peak // p)
    return CenteredLift(conic, v, lam % p, p, H, z_range)
