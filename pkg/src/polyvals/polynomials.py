"""Univariate polynomials and rational functions over F_p, the quadric
f(X) - lambda f(Y), and exact integer polynomials in the coefficient variables.

Coefficient sequences are stored highest degree first: ``(a0, a1, ..., ad)``
is ``a0*X^d + a1*X^(d-1) + ... + ad``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, Sequence, Union

from .errors import DegreeTooSmall, EmptyVector, WrongDegree, ZeroLambda


class _Pole:
    __slots__ = ()

    def __repr__(self):
        return "POLE"


POLE = _Pole()


@dataclass(frozen=True)
class PolySpec:
    coefficients: tuple[int, ...]
    p: int

    def __post_init__(self):
        c = self.coefficients
        if not c:
            raise ValueError("empty coefficient sequence")
        if any(not 0 <= a < self.p for a in c):
            raise ValueError(f"coefficients must be reduced mod {self.p}: {c}")
        if len(c) > 1 and c[0] == 0:
            raise ValueError(f"leading coefficient is zero: {c}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], p: int) -> "PolySpec":
        """Reduce mod p and strip leading zeros."""
        c = [a % p for a in coeffs]
        while len(c) > 1 and c[0] == 0:
            c.pop(0)
        return cls(tuple(c) or (0,), p)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    def __call__(self, x: int) -> int:
        acc = 0
        for a in self.coefficients:
            acc = (acc * x + a) % self.p
        return acc

    def monic(self) -> "PolySpec":
        inv = pow(self.coefficients[0], -1, self.p)
        return PolySpec.from_coeffs([a * inv for a in self.coefficients], self.p)

    def shift(self, u: int) -> "PolySpec":
        """The polynomial f(X + u)."""
        p = self.p
        out = [0]
        # Horner in the ring F_p[X]: out = out * (X + u) + a
        for a in self.coefficients:
            nxt = out + [0]
            for i in range(len(out)):
                nxt[i + 1] = (nxt[i + 1] + out[i] * u) % p
            nxt[-1] = (nxt[-1] + a) % p
            out = nxt
        return PolySpec.from_coeffs(out, p)

    def derivative(self) -> "PolySpec":
        d = self.degree
        return PolySpec.from_coeffs(
            [a * (d - i) for i, a in enumerate(self.coefficients[:-1])] or [0], self.p)

    def __str__(self):
        return format_poly(self)


@dataclass(frozen=True)
class RationalSpec:
    numerator: PolySpec
    denominator: PolySpec

    def __post_init__(self):
        if self.numerator.p != self.denominator.p:
            raise ValueError("numerator and denominator over different fields")
        if self.denominator.is_zero():
            raise ValueError("zero denominator")
        if poly_gcd(self.numerator, self.denominator).degree > 0:
            raise ValueError("numerator and denominator are not coprime")

    @property
    def p(self) -> int:
        return self.numerator.p

    def __call__(self, x: int):
        return evaluate(self, x)


Function = Union[PolySpec, RationalSpec]


def as_rational(r: Function) -> RationalSpec:
    if isinstance(r, RationalSpec):
        return r
    return RationalSpec(r, PolySpec((1,), r.p))


def evaluate(r: Function, x: int):
    """r(x) mod p, or POLE when the denominator vanishes at x."""
    if isinstance(r, PolySpec):
        return r(x)
    g = r.denominator(x)
    if g == 0:
        return POLE
    return r.numerator(x) * pow(g, -1, r.p) % r.p


# --- F_p[X] arithmetic on low-first coefficient lists -----------------------

def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        q = a[-1] * inv % p
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - q * c) % p
        a.pop()
    return _trim(a or [0])


def poly_gcd(f: PolySpec, g: PolySpec) -> PolySpec:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    p = f.p
    a = _trim([c for c in reversed(f.coefficients)])
    b = _trim([c for c in reversed(g.coefficients)])
    while any(b):
        a, b = b, _polymod(a, b, p)
    res = PolySpec.from_coeffs(reversed(a), p)
    return res if res.is_zero() else res.monic()


def is_square_free(f: PolySpec) -> bool:
    if f.degree < 1:
        raise DegreeTooSmall(f"degree {f.degree} < 1")
    return poly_gcd(f, f.derivative()).degree == 0


# --- text form ---------------------------------------------------------------

def format_poly(f: PolySpec) -> str:
    terms = []
    d = f.degree
    for i, a in enumerate(f.coefficients):
        k = d - i
        terms.append(f"{a}*X^{k}" if k > 1 else f"{a}*X" if k == 1 else str(a))
    return " + ".join(terms) + f" mod {f.p}"


_TERM = re.compile(r"^(-?\d+)(?:\*X(?:\^(\d+))?)?$")


def parse_poly(text: str) -> PolySpec:
    body, sep, mod = text.rpartition(" mod ")
    if not sep:
        raise ValueError(f"missing ' mod p' suffix: {text!r}")
    p = int(mod)
    coeffs: dict[int, int] = {}
    for term in body.replace(" ", "").split("+"):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"bad term {term!r}")
        k = 0 if "X" not in term else int(m.group(2) or 1)
        coeffs[k] = coeffs.get(k, 0) + int(m.group(1))
    d = max(coeffs)
    return PolySpec.from_coeffs([coeffs.get(k, 0) for k in range(d, -1, -1)], p)


# --- the quadric f(X) - lambda f(Y) -----------------------------------------

@dataclass(frozen=True)
class BivariateModPoly:
    """A X^2 + B XY + C Y^2 + D X + E Y + F over F_p."""

    A: int
    B: int
    C: int
    D: int
    E: int
    F: int
    p: int

    @property
    def coefficients(self) -> tuple[int, int, int, int, int, int]:
        return (self.A, self.B, self.C, self.D, self.E, self.F)

    def __call__(self, x: int, y: int) -> int:
        A, B, C, D, E, F = self.coefficients
        return (A * x * x + B * x * y + C * y * y + D * x + E * y + F) % self.p

    def det3(self) -> int:
        """det [[2A,B,D],[B,2C,E],[D,E,2F]] mod p."""
        A, B, C, D, E, F = self.coefficients
        det = (2 * A * (4 * C * F - E * E) - B * (2 * B * F - D * E)
               + D * (B * E - 2 * C * D))
        return det % self.p


def build_q_lambda(f: PolySpec, lam: int) -> BivariateModPoly:
    """Coefficients of f(X) - lam f(Y) for a quadratic f."""
    if f.degree != 2:
        raise WrongDegree(f"expected a quadratic, got degree {f.degree}")
    p = f.p
    lam %= p
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero mod p")
    a0, a1, a2 = f.coefficients
    return BivariateModPoly(a0, 0, -lam * a0 % p, a1, -lam * a1 % p,
                            a2 * (1 - lam) % p, p)


# --- exact integer polynomials in Z_1..Z_n ----------------------------------

Exponent = tuple[int, ...]


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPolyZ:
    """Sparse polynomial over Z; zero terms are never stored."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] = ()):
        self.nvars = nvars
        self.terms: dict[Exponent, int] = {e: c for e, c in dict(terms).items() if c}

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MultiPolyZ":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPolyZ":
        """Z_{i+1} (zero-based index i)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other: "MultiPolyZ") -> "MultiPolyZ":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPolyZ(self.nvars, out)

    def __neg__(self) -> "MultiPolyZ":
        return MultiPolyZ(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPolyZ") -> "MultiPolyZ":
        return self + (-other)

    def __mul__(self, other: "MultiPolyZ") -> "MultiPolyZ":
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPolyZ(self.nvars, out)

    def __eq__(self, other):
        if not isinstance(other, MultiPolyZ):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def eval(self, point: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            t = c
            for z, k in zip(point, e):
                t *= z**k
            total += t
        return total

    def eval_mod(self, point: Sequence[int], p: int) -> int:
        total = 0
        for e, c in self.terms.items():
            t = c
            for z, k in zip(point, e):
                t = t * pow(z, k, p) % p
            total += t
        return total % p

    def max_abs_coefficient(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def __repr__(self):
        if not self.terms:
            return "MultiPolyZ(0)"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"Z{i + 1}^{k}" if k > 1 else f"Z{i + 1}"
                            for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return "MultiPolyZ(" + " + ".join(parts) + ")"


def _pxy_factor(x: int, d: int) -> MultiPolyZ:
    # x^d + sum_{k<d} Z_{d-k} x^k ; Z_j has zero-based index j - 1
    terms = {(0,) * d: x**d}
    for k in range(d):
        e = [0] * d
        e[d - k - 1] = 1
        terms[tuple(e)] = x**k
    return MultiPolyZ(d, terms)


def build_pxy(x: Sequence[int], y: Sequence[int], d: int) -> MultiPolyZ:
    """prod_i (x_i^d + sum_k Z_{d-k} x_i^k) - prod_i (y_i^d + sum_k Z_{d-k} y_i^k).

    Evaluating at the non-leading coefficients (a_1, ..., a_d) of a monic f
    gives prod f(x_i) - prod f(y_i).
    """
    if not x or not y:
        raise EmptyVector("x and y must have at least one entry")
    if len(x) != len(y):
        raise ValueError("x and y must have the same length")
    if d < 1:
        raise DegreeTooSmall(f"degree {d} < 1")
    px = MultiPolyZ.constant(d, 1)
    py = MultiPolyZ.constant(d, 1)
    for xi in x:
        px = px * _pxy_factor(xi, d)
    for yi in y:
        py = py * _pxy_factor(yi, d)
    return px - py


def monic_tail(f: PolySpec) -> tuple[int, ...]:
    """(a_1, ..., a_d) of the monic normalisation X^d + a_1 X^(d-1) + ... + a_d."""
    return f.monic().coefficients[1:]


def all_polys(p: int, max_degree: int) -> Iterable[PolySpec]:
    """Every polynomial of degree <= max_degree over F_p, zero included."""
    for c in product(range(p), repeat=max_degree + 1):
        yield PolySpec.from_coeffs(c, p)
