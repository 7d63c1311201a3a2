"""Centered residues and a multiplier v making several residues b_i v small.

Existence of v is guaranteed whenever V_1 ... V_m > p^(m-1) and
1 <= V_i < p (a consequence of Minkowski's convex body theorem). The solver
is an exhaustive scan over v, which at desk scale is also its own oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import NotFound

Real = Union[int, Fraction]


def centered_residue(a: int, p: int) -> int:
    """min_k |a - k p|."""
    r = a % p
    return min(r, p - r)


def centered_lift_value(a: int, p: int) -> int:
    """Representative of a mod p in (-p/2, p/2]."""
    r = a % p
    return r - p if 2 * r > p else r


def minkowski_condition(V: Sequence[Real], p: int) -> bool:
    """Exact test of prod V_i > p^(m-1)."""
    prod = Fraction(1)
    for v in V:
        prod *= Fraction(v)
    return prod > p ** (len(V) - 1)


@dataclass(frozen=True)
class ReductionProblem:
    p: int
    b: tuple[int, ...]
    V: tuple[int, ...]

    def __post_init__(self):
        if not self.b:
            raise ValueError("need at least one linear form")
        if len(self.b) != len(self.V):
            raise ValueError("b and V have different lengths")
        if any(not 1 <= v < self.p for v in self.V):
            raise ValueError(f"bounds must satisfy 1 <= V_i < p: {self.V}")
        if any(not 0 <= x < self.p for x in self.b):
            raise ValueError(f"b_i must be residues mod {self.p}: {self.b}")

    @property
    def m(self) -> int:
        return len(self.b)

    @classmethod
    def from_reals(cls, p: int, b: Sequence[int], V: Sequence[Real]) -> "tuple[ReductionProblem, bool]":
        """Floor real bounds (lossless, the residues are integers) and return
        the problem with the condition evaluated on the original values."""
        met = minkowski_condition(V, p)
        Vi = tuple(math.floor(Fraction(v)) for v in V)
        return cls(p, tuple(x % p for x in b), Vi), met


@dataclass(frozen=True)
class ReductionSolution:
    v: int
    residues: tuple[int, ...]
    condition_met: bool


def solve_reduction(prob: ReductionProblem, condition_met: bool | None = None) -> ReductionSolution:
    """Least v in 1..p-1 with <b_i v>_p <= V_i for every i.

    ``condition_met`` overrides the integer Minkowski test, for callers whose
    bounds were floored from real values.
    """
    p = prob.p
    met = minkowski_condition(prob.V, p) if condition_met is None else condition_met
    pairs = list(zip(prob.b, prob.V))
    for v in range(1, p):
        for b, V in pairs:
            r = b * v % p
            if r > V and p - r > V:
                break
        else:
            return ReductionSolution(v, tuple(centered_residue(b * v, p) for b in prob.b), met)
    raise NotFound(f"no v in 1..{p - 1} meets all {prob.m} bounds", met)


def check_solution(prob: ReductionProblem, v: int) -> bool:
    return math.gcd(v, prob.p) == 1 and all(
        centered_residue(b * v, prob.p) <= V for b, V in zip(prob.b, prob.V))
