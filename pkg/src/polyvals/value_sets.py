"""Value sets on intervals, their intersections with subgroups, product sets
and the smallest subgroup order containing H consecutive values."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .errors import NoContainment, WorkCapExceeded
from .field_core import MEMBER_SET_CAP, FieldContext, SubgroupSpec, contains, subgroup_of_order
from .polynomials import POLE, Function, PolySpec, evaluate, format_poly

DEFAULT_WORK_CAP = 10**7
ELEMENT_CAP = 10**5
TABLE_CAP = 1 << 16


@dataclass(frozen=True)
class IntervalSpec:
    """The integers u+1, ..., u+H, read mod p."""

    u: int
    H: int

    def __post_init__(self):
        if self.H < 1:
            raise ValueError(f"interval length must be positive, got {self.H}")
        if self.u < 0:
            raise ValueError(f"offset must be a residue, got {self.u}")

    def points(self, p: int) -> range:
        if self.H > p:
            raise ValueError(f"H = {self.H} exceeds p = {p}")
        return range(self.u + 1, self.u + self.H + 1)

    def wraps(self, p: int) -> bool:
        return self.u + self.H > p - 1


@lru_cache(maxsize=256)
def value_table(r: Function, p: int) -> tuple:
    """r(x) for x = 0..2p-1 (two periods so any interval is one slice)."""
    vals = tuple(evaluate(r, x) for x in range(p))
    return vals + vals


def _values(r: Function, I: IntervalSpec, p: int):
    pts = I.points(p)
    if p <= TABLE_CAP:
        u = I.u % p
        return value_table(r, p)[u + 1:u + 1 + I.H]
    return [evaluate(r, x % p) for x in pts]


def value_set(r: Function, I: IntervalSpec) -> set[int]:
    """{r(x) : x in I, x not a pole}."""
    return set(_values(r, I, r.p)) - {POLE}


def count_intersection(r: Function, I: IntervalSpec, G: SubgroupSpec) -> int:
    """#(r(I) & G)."""
    vals = _values(r, I, r.p)
    if G.order <= MEMBER_SET_CAP:
        return len(G.member_set.intersection(vals))
    return sum(1 for v in set(vals) if v is not POLE and contains(G, v))


def points_in_subgroup(r: Function, I: IntervalSpec, G: SubgroupSpec) -> list[int]:
    """The x in I (as integers u+1..u+H) with r(x) in G."""
    return [x for x, v in zip(I.points(r.p), _values(r, I, r.p))
            if v is not POLE and contains(G, v)]


@dataclass(frozen=True)
class ProductSetResult:
    nu: int
    cardinality: int
    elements: Optional[frozenset]


def product_set_cardinality(f: Function, I: IntervalSpec, nu: int,
                            work_cap: int = DEFAULT_WORK_CAP,
                            element_cap: int = ELEMENT_CAP) -> ProductSetResult:
    """Exact size of the nu-fold product set of f(I) inside F_p."""
    if nu < 1:
        raise ValueError("nu must be >= 1")
    p = f.p
    base = value_set(f, I)
    cur = set(base)
    work = len(base)
    for _ in range(nu - 1):
        need = len(cur) * len(base)
        if work + need > work_cap:
            raise WorkCapExceeded(work_cap, work + need)
        work += need
        cur = {a * b % p for a in cur for b in base}
    return ProductSetResult(nu, len(cur), frozenset(cur) if len(cur) <= element_cap else None)


@dataclass(frozen=True)
class TfResult:
    T: int
    u: int
    subgroup: SubgroupSpec


def _order_of(ctx: FieldContext):
    if ctx.p <= TABLE_CAP:
        return ctx.order_table.__getitem__
    return lru_cache(maxsize=None)(ctx.element_order)


def t_f_profile(r: Function, H_max: int, ctx: FieldContext) -> list[Optional[tuple[int, int]]]:
    """Least (T, u) in lexicographic order with r({u+1..u+H}) inside the order-T
    subgroup, for every H = 1..H_max; None where no u qualifies.

    The smallest subgroup containing a set of nonzero residues has order equal
    to the lcm of their orders, so each offset is swept once with a running
    lcm. A zero value rules the offset out for every longer window; poles are
    skipped, and a window consisting only of poles does not qualify.
    """
    p = ctx.p
    if not 1 <= H_max <= p:
        raise ValueError(f"need 1 <= H <= p, got H = {H_max}")
    order_of = _order_of(ctx)
    if p <= TABLE_CAP:
        vals = value_table(r, p)
    else:
        vals = [evaluate(r, x % p) for x in range(p + H_max + 1)]
    # order codes: 0 for a zero value, -1 for a pole
    ords = [-1 if v is POLE else order_of(v) if v else 0 for v in vals[:p + H_max + 1]]
    has_poles = -1 in ords
    best_T = [0] * (H_max + 1)
    best_u = [0] * (H_max + 1)
    lcm = math.lcm
    hs = range(1, H_max + 1)
    for u in range(p):
        run = 1
        seen = not has_poles
        for h in hs:
            o = ords[u + h]
            if o == 0:
                break
            if o > 0:
                if run % o:
                    run = lcm(run, o)
                seen = True
            elif not seen:
                continue
            b = best_T[h]
            if b == 0 or run < b:
                best_T[h] = run
                best_u[h] = u
    return [(T, u) if T else None for T, u in zip(best_T[1:], best_u[1:])]


def t_f(r: Function, H: int, ctx: FieldContext) -> TfResult:
    """Smallest subgroup order T (then smallest u) with r({u+1..u+H}) in G_T."""
    res = t_f_profile(r, H, ctx)[-1]
    if res is None:
        raise NoContainment(f"every interval of length {H} meets a zero of the function")
    T, u = res
    return TfResult(T, u, subgroup_of_order(ctx, T))


def minimal_order_at(r: Function, I: IntervalSpec, ctx: FieldContext) -> Optional[int]:
    """Order of the smallest subgroup containing r(I); None if 0 is a value
    or there are no values at all."""
    vals = value_set(r, I)
    if not vals or 0 in vals:
        return None
    return math.lcm(*(ctx.element_order(v) for v in vals))


def result_record(f: PolySpec, I: IntervalSpec, T: int, count: int) -> str:
    """JSON-lines record {p, f, u, H, T, count}."""
    return json.dumps({"p": f.p, "f": format_poly(f), "u": I.u, "H": I.H,
                       "T": T, "count": count}, sort_keys=False)
