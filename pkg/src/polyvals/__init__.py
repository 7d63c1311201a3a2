"""Exact computations around polynomial values in multiplicative subgroups of F_p."""

from .errors import (DomainError, NoContainment, NotADivisor, NotFound, NotPrime,
                     OutOfRange, WorkCapExceeded)
from .field_core import FieldContext, SubgroupSpec, contains, make_context, subgroup_of_order
from .polynomials import (POLE, BivariateModPoly, MultiPolyZ, PolySpec, RationalSpec,
                          build_pxy, build_q_lambda, evaluate, is_square_free)
from .value_sets import (IntervalSpec, ProductSetResult, count_intersection,
                         product_set_cardinality, t_f, value_set)

__version__ = "0.1.0"
