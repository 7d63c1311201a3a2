"""Exception types raised by the library.

Domain errors all derive from :class:`DomainError`; the CLI maps them to exit
status 1.
"""


class DomainError(Exception):
    """Base class for input that is well-formed but mathematically rejected."""


class NotPrime(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class NotADivisor(DomainError):
    pass


class DegreeTooSmall(DomainError):
    pass


class WrongDegree(DomainError):
    pass


class ZeroLambda(DomainError):
    pass


class EmptyVector(DomainError):
    pass


class ZeroPolynomial(DomainError):
    pass


class WorkCapExceeded(DomainError):
    def __init__(self, cap, needed):
        super().__init__(f"work cap {cap} exceeded (next step needs {needed} insertions)")
        self.cap = cap
        self.needed = needed


class NoContainment(DomainError):
    pass


class NotFound(DomainError):
    """No multiplier v satisfies the reduction constraints."""

    def __init__(self, msg, condition_met):
        super().__init__(msg)
        self.condition_met = condition_met


class Inapplicable(DomainError):
    pass


class GridError(DomainError):
    def __init__(self, field, reason):
        super().__init__(f"invalid sweep grid field {field!r}: {reason}")
        self.field = field
