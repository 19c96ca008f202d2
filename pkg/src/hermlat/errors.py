"""Exception hierarchy shared by every hermlat module.

The CLI maps these onto exit codes: domain problems exit 3, enumeration
budget overruns exit 4.
"""


class HermlatError(Exception):
    """Base class for all library errors."""


class DomainError(HermlatError, ValueError):
    """Input outside the validity domain of an operation or constant."""


class InvalidFieldError(DomainError):
    """Polynomial or integral basis does not describe a number field/order."""


class PrecisionUnreachable(DomainError):
    pass


class ConjugationUnavailable(DomainError):
    """The field is neither totally real nor CM, so x -> x-bar is not an automorphism."""


class FloatModeOnly(DomainError):
    """Exact Gram data unavailable; only interval data can be produced."""


class ZeroComponent(DomainError):
    pass


class NonUnimodular(DomainError):
    pass


class NotPositiveDefinite(DomainError):
    pass


class BoundaryError(DomainError):
    """Consecutive boundary maps do not compose to zero."""


class BudgetExceeded(HermlatError, RuntimeError):
    """Enumeration hit its node or cardinality cap."""


class Undecided(HermlatError, ArithmeticError):
    """Two BigBounds could not be separated at the maximum precision."""
