"""Exception hierarchy shared by the bohr_lab modules."""


class BohrLabError(Exception):
    """Base class for every error raised by bohr_lab."""


class DomainError(BohrLabError, ValueError):
    """An argument lies outside the domain of the operation."""


class BudgetExceededError(BohrLabError):
    """A truncated summation needs more terms than its budget allows."""


class ProfileError(BohrLabError, ValueError):
    """A coefficient profile violates the class coefficient bounds."""


class UnsupportedCombinationError(BohrLabError):
    """A functional needs a channel or variant the inputs do not provide."""


class SolverError(BohrLabError):
    """Base class for root-finding failures."""


class NoSignChangeError(SolverError):
    """The residual stays negative on the whole scan range."""


class NonNegativeStartError(SolverError):
    """The residual is already non-negative at the first scan point."""


class UnknownTableError(BohrLabError, KeyError):
    """No table is registered under the requested identifier."""
