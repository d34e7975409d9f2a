"""Exception types shared across the package."""


class DistestError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DistestError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ConfigurationError(DistestError, ValueError):
    """A model / protocol / CLI configuration violates a precondition."""


class SupportMismatchError(DistestError, ValueError):
    """Two distributions that must share a support do not."""


class AbsoluteContinuityError(DistestError, ValueError):
    """q(x) = 0 at a point where p(x) > 0; the divergence is undefined."""


class ProtocolViolationError(DistestError, RuntimeError):
    """A machine wrote to the blackboard when it was not scheduled."""


class EnumerationBudgetError(DistestError, RuntimeError):
    """Exact enumeration would exceed the configured budget."""


class RejectionFailureError(DistestError, RuntimeError):
    """Truncated sampling target interval carries too little mass."""


class ConditionSelectError(DistestError, RuntimeError):
    """Neither decoding condition holds; this state should be unreachable."""


class NotPositiveSemidefiniteError(DistestError, ValueError):
    """A covariance that must be PSD has a significantly negative eigenvalue."""
