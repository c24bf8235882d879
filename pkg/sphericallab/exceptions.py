"""
We try to be very hygienic regarding the exceptions we throw:

- Every exception that might be externally visible to users shall be a subclass
  of SphericalLabException.
- Input validation in the arithmetic layer raises subclasses of
  ArithmeticInputError, lattice problems subclasses of LatticeError, and
  region lookups subclasses of RegionError, so callers can catch per layer.
- Budget and check failures are distinct classes because the command line
  maps them to distinct exit codes.
"""


class SphericalLabException(Exception):

    """
    Base class for all exceptions thrown by sphericallab.
    """

    def __init__(self, message=None):
        super().__init__(message)


class ArithmeticInputError(SphericalLabException):
    pass


class NotCoprime(ArithmeticInputError):

    def __init__(self, a, q):
        super().__init__(f"{a} is not a unit modulo {q}")
        self.a = a
        self.q = q


class BadRange(ArithmeticInputError):
    pass


class PropositionViolation(SphericalLabException):
    """
        The set of numerators covering a point is not an interval in the
        modular inverse. Carries the offending configuration.
    """

    def __init__(self, message, tau=None, q=None, level=None):
        super().__init__(message)
        self.tau = tau
        self.q = q
        self.level = level


class LatticeError(SphericalLabException):
    pass


class EmptySphere(LatticeError):

    def __init__(self, d, n):
        super().__init__(f"no lattice points on |y|^2 = {n} in dimension {d}")
        self.d = d
        self.n = n


class EmptyInput(SphericalLabException):
    pass


class QuadratureNotConverged(SphericalLabException):

    def __init__(self, message, value=None, stderr=None):
        super().__init__(message)
        self.value = value
        self.stderr = stderr


class GridTooLarge(SphericalLabException):
    pass


class HypothesisViolated(SphericalLabException):
    pass


class BudgetExceeded(SphericalLabException):
    """
        The requested computation needs more work units than the configured
        budget allows.
    """

    def __init__(self, needed, budget, what=""):
        super().__init__(
            f"{what or 'computation'} needs {needed} work units, budget is {budget}"
        )
        self.needed = needed
        self.budget = budget


class RegionError(SphericalLabException):
    pass


class UnknownRegion(RegionError):
    pass


class RecursionBudget(SphericalLabException):
    pass


class CheckFailed(SphericalLabException):
    """
        An experiment ran to completion but one of its invariant checks failed.
    """
    pass


class FormatError(SphericalLabException):
    pass


class OptionsError(SphericalLabException):
    pass


class AddonManagerError(SphericalLabException):
    pass
