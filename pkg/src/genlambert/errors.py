"""Exception types raised by the library."""


class GenLambertError(ValueError):
    """Base class for all argument-related failures."""


class DomainError(GenLambertError):
    """The argument lies outside the domain of the requested branch."""


class BranchError(GenLambertError):
    """The requested branch does not exist for these parameters."""


class SingularityError(GenLambertError):
    """Evaluation at a point where the derivative blows up."""


class UnsupportedConfiguration(GenLambertError):
    """Parameter shape that no solver is implemented for."""


class ConvergenceError(RuntimeError):
    """An iterative procedure failed to converge."""
