"""Exception hierarchy shared by every module."""


class LatticeCIError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LatticeCIError, ValueError):
    """An argument lies outside the domain of the operation."""


class FormatError(DomainError):
    """Text or file input could not be parsed."""


class PreconditionError(LatticeCIError, ValueError):
    """A documented precondition (e.g. running intersection) does not hold."""


class PositivityError(DomainError):
    """A margin that must be strictly positive contains a zero."""


class ResourceError(LatticeCIError, RuntimeError):
    """A configured safety cap on output size was exceeded."""


class NumericalError(LatticeCIError, ArithmeticError):
    """Rank deficiency or singular block in a linear-algebra oracle."""


class ContractViolation(LatticeCIError, RuntimeError):
    """Two routes that must agree produced different answers."""
