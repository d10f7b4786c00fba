"""Exception hierarchy shared by every module of the engine."""


class Cy3Error(Exception):
    """Base class for all engine errors."""


class DimensionError(Cy3Error, ValueError):
    """Matrix shape does not fit the requested operation."""


class ArgumentError(Cy3Error, ValueError):
    """An argument is outside the operation's domain (non-prime modulus, k <= 0, ...)."""


class ParseError(Cy3Error, ValueError):
    """Polynomial or divisor text could not be parsed."""


class BasisMismatchError(Cy3Error, ValueError):
    """Operands live on different bases."""


class IntegralityError(Cy3Error, ArithmeticError):
    """An evaluation that must be integral produced a proper fraction."""


class ValidationError(Cy3Error, ValueError):
    """Data violates a structural invariant (adjunction consistency, combo cardinality, ...)."""


class PreconditionError(Cy3Error, ValueError):
    """Input does not satisfy an operation's precondition."""


class ContractViolation(Cy3Error):
    """A postcondition that callers rely on cannot be met."""


class SchemaError(Cy3Error, ValueError):
    """A model file does not match the expected schema."""
