"""Exception hierarchy shared by every module of the package."""


class CYBEError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(CYBEError, TypeError):
    """Operands live in different fields."""


class UnsupportedFieldError(CYBEError):
    """The requested field or extension is outside what the library models."""


class UnsupportedEnumerationError(CYBEError):
    """Enumeration was requested over an infinite field."""


class ParseError(CYBEError, ValueError):
    """Malformed textual scalar, field header or document."""


class LieAlgebraError(CYBEError):
    """A structure tableau fails a Lie algebra axiom."""

    def __init__(self, message, indices=None):
        super().__init__(message)
        self.indices = indices


class AntisymmetryError(LieAlgebraError):
    pass


class JacobiError(LieAlgebraError):
    pass


class SingularParametersError(CYBEError):
    """alpha*delta - beta*gamma vanishes."""


class NotInFamilyError(CYBEError):
    """The algebra is not three dimensional with two dimensional derived algebra."""


class InconsistencyError(CYBEError):
    """An internal structural check failed; usually signals corrupted input."""


class WrongCharacteristicError(CYBEError):
    def __init__(self, expected, actual):
        super().__init__(f"wrong characteristic: expected {expected}, got {actual}")
        self.expected = expected
        self.actual = actual


class WrongCaseError(CYBEError):
    """A case-specific predicate was called outside its case."""


class ShapeError(CYBEError, ValueError):
    """A tensor does not have the shape a predicate requires."""


class BudgetExceededError(CYBEError):
    def __init__(self, count, budget):
        super().__init__(
            f"enumeration of {count} tensors exceeds the budget of {budget}; "
            "raise it with budget= or the CYBE_BUDGET environment variable"
        )
        self.count = count
        self.budget = budget
