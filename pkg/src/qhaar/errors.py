"""Exception hierarchy shared across the package."""


class QhaarError(Exception):
    """Base class for all package errors."""


class InvalidDimensionError(QhaarError):
    """Raised when a dimension N is outside the admissible range."""


class InvalidIndexError(QhaarError):
    """Raised when a generator index exceeds the dimension N."""


class AdmissibilityError(QhaarError):
    """Raised for an inadmissible (n, k, l) three-vertex triple."""


class ModelMismatchError(QhaarError):
    """Raised when polynomials over different models are combined."""


class ResourceLimitError(QhaarError):
    """Raised when a computation would exceed the configured k_max.

    Carries the table length that would be required.
    """

    def __init__(self, message: str, required_k: int):
        super().__init__(message)
        self.required_k = required_k


class SingularMatrixError(QhaarError):
    """Raised when an exact elimination hits a zero pivot."""


class PolyParseError(QhaarError):
    """Raised on malformed polynomial / word text."""
