"""
Custom exceptions for the seminorm laboratory.
"""


class SeminormLabError(Exception):
    """Base exception for all seminorm laboratory errors."""
    pass


class SequenceError(SeminormLabError):
    """Raised when a finitely supported sequence cannot be constructed."""
    pass


class InvalidSpecError(SeminormLabError):
    """Raised when a functional, map, rule or claim description is malformed."""
    pass


class DependentBasisError(InvalidSpecError):
    """Raised when a subspace basis is empty or linearly dependent."""
    pass


class SpecParseError(SeminormLabError):
    """Raised when a textual spec does not parse under the grammar."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")


class UnsupportedNormError(SeminormLabError):
    """Raised when a quotient is requested over a non-polyhedral ambient norm."""
    pass


class LpDimensionError(SeminormLabError):
    """Raised when a linear program has inconsistent dimensions."""
    pass


class LpCertificateError(SeminormLabError):
    """Raised when a certificate is requested for a non-optimal outcome."""
    pass


class WitnessError(SeminormLabError):
    """Raised when a witness term or closed-form modulus is not defined."""
    pass


class NotANormError(SeminormLabError):
    """Raised when a norm is required but the functional spec is not positive-definite."""
    pass


class ConfigurationError(SeminormLabError):
    """Raised when there's a configuration error."""
    pass


class OutputFormatError(SeminormLabError):
    """Raised when there's an error with output formatting."""
    pass


class FileOperationError(SeminormLabError):
    """Raised when there's an error with file operations."""
    pass
