"""Shared exception types."""


class DeltasignError(Exception):
    """Base class for library errors."""


class ParseError(DeltasignError):
    """Malformed text input (polynomial, circuit, word, or instance dump)."""


class PolynomialTooLargeError(DeltasignError):
    """Brute-force enumeration refused: variable count above the cutoff."""


class DegreeError(DeltasignError):
    """Operation received a polynomial outside its supported degree range."""


class SynthesisBudgetError(DeltasignError):
    """Search budget exhausted before the requested accuracy was reached.

    Carries the best word found and its measured distance so callers can
    inspect partial progress.
    """

    def __init__(self, message, best_word=None, best_distance=None):
        super().__init__(message)
        self.best_word = best_word
        self.best_distance = best_distance


class EnumerationTooLargeError(DeltasignError):
    """Exact constrained enumeration would exceed the configured point cap."""


class CertificateError(DeltasignError):
    """A reduction certificate failed re-verification."""
