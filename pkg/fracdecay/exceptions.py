"""
Exceptions Module

This module contains all custom exception classes for the fracdecay package.
Every error raised on purpose by the package derives from FracDecayError, so
callers (notably the command-line front door) can map failures to exit codes
with a single except clause per category.
"""


class FracDecayError(Exception):
    """Base exception for all fracdecay errors."""
    pass


class GridError(FracDecayError):
    """Raised when a lattice cannot be built or is used inconsistently."""
    pass


class GridMismatchError(GridError):
    """Raised when a field does not live on the expected grid."""
    pass


class NonFiniteValueError(FracDecayError):
    """Raised when a field would contain NaN or infinite values."""
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class KernelError(FracDecayError):
    """Raised when kernel parameters are invalid."""
    pass


class UnsupportedOperationError(FracDecayError):
    """Raised when an operation does not apply to the given kernel or operator."""
    def __init__(self, message, operation=None):
        super().__init__(message)
        self.operation = operation


class MemoryBudgetError(FracDecayError):
    """Raised when a dense operator would exceed the configured memory budget."""
    def __init__(self, message, required_bytes=None, budget_bytes=None):
        super().__init__(message)
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes


class DegenerateKernelError(FracDecayError):
    """Raised when the operator has no positive row sum."""
    pass


class InstabilityError(FracDecayError):
    """Raised when time stepping produces non-finite values."""
    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class InsufficientDataError(FracDecayError):
    """Raised when a series or trajectory is too short for the requested analysis."""
    pass


class NonPositiveNormError(FracDecayError):
    """Raised when a log-log fit meets a nonpositive norm."""
    pass


class InequalityViolationError(FracDecayError):
    """Raised when a discrete inequality certificate cannot hold (zero energy, nonzero norm)."""
    pass


class ConfigurationError(FracDecayError):
    """Raised when an experiment configuration is malformed or violates a constraint."""
    def __init__(self, message, key=None, constraint=None):
        super().__init__(message)
        self.key = key
        self.constraint = constraint


class SummaryValidationError(FracDecayError):
    """Raised when a run summary fails validation against the summary schema."""
    def __init__(self, message, validation_errors=None):
        super().__init__(message)
        self.validation_errors = validation_errors


class DomainError(FracDecayError, ValueError):
    """Raised when a numeric argument lies outside the domain of an operation."""
    pass
