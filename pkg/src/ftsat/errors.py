"""Exception types shared across the package."""


class FtsatError(Exception):
    """Base class for all package errors."""


class ParameterError(FtsatError, ValueError):
    """An argument violates an operation's precondition."""


class CapacityError(FtsatError):
    """A request exceeds a brute-force or simulator size guard."""


class DimacsError(FtsatError, ValueError):
    """Malformed DIMACS CNF input."""


class NumericError(FtsatError, ArithmeticError):
    """A numerical procedure failed (bracketing, convergence)."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class InfeasibleError(FtsatError):
    """No parameter value meets the requested budget."""


class SearchFailure(FtsatError):
    """Crossover search found no crossing in the scanned range."""

    def __init__(self, message, profile=None):
        super().__init__(message)
        self.profile = profile or []


class AuditError(FtsatError):
    """Counted circuit resources disagree with a cost contract."""

    def __init__(self, field, counted, expected):
        super().__init__(f"audit mismatch in {field}: counted {counted}, contract {expected}")
        self.field = field
        self.counted = counted
        self.expected = expected


class ConsistencyError(FtsatError):
    """Simulator internal invariant violated (norm, probabilities)."""
