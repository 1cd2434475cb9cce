"""Exception types raised across the package."""


class TietzError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TietzError, ValueError):
    """An argument lies outside the domain of a function."""


class ConvergenceError(TietzError, ArithmeticError):
    """A series failed to converge within its term budget."""

    def __init__(self, message, n_terms, last_term):
        super().__init__(f"{message} (terms={n_terms}, |last term|={last_term:.3e})")
        self.n_terms = n_terms
        self.last_term = last_term


class DegenerateParameterError(TietzError, ArithmeticError):
    """Hypergeometric parameters hit a Gamma-function pole in a connection formula."""


class PoleError(TietzError, ValueError):
    """Evaluation at (or numerically at) a pole of a potential or deformed function."""

    def __init__(self, message, location):
        super().__init__(f"{message} (pole at {location!r})")
        self.location = location


class RegimeError(TietzError, ValueError):
    """Operation requested for a deformation parameter outside its regime."""


class EnergyOutOfRangeError(TietzError, ValueError):
    """Energy makes a square-root radicand negative."""


class NoSuchStateError(TietzError, LookupError):
    """Requested quantum numbers do not correspond to a bound state."""


class NumericError(TietzError, ArithmeticError):
    """Numerical linear algebra failure, e.g. inverse iteration not converging."""

    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"{message} (index {index})")
        self.index = index


class ConfigError(TietzError, ValueError):
    """Invalid or incomplete run configuration; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
