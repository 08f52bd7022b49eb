"""Exception hierarchy shared by all modules."""


class CircleNormError(Exception):
    """Base class for every error raised by circlenorm."""


class PolynomialFormatError(CircleNormError, ValueError):
    """Malformed or non-finite polynomial JSON."""


class DegreeZeroError(CircleNormError, ValueError):
    pass


class NoConvergenceError(CircleNormError, ArithmeticError):
    pass


class ZeroPolynomialError(CircleNormError, ValueError):
    pass


class InvalidGridError(CircleNormError, ValueError):
    pass


class GridAnnihilationError(CircleNormError, ArithmeticError):
    """Every node value vanishes, so the norm ratio is infinite."""


class OutOfRangeError(CircleNormError, ValueError):
    """(n, N) or a configuration value violates an operation's precondition."""


class NotMultipleError(CircleNormError, ValueError):
    pass


class ZeroConstantTermError(CircleNormError, ValueError):
    pass


class ConstantModulusError(CircleNormError, ValueError):
    pass


class PoleAtZeroError(CircleNormError, ZeroDivisionError):
    pass


class OnSlitError(CircleNormError, ValueError):
    """Point lies on the slit and no side of approach was given."""


class OutsideDomainError(CircleNormError, ValueError):
    pass


class NotInEError(CircleNormError, ValueError):
    """Boundary point where |P| is (numerically) equal to m(P) or M(P)."""


class DegenerateEndpointError(CircleNormError, ValueError):
    pass


class AllRestartsFailedError(CircleNormError, RuntimeError):
    pass


class TheoremViolationError(CircleNormError, AssertionError):
    """A candidate polynomial beat the proven bound; either a bug or a counterexample."""
