"""Exception taxonomy shared across the package."""


class HamlabError(Exception):
    """Base class for every error raised by this package."""


class CapacityError(HamlabError):
    """Input exceeds a documented implementation cap (vertex count, corpus size)."""


class ParameterError(HamlabError, ValueError):
    """Parameters violate a documented precondition or feasibility constraint."""


class DomainError(HamlabError, ValueError):
    """Input object is outside the operation's domain (bad vertex, malformed data)."""


class PreconditionError(HamlabError):
    """A runtime-checked mathematical precondition failed."""


class NumericalError(HamlabError):
    """An eigensolve failed to reach the required residual tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
