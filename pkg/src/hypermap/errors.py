"""Exception types shared across the package."""


class GuardError(ValueError):
    """Raised when a parameter exceeds the built-in desk-scale guard bounds.

    Guards exist so that a typo does not silently launch an hours-long
    enumeration; callers that really want the big computation pass
    ``allow_large=True`` where supported.
    """

    def __init__(self, message: str, **params):
        super().__init__(message)
        self.params = dict(params)


class InconsistencyError(RuntimeError):
    """Raised when an internal exactness assertion fails (e.g. a division
    that must be exact leaves a remainder).  Signals a modeling bug, never
    bad user input."""
