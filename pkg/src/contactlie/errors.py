class ContactLieError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(ContactLieError, ValueError):
    pass


class PreconditionError(ContactLieError, ValueError):
    """An operation was called outside its stated hypotheses."""


class NotApplicableError(PreconditionError):
    """The input is valid but the requested criterion does not apply to it."""


class InternalError(ContactLieError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class TheoremViolation(ContactLieError):
    """The input contradicts a classification result (should never happen)."""


class SchemaError(ContactLieError, ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message
