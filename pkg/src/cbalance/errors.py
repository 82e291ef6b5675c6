"""Exception hierarchy. Every error raised by the package derives from CBError."""


class CBError(Exception):
    pass


class DomainError(CBError, ValueError):
    """Input outside the domain of an operation (non-finite rating, bad permutation, ...)."""


class DegenerateFitError(DomainError):
    """Regression with zero variance in the response."""


class FormatError(CBError, ValueError):
    """Malformed snapshot text.

    ``column`` names the missing column, ``line`` the 1-based line of a bad row.
    """

    def __init__(self, message, *, column=None, line=None):
        super().__init__(message)
        self.column = column
        self.line = line


class SchemaError(CBError, ValueError):
    """A season file violates its schema. ``group`` is the offending group label, if any."""

    def __init__(self, message, *, group=None):
        super().__init__(message)
        self.group = group


class UnresolvedClubError(SchemaError):
    def __init__(self, message, *, name, suggestions=(), group=None):
        super().__init__(message, group=group)
        self.name = name
        self.suggestions = tuple(suggestions)


class FetchError(CBError):
    """Non-success HTTP status from the ratings endpoint. Not retried."""

    def __init__(self, message, *, status=None):
        super().__init__(message)
        self.status = status


class RetryableFetchError(FetchError):
    """Transport failure (connection refused, timeout, ...)."""
