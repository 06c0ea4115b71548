"""Exception hierarchy shared by the library and the CLI."""


class SphericalKitError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class ParseError(SphericalKitError, ValueError):
    """Malformed input text, optionally with a position."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class InvalidSystemError(SphericalKitError):
    """The triple fails one or more axioms; ``report`` holds the details."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotDistinguishedError(SphericalKitError):
    pass


class StarPropertyError(SphericalKitError):
    pass


class CapExceededError(SphericalKitError):
    pass


class UnknownColourError(SphericalKitError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown colour"
