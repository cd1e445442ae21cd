"""Exception hierarchy shared by every app."""


class TukeyPrivacyError(Exception):
    """Base exception for the project."""

    pass


class ValidationError(TukeyPrivacyError):
    """A parameter or input failed validation."""

    def __init__(self, message: str, field: str | None = None):
        self.field = field
        super().__init__(message)


class ParseError(ValidationError):
    """An input file could not be parsed."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        super().__init__(message, field="input")


class OffGridPoint(ValidationError):
    """Input coordinates outside [0,1]^d or off the 2^-u grid."""

    def __init__(self, message: str, rows: list[int] | None = None):
        self.rows = rows or []
        super().__init__(message, field="points")
