"""Base exception types shared across the package."""
from typing import Optional


class AddEquivError(Exception):
    """Base class for every error raised by this package."""
    pass


class FormatError(AddEquivError):
    """Raised when an input file does not follow its grammar."""

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None
    ):
        self.message = message
        self.path = path
        self.line = line
        self.column = column
        super().__init__(self.describe())

    def describe(self) -> str:
        """Render the error as `path:line:column: message`."""
        location = []
        if self.path:
            location.append(str(self.path))
        if self.line is not None:
            location.append(str(self.line))
            if self.column is not None:
                location.append(str(self.column))
        if location:
            return f"{':'.join(location)}: {self.message}"
        return self.message
