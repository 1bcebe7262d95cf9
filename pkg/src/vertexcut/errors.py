"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised for invalid parameters or inputs. The CLI maps it to exit code 2."""


class EdgeListParseError(ValidationError):
    def __init__(self, path, lineno: int, line: str, reason: str):
        self.path = str(path)
        self.lineno = lineno
        self.line = line
        super().__init__(f"{self.path}:{lineno}: {reason}: {line.rstrip()!r}")


class EmptyGraphError(ValidationError):
    pass
