"""Exception hierarchy shared by every pipeline stage."""

from __future__ import annotations


class CarsimError(Exception):
    """Base class; ``code`` is a short machine-readable tag."""

    code = "error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self) -> str:
        return str(self.args[0]) if self.args else ""


class FDError(CarsimError):
    code = "fd_error"


class FDSyntaxError(FDError):
    code = "fd_syntax"

    def __init__(self, message: str, line: int, column: int, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class FDValueError(FDError):
    """Unknown enumerated value or malformed entry."""

    code = "fd_value"

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        if line:
            message = f"{message} at line {line}, column {column}"
        super().__init__(message)


class FDValidationError(FDError):
    """Structural invariant violations found while loading a document."""

    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0]
        self.code = f"fd_{first.code}"
        super().__init__("; ".join(v.message for v in self.violations))


class LexiconError(CarsimError):
    code = "lexicon"


class PlanningError(CarsimError):
    code = "planning"


class PlanFormatError(CarsimError):
    code = "plan_format"


class RenderError(CarsimError):
    code = "render"


class ConfigError(CarsimError):
    code = "config"
