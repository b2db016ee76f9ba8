# src/errors.py — one exception tree for the whole toolkit; the CLI maps codes to exit statuses

from typing import List, Optional


class PkitError(Exception):
    code = "E-PKIT"

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        if code:
            self.code = code

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class FrontError(PkitError):
    code = "E-FRONT"


class FrontMoveError(FrontError):
    code = "E-MOVE"


class WhiteheadError(PkitError):
    code = "E-WHITEHEAD"


class HandlebodyError(PkitError):
    code = "E-HANDLEBODY"


class DecomposeError(PkitError):
    code = "E-DECOMPOSE"


class SearchExhausted(PkitError):
    code = "E-BUDGET"


class InputError(PkitError):
    code = "E-INPUT"


class DslError(PkitError):
    """Raised by the parser with every diagnostic collected so far."""

    code = "E-DSL"

    def __init__(self, diagnostics: List["object"]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(str(first) if first is not None else "invalid document", getattr(first, "code", None))


EXIT_CODES = {
    "E-DSL": 2,
    "E-REF": 3,
    "E-FRONT": 4,
    "E-MOVE": 4,
    "E-WHITEHEAD": 5,
    "E-HANDLEBODY": 6,
    "E-DECOMPOSE": 7,
    "E-BUDGET": 8,
    "E-INPUT": 1,
    "E-PKIT": 1,
}


def exit_code(err: PkitError) -> int:
    return EXIT_CODES.get(err.code, 1)
