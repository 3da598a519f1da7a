class RinehartError(ValueError):
    """Base class for all errors raised by ``rinehart``."""


class FiberVariableError(RinehartError):
    """A base-only argument contains fiber variables."""


class ContextMismatchError(RinehartError):
    """Elements of two different presentations were combined."""


class PresentationError(RinehartError):
    """A presentation or an element of ``L`` is malformed."""


class ExtensionError(RinehartError):
    """Extension data or a declared split violates its preconditions."""


class SpanError(RinehartError):
    """A polynomial does not lie in the span it was expected to lie in."""


class DslError(RinehartError):
    """Diagnostic raised while reading a DSL document.

    Args:
        line: 1-based line of the offending token.
        column: 1-based column of the offending token.
        message: Human readable description.
    """

    kind = "error"

    def __init__(self, line: int, column: int, message: str) -> None:
        self.line = line
        self.column = column
        self.message = message
        super().__init__(str(self))

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.kind}: {self.message}"


class DslSyntaxError(DslError):
    """Unexpected token; carries the set of tokens that would be accepted."""

    kind = "syntax error"

    def __init__(
        self, line: int, column: int, found: str, expected: set[str]
    ) -> None:
        self.found = found
        self.expected = frozenset(expected)
        message = f"unexpected {found}"
        if self.expected:
            message += f", expected {', '.join(sorted(self.expected))}"
        super().__init__(line, column, message)


class DslSemanticError(DslError):
    """Well-formed input referring to something invalid, e.g. an unknown symbol."""

    kind = "semantic error"

    def __init__(
        self, line: int, column: int, message: str, symbol: str | None = None
    ) -> None:
        self.symbol = symbol
        super().__init__(line, column, message)
