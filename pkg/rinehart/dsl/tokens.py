"""Tokenizer of the ``rinehart`` DSL."""

import logging
import re
from collections.abc import Iterator
from typing import Literal

from rinehart.errors import DslSyntaxError
from rinehart.model.base import MainModel

logger = logging.getLogger(__name__)

TokenKind = Literal["name", "number", "punct", "arrow", "eof"]

_TOKEN_RE = re.compile(
    r"""
    (?P<space>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<arrow>->)
  | (?P<punct>[{}\[\](),;=+\-*/^])
    """,
    re.VERBOSE,
)


class Token(MainModel):
    kind: TokenKind
    text: str
    line: int
    column: int

    def describe(self) -> str:
        """How the token is named in diagnostics."""
        if self.kind == "eof":
            return "end of input"
        return f"'{self.text}'"

    def follows(self, other: "Token") -> bool:
        """Whether ``self`` starts right where ``other`` ends on the same line."""
        return self.line == other.line and self.column == other.column + len(other.text)


def tokenize(text: str) -> Iterator[Token]:
    """Yield tokens with 1-based positions, ending with an ``eof`` token.

    Raises:
        DslSyntaxError: On a character that starts no token.
    """
    line, line_start, position = 1, 0, 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            column = position - line_start + 1
            raise DslSyntaxError(line, column, repr(text[position]), set())
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind not in ("space", "comment"):
            yield Token(
                kind=kind,
                text=match.group(),
                line=line,
                column=position - line_start + 1,
            )
        position = match.end()
    yield Token(kind="eof", text="", line=line, column=position - line_start + 1)
