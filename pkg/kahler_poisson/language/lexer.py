"""Tokenizer."""

import re
from dataclasses import dataclass
from enum import StrEnum

from . import ParseException, Span

_TOKEN = re.compile(
    r"""
    (?P<space>[ \t\r]+)
    | (?P<newline>\n)
    | (?P<comment>\#[^\n]*)
    | (?P<name>[A-Za-z_][A-Za-z0-9_]*'*)
    | (?P<number>[0-9]+)
    | (?P<symbol>->|[{}()\[\],;:=+\-*/^|])
    """,
    re.VERBOSE,
)


class TokenKind(StrEnum):
    """Kinds of tokens."""

    NAME = "name"
    NUMBER = "number"
    SYMBOL = "symbol"
    END = "end"


@dataclass(frozen=True)
class Token:
    """A token with its position."""

    kind: TokenKind
    text: str
    span: Span

    def describe(self) -> str:
        """Human-readable form for diagnostics."""
        return "end-of-input" if self.kind is TokenKind.END else repr(self.text)


def tokenize(text: str) -> list[Token]:
    """Split text into tokens, dropping whitespace and # comments."""
    tokens = []
    position = 0
    line = 1
    line_start = 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        span = Span(line, position - line_start + 1)
        if match is None:
            raise ParseException(f"Unexpected character {text[position]!r}", span)
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind in ("name", "number", "symbol"):
            tokens.append(Token(TokenKind(kind), match.group(), span))
        position = match.end()
    tokens.append(Token(TokenKind.END, "", Span(line, position - line_start + 1)))
    return tokens
