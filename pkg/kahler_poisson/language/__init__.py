"""Declaration language for algebras, metrics, Kähler–Poisson triples and homomorphisms."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Span:
    """1-based line and column of a token."""

    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseException(Exception):
    """Exception raised because the input text is not a valid document."""

    def __init__(self, message: str, span: Span | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        return f"{self.span}: {self.message}" if self.span else self.message
