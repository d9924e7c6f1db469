"""Helpers shared by the tests."""

from collections.abc import Sequence
from importlib import resources

from kahler_poisson.kernel.matrix import Matrix
from kahler_poisson.kernel.ring import Ring, RingElem
from kahler_poisson.language.parser import parse_element


def elem(text: str, ring: Ring) -> RingElem:
    """Parse an element of a ring."""
    return parse_element(text, ring)


def matrix(rows: Sequence[Sequence[str]], ring: Ring) -> Matrix:
    """Parse a matrix given row by row as expression strings."""
    return Matrix(ring, tuple(tuple(elem(text, ring) for text in row) for row in rows))


def texts(value: Matrix) -> list[list[str]]:
    """Canonical text of every entry."""
    return [[str(entry) for entry in row] for row in value.rows]


def corpus_files() -> list[str]:
    """Names of the shipped corpus documents."""
    directory = resources.files("kahler_poisson") / "corpus"
    return sorted(entry.name for entry in directory.iterdir() if entry.name.endswith(".kp"))


def corpus_text(name: str) -> str:
    """Text of a shipped corpus document."""
    return (resources.files("kahler_poisson") / "corpus" / name).read_text(encoding="utf-8")
