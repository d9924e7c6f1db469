"""Outcome of a symbolic check."""

from dataclasses import dataclass, field
from enum import StrEnum

from .matrix import Matrix
from .ring import RingElem


class Status(StrEnum):
    """Status of a check."""

    PASS = "pass"
    FAIL = "fail"
    DEGENERATE = "degenerate"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class Witness:
    """Counterexample: 1-based indices of the offending entry and its nonzero residual."""

    indices: tuple[int, ...]
    residual: RingElem

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.indices))}): {self.residual}"


@dataclass(frozen=True)
class Condition:
    """Verdict of one numbered condition of a composite check."""

    name: str
    status: Status
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    """Result of a check; a failing verdict always carries a witness."""

    status: Status
    witness: Witness | None = None
    notes: tuple[str, ...] = ()
    residual: Matrix | None = None
    conditions: tuple[Condition, ...] = field(default=())

    def __post_init__(self) -> None:
        assert self.status is not Status.FAIL or self.witness is not None

    @property
    def passed(self) -> bool:
        """True for pass and degenerate outcomes."""
        return self.status in (Status.PASS, Status.DEGENERATE)


PASS = Verdict(Status.PASS)


def first_failure(residual: Matrix, notes: tuple[str, ...] = ()) -> Verdict:
    """Pass if the residual vanishes, else fail at its first nonzero entry."""
    position = residual.first_nonzero()
    if position is None:
        return Verdict(Status.PASS, notes=notes)
    i, j = position
    return Verdict(
        Status.FAIL,
        Witness((i + 1, j + 1), residual[i, j]),
        notes=notes,
        residual=residual,
    )
