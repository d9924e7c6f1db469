"""Versioned verdict reports in JSON and plain text."""

import json
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import crc

from .const import SCHEMA_VERSION, ExitCode
from .kernel.matrix import Matrix, format_matrix
from .kernel.ring import RingElem
from .kernel.verdict import Condition, Status, Verdict, Witness


class ReportStatus(StrEnum):
    """Status of a report; error marks input that never reached the kernel."""

    PASS = "pass"
    FAIL = "fail"
    DEGENERATE = "degenerate"
    UNSUPPORTED = "unsupported"
    ERROR = "error"

    @classmethod
    def of(cls, status: Status) -> "ReportStatus":
        """Report status of a kernel status."""
        return cls(status.value)

    @property
    def exit_code(self) -> ExitCode:
        """Process exit code for this status."""
        match self:
            case ReportStatus.PASS | ReportStatus.DEGENERATE:
                return ExitCode.OK
            case ReportStatus.FAIL:
                return ExitCode.FAIL
            case ReportStatus.UNSUPPORTED:
                return ExitCode.UNSUPPORTED
        return ExitCode.INPUT_ERROR


@dataclass(frozen=True)
class Counterexample:
    """Witness in canonical text: 1-based indices and the nonzero residual."""

    indices: tuple[int, ...]
    residual: str

    @classmethod
    def of(cls, witness: Witness) -> "Counterexample":
        """Render a kernel witness."""
        return cls(witness.indices, str(witness.residual))

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.indices))}): {self.residual}"


def input_crc(data: bytes) -> str:
    """CRC-16/X-25 of the input as four hex digits.

    Calculators are not thread safe, so every call builds its own.
    """
    calculator = crc.Calculator(crc.Crc16.X25.value)
    return f"{calculator.checksum(data):04x}"


def _jsonable(value: Any) -> Any:
    match value:
        case Matrix():
            return [[str(entry) for entry in row] for row in value.rows]
        case RingElem() | StrEnum():
            return str(value)
        case Condition(name=name, status=status, note=note):
            return {"name": name, "status": str(status), "note": note}
        case dict():
            return {str(key): _jsonable(item) for key, item in value.items()}
        case list() | tuple():
            return [_jsonable(item) for item in value]
    return value


def _text(value: Any, indent: str) -> str:
    match value:
        case Matrix():
            return "\n" + indent + format_matrix(value, indent)
        case Condition(name=name, status=status, note=note):
            return f"{name} {status}" + (f" ({note})" if note else "")
        case list() | tuple():
            return "".join(f"\n{indent}{_text(item, indent + '  ')}" for item in value)
        case str() if "\n" in value:
            return "".join(f"\n{indent}{line}" for line in value.splitlines())
    return str(value)


@dataclass
class Report:
    """Outcome of one command; a failing report always carries a counterexample."""

    command: str
    status: ReportStatus
    eta: str | None = None
    witness: Counterexample | None = None
    notes: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    entries: list["Report"] = field(default_factory=list)
    name: str | None = None
    input_crc: str | None = None
    elapsed_ms: float | None = None

    def __post_init__(self) -> None:
        assert self.status is not ReportStatus.FAIL or self.witness is not None

    @classmethod
    def from_verdict(cls, command: str, verdict: Verdict, **kwargs: Any) -> "Report":
        """Report carrying the status, witness and notes of a verdict."""
        report = cls(
            command,
            ReportStatus.of(verdict.status),
            witness=None if verdict.witness is None else Counterexample.of(verdict.witness),
            **kwargs,
        )
        report.add_notes(verdict.notes)
        if verdict.residual is not None:
            report.details["residual"] = verdict.residual
        if verdict.conditions:
            report.details["conditions"] = list(verdict.conditions)
        return report

    @property
    def exit_code(self) -> ExitCode:
        """Process exit code."""
        return self.status.exit_code

    def add_notes(self, notes: list[str] | tuple[str, ...]) -> None:
        """Append notes that are not present yet."""
        for note in notes:
            if note not in self.notes:
                self.notes.append(note)

    def to_dict(self, *, timing: bool = True) -> dict[str, Any]:
        """JSON-compatible mapping; timing=False drops elapsed_ms everywhere."""
        data: dict[str, Any] = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "status": str(self.status),
            "eta": self.eta,
            "witness": None
            if self.witness is None
            else {"indices": list(self.witness.indices), "residual": self.witness.residual},
            "notes": list(self.notes),
            "details": _jsonable(self.details),
            "entries": [entry.to_dict(timing=timing) for entry in self.entries],
            "input_crc": self.input_crc,
        }
        if self.name is not None:
            data["name"] = self.name
        if timing:
            data["elapsed_ms"] = self.elapsed_ms
        return data

    def to_json(self, *, timing: bool = True) -> str:
        """Single JSON object with sorted keys."""
        return json.dumps(self.to_dict(timing=timing), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self, indent: str = "") -> str:
        """Human-readable rendering of the same fields."""
        title = self.command if self.name is None else f"{self.name} ({self.command})"
        lines = [f"{indent}{title}: {self.status}"]
        inner = indent + "  "
        if self.eta is not None:
            lines.append(f"{inner}eta: {self.eta}")
        if self.witness is not None:
            lines.append(f"{inner}witness: {self.witness}")
        lines.extend(f"{inner}note: {note}" for note in self.notes)
        for key in sorted(self.details):
            lines.append(f"{inner}{key}: {_text(self.details[key], inner + '  ')}")
        lines.extend(entry.to_text(inner) for entry in self.entries)
        return "\n".join(lines)
