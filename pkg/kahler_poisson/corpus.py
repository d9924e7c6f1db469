"""Regression corpus of worked examples shipped with the package."""

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from typing import Any

import voluptuous as vol

from .commands import Command, CommandOptions, run_text
from .config import Settings
from .const import CORPUS_INDEX
from .report import Counterexample, Report, ReportStatus

_LOGGER = logging.getLogger(__name__)

CORPUS_PACKAGE = "kahler_poisson"
CORPUS_DIRECTORY = "corpus"

_NAMES = vol.All([str], vol.Coerce(tuple))

OPTIONS_SCHEMA = vol.Schema(
    {
        vol.Optional("algebra"): str,
        vol.Optional("kp"): str,
        vol.Optional("hom"): str,
        vol.Optional("left"): str,
        vol.Optional("right"): str,
        vol.Optional("name"): str,
        vol.Optional("sub"): str,
        vol.Optional("ambient"): str,
        vol.Optional("inclusion"): _NAMES,
        vol.Optional("preimages"): _NAMES,
        vol.Optional("assume_poisson"): bool,
    }
)

ENTRY_SCHEMA = vol.Schema(
    {
        vol.Required("name"): str,
        vol.Required("file"): str,
        vol.Required("citation"): str,
        vol.Required("command"): vol.Coerce(Command),
        vol.Optional("options", default=dict): OPTIONS_SCHEMA,
        vol.Required("expected"): vol.Coerce(ReportStatus),
        vol.Optional("eta"): str,
    }
)

INDEX_SCHEMA = vol.Schema({vol.Required("entries"): [ENTRY_SCHEMA]})


@dataclass(frozen=True)
class CorpusEntry:
    """One worked example and the outcome it must reproduce."""

    name: str
    file: str
    citation: str
    command: Command
    options: CommandOptions
    expected: ReportStatus
    eta: str | None = None


def _corpus_file(name: str) -> str:
    return (resources.files(CORPUS_PACKAGE) / CORPUS_DIRECTORY / name).read_text(encoding="utf-8")


def load_entries() -> list[CorpusEntry]:
    """Read and validate the corpus index.

    Raises:
        vol.Invalid: If the index does not match INDEX_SCHEMA
    """
    data: dict[str, Any] = INDEX_SCHEMA(json.loads(_corpus_file(CORPUS_INDEX)))
    return [
        CorpusEntry(
            name=entry["name"],
            file=entry["file"],
            citation=entry["citation"],
            command=entry["command"],
            options=CommandOptions(**entry["options"]),
            expected=entry["expected"],
            eta=entry.get("eta"),
        )
        for entry in data["entries"]
    ]


def _mismatch(entry: CorpusEntry, report: Report) -> str | None:
    if report.status is not entry.expected:
        return f"expected {entry.expected}, got {report.status}"
    if entry.eta is not None and report.eta != entry.eta:
        return f"expected eta = {entry.eta}, got {report.eta}"
    return None


def run_entry(entry: CorpusEntry) -> Report:
    """Run one corpus entry; its report carries the expected outcome in details."""
    try:
        report, _ = run_text(_corpus_file(entry.file), entry.command, entry.options)
    except Exception:  # noqa: BLE001
        _LOGGER.exception("Corpus entry %s crashed", entry.name)
        report = Report(entry.command, ReportStatus.ERROR, notes=["internal error"])
    report.name = entry.name
    report.details["citation"] = entry.citation
    report.details["expected"] = entry.expected
    mismatch = _mismatch(entry, report)
    report.details["matched"] = mismatch is None
    if mismatch is not None:
        _LOGGER.warning("Corpus entry %s: %s", entry.name, mismatch)
        report.add_notes([mismatch])
    return report


def run_corpus(settings: Settings, entries: list[CorpusEntry] | None = None) -> Report:
    """Run every entry, in parallel when configured, and report them in index order.

    The corpus passes when every entry reproduces its expected status and eta.
    """
    start = time.perf_counter()
    if entries is None:
        entries = load_entries()
    with ThreadPoolExecutor(max_workers=settings.threads) as executor:
        reports = list(executor.map(run_entry, entries))

    witness = None
    for index, report in enumerate(reports):
        if not report.details["matched"]:
            witness = Counterexample((index + 1,), f"{report.name}: {report.notes[-1]}")
            break
    matched = sum(1 for report in reports if report.details["matched"])
    corpus = Report(
        "corpus",
        ReportStatus.PASS if witness is None else ReportStatus.FAIL,
        witness=witness,
        details={"matched": matched, "total": len(reports)},
        entries=reports,
    )
    corpus.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    _LOGGER.debug("Corpus: %d of %d entries matched", matched, len(reports))
    return corpus
