"""Subcommands: dispatch from a parsed document to the kernel and build reports."""

import logging
import time
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

from .const import ExitCode
from .kernel import AlgebraException, UnsupportedException
from .kernel.constructions import (
    Side,
    SumSpec,
    TensorSpec,
    check_subalgebra,
    direct_sum,
    embed_factor,
    tensor_product,
)
from .kernel.kahler import (
    ASSUMED_POISSON_NOTE,
    EtaOutcome,
    KPAlgebra,
    check_projector,
    compose_q,
    kp_tensors,
    localization_notes,
    solve_eta,
    verdict_for,
    verify_kp,
)
from .kernel.morphism import (
    check_iso,
    check_kp_morphism,
    eta_transport_check,
    image_subalgebra,
    pullback_metric,
)
from .kernel.poisson import check_antisymmetry, check_jacobi
from .kernel.verdict import Status
from .language import ParseException
from .language.document import Document, parse_input
from .language.parser import parse_element
from .language.printer import document_for, format_document
from .report import Report, ReportStatus, input_crc

_LOGGER = logging.getLogger(__name__)


class Command(StrEnum):
    """Subcommands that run on one input document."""

    CHECK_POISSON = "check-poisson"
    SOLVE_ETA = "solve-eta"
    VERIFY = "verify"
    TENSORS = "tensors"
    CHECK_HOM = "check-hom"
    CHECK_ISO = "check-iso"
    CHECK_ETA_TRANSPORT = "check-eta-transport"
    DSUM = "dsum"
    TPROD = "tprod"
    CHECK_SUB = "check-sub"
    IMAGE_SUB = "image-sub"


@dataclass(frozen=True)
class CommandOptions:
    """Names and flags a subcommand reads from the command line."""

    algebra: str | None = None
    kp: str | None = None
    hom: str | None = None
    left: str | None = None
    right: str | None = None
    name: str | None = None
    output: Path | None = None
    sub: str | None = None
    ambient: str | None = None
    inclusion: tuple[str, ...] | None = None
    preimages: tuple[str, ...] = ()
    assume_poisson: bool = False


def _require(value: str | None, flag: str) -> str:
    if value is None:
        raise ParseException(f"Expected --{flag}, got none")
    return value


def _check_poisson(document: Document, options: CommandOptions) -> Report:
    structure = document.algebra(_require(options.algebra, "algebra"))
    verdict = check_antisymmetry(structure.matrix)
    if verdict.status is Status.PASS:
        verdict = check_jacobi(structure.matrix)
    report = Report.from_verdict(Command.CHECK_POISSON, verdict)
    report.details["brackets"] = structure.matrix
    return report


def _solve_eta(document: Document, options: CommandOptions) -> Report:
    algebra = document.kahler(_require(options.kp, "kp"))
    solution = solve_eta(algebra, algebra.metric)
    report = Report.from_verdict(Command.SOLVE_ETA, verdict_for(solution))
    report.details["outcome"] = solution.outcome
    report.details["q"] = compose_q(algebra, algebra.metric)
    if solution.eta is not None:
        report.eta = str(solution.eta)
        report.add_notes(localization_notes(algebra, solution.eta))
    return report


def _verify(document: Document, options: CommandOptions) -> Report:
    algebra = document.kahler(_require(options.kp, "kp"))
    report = Report.from_verdict(Command.VERIFY, verify_kp(algebra), eta=str(algebra.eta))
    assert algebra.eta is not None
    report.add_notes(localization_notes(algebra, algebra.eta))
    return report


def _with_eta(algebra: KPAlgebra) -> KPAlgebra:
    if algebra.eta is not None:
        return algebra
    solution = solve_eta(algebra, algebra.metric)
    if solution.outcome is EtaOutcome.NOT_PROPORTIONAL:
        raise UnsupportedException(f"Expected eta, got none solving the condition: {solution.witness}")
    return algebra.with_eta(solution.eta)


def _tensors(document: Document, options: CommandOptions) -> Report:
    algebra = _with_eta(document.kahler(_require(options.kp, "kp")))
    tensors = kp_tensors(algebra)
    report = Report.from_verdict(Command.TENSORS, check_projector(algebra), eta=str(algebra.eta))
    report.details.update(
        {"d_upper": tensors.d_upper, "d_mixed": tensors.d_mixed, "p_mixed": tensors.p_mixed}
    )
    return report


def _check_hom(document: Document, options: CommandOptions) -> Report:
    hom = document.hom(_require(options.hom, "hom"))
    return Report.from_verdict(Command.CHECK_HOM, check_kp_morphism(hom))


def _check_iso(document: Document, options: CommandOptions) -> Report:
    hom = document.hom(_require(options.hom, "hom"))
    verdict = check_iso(hom)
    report = Report.from_verdict(Command.CHECK_ISO, verdict)
    if verdict.status is Status.PASS:
        pulled = pullback_metric(hom)
        report.details["pullback_metric"] = pulled
        report.details["pullback_determinant"] = pulled.determinant()
        report.details["source_determinant"] = hom.source.metric.matrix.determinant()
    return report


def _check_eta_transport(document: Document, options: CommandOptions) -> Report:
    hom = document.hom(_require(options.hom, "hom"))
    transported = hom.apply(hom.source.require_eta())
    report = Report.from_verdict(
        Command.CHECK_ETA_TRANSPORT, eta_transport_check(hom), eta=str(hom.target.require_eta())
    )
    report.details["transported_eta"] = transported
    return report


def _emit(report: Report, name: str, algebra: KPAlgebra, options: CommandOptions) -> None:
    text = format_document(document_for(name, algebra))
    reparsed = parse_input(text, options.assume_poisson).kahler(name)
    report.details["round_trip"] = verify_kp(reparsed).status
    if options.output is None:
        report.details["document"] = text
        return
    options.output.write_text(text, encoding="utf-8")
    _LOGGER.info("Wrote %s to %s", name, options.output)
    report.details["output"] = str(options.output)


def _dsum(document: Document, options: CommandOptions) -> Report:
    spec = SumSpec(
        document.kahler(_require(options.left, "left")),
        document.kahler(_require(options.right, "right")),
    )
    algebra = direct_sum(spec)
    report = Report.from_verdict(Command.DSUM, verify_kp(algebra), eta=str(algebra.eta))
    report.details["embeddings"] = {
        str(side): check_kp_morphism(embed_factor(algebra, side)).status for side in Side
    }
    _emit(report, options.name or "S", algebra, options)
    return report


def _tprod(document: Document, options: CommandOptions) -> Report:
    spec = TensorSpec.from_square_roots(
        document.kahler(_require(options.left, "left")),
        document.kahler(_require(options.right, "right")),
    )
    algebra = tensor_product(spec)
    report = Report.from_verdict(Command.TPROD, verify_kp(algebra), eta=str(algebra.eta))
    report.details["rho_left"] = spec.rho_left
    report.details["rho_right"] = spec.rho_right
    _emit(report, options.name or "T", algebra, options)
    return report


def _check_sub(document: Document, options: CommandOptions) -> Report:
    sub = document.kahler(_require(options.sub, "sub"))
    ambient = document.kahler(_require(options.ambient, "super"))
    inclusion = None
    if options.inclusion is not None:
        inclusion = [ambient.ring.index(name) for name in options.inclusion]
    return Report.from_verdict(Command.CHECK_SUB, check_subalgebra(sub, ambient, inclusion))


def _image_sub(document: Document, options: CommandOptions) -> Report:
    hom = document.hom(_require(options.hom, "hom"))
    preimages = [parse_element(text, hom.source.ring) for text in options.preimages]
    algebra = image_subalgebra(hom, preimages)
    if algebra.eta is None:
        solution = solve_eta(algebra, algebra.metric)
        return Report.from_verdict(Command.IMAGE_SUB, verdict_for(solution))
    report = Report.from_verdict(Command.IMAGE_SUB, verify_kp(algebra), eta=str(algebra.eta))
    report.details["metric"] = algebra.metric.matrix
    _emit(report, options.name or "I", algebra, options)
    return report


_HANDLERS: dict[Command, Callable[[Document, CommandOptions], Report]] = {
    Command.CHECK_POISSON: _check_poisson,
    Command.SOLVE_ETA: _solve_eta,
    Command.VERIFY: _verify,
    Command.TENSORS: _tensors,
    Command.CHECK_HOM: _check_hom,
    Command.CHECK_ISO: _check_iso,
    Command.CHECK_ETA_TRANSPORT: _check_eta_transport,
    Command.DSUM: _dsum,
    Command.TPROD: _tprod,
    Command.CHECK_SUB: _check_sub,
    Command.IMAGE_SUB: _image_sub,
}


@contextmanager
def _reporting(command: Command, outcome: list[Report]) -> Iterator[None]:
    try:
        yield
    except UnsupportedException as e:
        _LOGGER.debug("%s is unsupported: %s", command, e)
        outcome.append(Report(command, ReportStatus.UNSUPPORTED, notes=[str(e)]))
    except (ParseException, AlgebraException) as e:
        _LOGGER.debug("%s rejected its input: %s", command, e)
        outcome.append(Report(command, ReportStatus.ERROR, notes=[str(e)]))
    except OSError as e:
        outcome.append(Report(command, ReportStatus.ERROR, notes=[f"Cannot write output: {e}"]))


def run_command(
    document: Document, command: Command | str, options: CommandOptions
) -> tuple[Report, ExitCode]:
    """Run one subcommand on a parsed document.

    Kernel and lookup errors become error reports (exit 2), unsupported
    computations become unsupported reports (exit 3).

    Returns:
        tuple[Report, ExitCode]: The report and its exit code
    """
    command = Command(command)
    outcome: list[Report] = []
    with _reporting(command, outcome):
        outcome.append(_HANDLERS[command](document, options))
    report = outcome[-1]
    if options.assume_poisson and command is not Command.CHECK_POISSON:
        report.add_notes([ASSUMED_POISSON_NOTE])
    return report, report.exit_code


def run_text(
    text: str, command: Command | str, options: CommandOptions
) -> tuple[Report, ExitCode]:
    """Parse a document and run one subcommand on it, stamping CRC and timing.

    check-poisson parses without the Jacobi check so that it can report the
    failing triple itself.
    """
    command = Command(command)
    start = time.perf_counter()
    outcome: list[Report] = []
    with _reporting(command, outcome):
        document = parse_input(
            text, options.assume_poisson or command is Command.CHECK_POISSON
        )
        outcome.append(run_command(document, command, options)[0])
    report = outcome[-1]
    report.input_crc = input_crc(text.encode("utf-8"))
    report.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return report, report.exit_code
