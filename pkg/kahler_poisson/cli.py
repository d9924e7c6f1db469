"""Command line interface."""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from .commands import Command, CommandOptions, run_text
from .config import SettingsException, load_settings
from .corpus import run_corpus
from .report import Report, ReportStatus

_LOGGER = logging.getLogger(__name__)

CORPUS_COMMAND = "corpus"


def _names(text: str) -> tuple[str, ...]:
    return tuple(name.strip() for name in text.split(","))


def _add_file_command(
    subparsers: "argparse._SubParsersAction[argparse.ArgumentParser]", command: Command, help_text: str
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(command.value, help=help_text)
    parser.add_argument("file", type=Path, help="Declaration file")
    parser.add_argument(
        "--assume-poisson",
        action="store_true",
        help="Skip the Jacobi check of declared algebras",
    )
    return parser


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--name", help="Name of the constructed Kähler–Poisson algebra")
    parser.add_argument("--output", type=Path, help="Write the construction to this file")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands."""
    parser = argparse.ArgumentParser(
        prog="kahler-poisson", description="Exact checks on Kähler–Poisson algebras"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")
    parser.add_argument("--json", action="store_true", help="Print the report as JSON")
    subparsers = parser.add_subparsers(dest="command", required=True)

    sub = _add_file_command(subparsers, Command.CHECK_POISSON, "Check antisymmetry and Jacobi")
    sub.add_argument("--algebra", required=True)

    for command, help_text in (
        (Command.SOLVE_ETA, "Solve eta P g P g P = -P for eta"),
        (Command.VERIFY, "Verify the declared eta"),
        (Command.TENSORS, "Print D and P tensors and check the projector identity"),
    ):
        sub = _add_file_command(subparsers, command, help_text)
        sub.add_argument("--kp", required=True)

    for command, help_text in (
        (Command.CHECK_HOM, "Check the Kähler–Poisson homomorphism conditions"),
        (Command.CHECK_ISO, "Check the isomorphism criterion on metrics"),
        (Command.CHECK_ETA_TRANSPORT, "Check that phi(eta) agrees with eta' on the brackets"),
    ):
        sub = _add_file_command(subparsers, command, help_text)
        sub.add_argument("--hom", required=True)

    for command, help_text in (
        (Command.DSUM, "Direct sum of two Kähler–Poisson algebras"),
        (Command.TPROD, "Tensor product of two Kähler–Poisson algebras"),
    ):
        sub = _add_file_command(subparsers, command, help_text)
        sub.add_argument("--left", required=True)
        sub.add_argument("--right", required=True)
        _add_output(sub)

    sub = _add_file_command(subparsers, Command.CHECK_SUB, "Check a Kähler–Poisson subalgebra")
    sub.add_argument("--sub", required=True)
    sub.add_argument("--super", dest="ambient", required=True)
    sub.add_argument(
        "--inclusion",
        type=_names,
        help="Comma-separated super generators in sub generator order",
    )

    sub = _add_file_command(subparsers, Command.IMAGE_SUB, "Image subalgebra of a homomorphism")
    sub.add_argument("--hom", required=True)
    sub.add_argument("--preimage", dest="preimages", nargs="+", required=True, metavar="EXPR")
    _add_output(sub)

    subparsers.add_parser(CORPUS_COMMAND, help="Run the worked-example corpus")
    return parser


def _options(args: argparse.Namespace) -> CommandOptions:
    return CommandOptions(
        algebra=getattr(args, "algebra", None),
        kp=getattr(args, "kp", None),
        hom=getattr(args, "hom", None),
        left=getattr(args, "left", None),
        right=getattr(args, "right", None),
        name=getattr(args, "name", None),
        output=getattr(args, "output", None),
        sub=getattr(args, "sub", None),
        ambient=getattr(args, "ambient", None),
        inclusion=getattr(args, "inclusion", None),
        preimages=tuple(getattr(args, "preimages", None) or ()),
        assume_poisson=args.assume_poisson,
    )


def _run(args: argparse.Namespace) -> Report:
    if args.command == CORPUS_COMMAND:
        try:
            settings = load_settings()
        except SettingsException as e:
            return Report(CORPUS_COMMAND, ReportStatus.ERROR, notes=[str(e)])
        return run_corpus(settings)

    command = Command(args.command)
    try:
        text = args.file.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        return Report(command, ReportStatus.ERROR, notes=[f"Cannot read {args.file}: {e}"])
    report, _ = run_text(text, command, _options(args))
    return report


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    report = _run(args)
    if report.status is ReportStatus.ERROR:
        for note in report.notes:
            _LOGGER.error("%s", note)
    print(report.to_json() if args.json else report.to_text())  # noqa: T201
    return int(report.exit_code)

