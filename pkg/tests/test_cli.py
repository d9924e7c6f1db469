"""Test the command line entry point."""

import json
from pathlib import Path

import pytest

from kahler_poisson.cli import build_parser, main
from kahler_poisson.const import ENV_THREADS

from .common import corpus_text


@pytest.fixture(name="trivial_file")
def trivial_file_fixture(tmp_path: Path) -> Path:
    """Provide the trivial corpus document on disk."""
    path = tmp_path / "trivial.kp"
    path.write_text(corpus_text("trivial.kp"), encoding="utf-8")
    return path


def test_parser_options():
    """Subcommand flags land in the namespace."""
    args = build_parser().parse_args(
        ["check-sub", "doc.kp", "--sub", "S", "--super", "M", "--inclusion", "z, w"]
    )
    assert args.ambient == "M"
    assert args.inclusion == ("z", "w")
    args = build_parser().parse_args(["image-sub", "doc.kp", "--hom", "phi", "--preimage", "x + y", "x - y"])
    assert args.preimages == ["x + y", "x - y"]
    assert not args.assume_poisson


def test_solve_eta_json(trivial_file: Path, capsys: pytest.CaptureFixture[str]):
    """--json prints one report object."""
    assert main(["--json", "solve-eta", str(trivial_file), "--kp", "K"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "pass"
    assert data["eta"] == "1"
    assert data["command"] == "solve-eta"


def test_verify_text(trivial_file: Path, capsys: pytest.CaptureFixture[str]):
    """Plain text names the witness; a failure exits with 1."""
    assert main(["verify", str(trivial_file), "--kp", "K2"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("verify: fail\n")
    assert "  witness: (1, 2): -1\n" in out


def test_missing_file(
    tmp_path: Path, capsys: pytest.CaptureFixture[str], caplog: pytest.LogCaptureFixture
):
    """Unreadable input is an input error."""
    assert main(["solve-eta", str(tmp_path / "missing.kp"), "--kp", "K"]) == 2
    assert capsys.readouterr().out.startswith("solve-eta: error\n")
    assert "Cannot read" in caplog.text


def test_unsupported(tmp_path: Path, capsys: pytest.CaptureFixture[str]):
    """Unsupported computations exit with 3."""
    path = tmp_path / "blocks.kp"
    path.write_text(corpus_text("not_proportional.kp"), encoding="utf-8")
    assert main(["solve-eta", str(path), "--kp", "K"]) == 3
    assert "unsupported" in capsys.readouterr().out


def test_corpus(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]):
    """The corpus passes with parallel workers."""
    monkeypatch.setenv(ENV_THREADS, "2")
    assert main(["--json", "corpus"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["details"] == {"matched": 21, "total": 21}
    assert len(data["entries"]) == 21


def test_corpus_invalid_threads(monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture):
    """Invalid settings are reported as input errors."""
    monkeypatch.setenv(ENV_THREADS, "many")
    assert main(["corpus"]) == 2
    assert f"Expected integer 1..64 in {ENV_THREADS}, got 'many'" in caplog.text
