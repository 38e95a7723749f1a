"""Unit tests for the comtet command line."""
import json

import pytest

from modules import verification
from modules.cli import EXIT_FAILED, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, main
from modules.verification import Check


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


def test_count(capsys):
    """Test the size of S_5(231)."""
    assert run(capsys, "count", "--patterns", "231", "--n", "5")[:2] == (EXIT_OK, "42")


def test_enumerate_json(capsys):
    """Test listing a class as JSON."""
    code, out, _ = run(capsys, "enumerate", "--patterns", "231", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    assert sorted(json.loads(out)) == [[1, 2], [2, 1]]


def test_matrix_text_and_json(capsys):
    """Test the (iar, comp) matrix in both formats."""
    code, out, _ = run(capsys, "matrix", "--patterns", "231", "--n", "3")
    assert code == EXIT_OK
    assert out == "2 1 0\n0 1 0\n0 0 1"
    code, out, _ = run(capsys, "matrix", "--patterns", "1234", "--n", "3", "--format", "json")
    assert json.loads(out) == {'n': 3, 'patterns': ['1234'],
                               'rows': [[2, 1, 0], [1, 1, 0], [0, 0, 1]]}


def test_bijection(capsys):
    """Test applying phi and a precondition violation of theta."""
    assert run(capsys, "bijection", "--name", "phi", "--input", "231")[:2] == (EXIT_OK, "2 1 3")
    code, _, err = run(capsys, "bijection", "--name", "theta", "--input", "213")
    assert code == EXIT_PRECONDITION
    assert "precondition violated" in err
    assert run(capsys, "bijection", "--name", "nope", "--input", "1")[0] == EXIT_USAGE


def test_tree_dump(capsys):
    """Test the abstract tree dump."""
    code, out, _ = run(capsys, "tree", "--depth", "2")
    assert code == EXIT_OK
    assert out == "L1: (2)*\nL2: (3) (3)*"


def test_gf_errors(capsys):
    """Test the exit code of unsupported classes and missing patterns."""
    assert run(capsys, "gf", "--patterns", "1234", "--order", "4")[0] == EXIT_USAGE
    assert run(capsys, "gf", "--order", "4")[0] == EXIT_USAGE
    assert run(capsys, "gf", "--series", "H321", "--order", "3")[0] == EXIT_OK


def test_invalid_patterns_exit_with_usage():
    """Test that argparse rejects unparsable patterns."""
    with pytest.raises(SystemExit) as excinfo:
        main(["count", "--patterns", "abc", "--n", "3"])
    assert excinfo.value.code == EXIT_USAGE


def test_verify_and_checks(capsys):
    """Test running one suite and listing all of them."""
    code, out, _ = run(capsys, "verify", "--check", "corner-sequence", "--nmax", "4")
    assert code == EXIT_OK
    assert out.startswith("corner-sequence: PASS (nmax=4)")
    assert run(capsys, "verify", "--check", "no-such-check")[0] == EXIT_USAGE
    code, out, _ = run(capsys, "checks")
    assert code == EXIT_OK
    assert "inversion-bridge" in out


def test_verify_by_alias(capsys):
    """Test that alternative check names run the suite they stand for."""
    code, out, _ = run(capsys, "verify", "--check", "thm1.4", "--nmax", "5")
    assert code == EXIT_OK
    assert out.startswith("des-dd-iar: PASS (nmax=5)")
    code, out, _ = run(capsys, "verify", "--check", "table1", "--nmax", "4")
    assert code == EXIT_OK
    assert out.startswith("single-pattern-gf: PASS (nmax=4)")
    code, out, _ = run(capsys, "checks")
    assert "(also: thm1.4)" in out


def test_verify_perm_nmax(capsys):
    """Test that --perm-nmax reaches the suite that takes it."""
    code, out, _ = run(capsys, "verify", "--check", "thm6.1", "--nmax", "5", "--perm-nmax", "4")
    assert code == EXIT_OK
    assert out.startswith("izero-recurrence: PASS (nmax=5, perm_nmax=4)")


def test_verify_all(capsys, monkeypatch):
    """Test running every registered suite and the combined exit code."""
    def passing(outcome, nmax):
        outcome.note(f"nmax={nmax}")

    def failing(outcome, nmax):
        outcome.require(False, "always")

    monkeypatch.setattr(verification, "CHECKS", {
        "first": Check("first", passing, {"nmax": 3}, ""),
        "second": Check("second", passing, {"nmax": 3}, ""),
    })
    code, out, _ = run(capsys, "verify", "--all", "--nmax", "2", "--format", "json")
    assert code == EXIT_OK
    assert [(r["check"], r["parameters"]) for r in json.loads(out)] == [
        ("first", {"nmax": 2}), ("second", {"nmax": 2})]
    verification.CHECKS["second"] = Check("second", failing, {"nmax": 3}, "")
    code, out, _ = run(capsys, "verify", "--all")
    assert code == EXIT_FAILED
    assert "second: FAIL" in out


def test_verify_needs_a_check_or_all():
    """Test that verify without --check or --all is a usage error."""
    with pytest.raises(SystemExit) as excinfo:
        main(["verify"])
    assert excinfo.value.code == EXIT_USAGE
