"""Unit tests for the named verification suites."""
import pytest

from modules.config_loader import ConfigLoader
from modules.errors import ConsistencyError, InvalidInputError, PreconditionError
from modules import verification
from modules.verification import (
    ALIASES,
    CHECKS,
    Check,
    VerificationReport,
    aliases_of,
    list_checks,
    run_all,
    run_check,
)


@pytest.fixture
def sample_config(tmp_path):
    """Config directory with small bounds for a single check."""
    (tmp_path / "verification.yaml").write_text(
        "checks:\n  corner-sequence: {nmax: 4}\n"
    )
    (tmp_path / "patterns.yaml").write_text("classes: {}\n")
    return ConfigLoader(str(tmp_path))


def test_registry_lists_every_suite():
    """Test that list_checks exposes names with descriptions."""
    names = [name for name, _ in list_checks()]
    assert len(names) == len(CHECKS)
    for expected in ("schroder-matrices", "corner-sequence", "generating-trees",
                     "inversion-bridge", "negative-findings"):
        assert expected in names


@pytest.mark.parametrize("name,bounds", [
    ("corner-sequence", {"nmax": 5}),
    ("schroder-matrices", {"nmax": 4}),
    ("izero-recurrence", {"nmax": 5, "perm_nmax": 5}),
    ("generating-trees", {"depth": 4}),
    ("inversion-bridge", {"nmax": 4}),
    ("schroder-des", {"nmax": 6}),
])
def test_cheap_suites_pass(name, bounds):
    """Test a few suites at small bounds."""
    report = run_check(name, **bounds)
    assert report.verdict == 'pass', report.details
    assert report.passed
    assert report.witness is None
    assert report.parameters == bounds


def test_bounds_resolution(sample_config):
    """Test config bounds, keyword overrides and ignored keywords."""
    assert run_check("corner-sequence", sample_config).parameters == {"nmax": 4}
    report = run_check("corner-sequence", sample_config, nmax=3, order=9)
    assert report.parameters == {"nmax": 3}
    report = run_check("corner-sequence", sample_config, nmax=None)
    assert report.parameters == {"nmax": 4}


def test_unknown_check():
    """Test that unknown names are rejected."""
    with pytest.raises(InvalidInputError):
        run_check("no-such-check")


def test_failed_suite_carries_witness(monkeypatch):
    """Test the fail verdict and its first counterexample."""
    def failing(outcome, nmax):
        for n in range(1, nmax + 1):
            outcome.require(n < 2, f"n={n}")

    monkeypatch.setitem(CHECKS, "always-fails", Check("always-fails", failing, {"nmax": 3}, ""))
    report = run_check("always-fails")
    assert report.verdict == 'fail'
    assert not report.passed
    assert report.witness == "n=2"
    assert report.details == ["FAILED: n=2", "FAILED: n=3"]
    assert "witness: n=2" in report.summary()


def test_finding_suite(monkeypatch):
    """Test that finding suites never report a failure."""
    def observed(outcome):
        outcome.note("observed")
        outcome.require(False, "differs")

    monkeypatch.setitem(CHECKS, "finding", Check("finding", observed, {}, "", finding=True))
    report = run_check("finding")
    assert report.verdict == 'finding'
    assert report.passed
    assert report.details == ["observed", "FAILED: differs"]


def test_engine_errors_become_failures(monkeypatch):
    """Test that errors raised inside a suite are reported as its witness."""
    def raising(outcome):
        raise PreconditionError("outside the domain")

    monkeypatch.setitem(CHECKS, "raising", Check("raising", raising, {}, ""))
    report = run_check("raising")
    assert report.verdict == 'fail'
    assert report.witness == "PreconditionError: outside the domain"


def test_report_serialization():
    """Test summary and JSON form of a report."""
    report = VerificationReport("corner-sequence", {"nmax": 5}, 'pass', elapsed=0.5)
    assert report.summary() == "corner-sequence: PASS (nmax=5) in 0.50s"
    data = report.to_json()
    assert data["verdict"] == 'pass'
    assert data["parameters"] == {"nmax": 5}
    with pytest.raises(ConsistencyError):
        VerificationReport("corner-sequence", {}, 'fail')


def test_aliases_resolve_to_registered_suites():
    """Test that every alternative name points at a suite and runs it."""
    assert set(ALIASES.values()) <= set(CHECKS)
    assert aliases_of("schroder-triple") == ["thm5.4", "cor5.1"]
    report = run_check("thm1.4", nmax=4)
    assert report.check == "des-dd-iar"
    assert report.verdict == 'pass'


@pytest.mark.parametrize("name,bounds", [
    ("schroder-gf", {"nmax": 9, "order": 12}),
    ("des-dd-iar", {"nmax": 9}),
    ("schroder-triple", {"nmax": 9}),
    ("gamma", {"nmax": 9}),
    ("izero-recurrence", {"nmax": 12, "perm_nmax": 9}),
    ("bijections", {"nmax": 8}),
    ("hankel", {"nmax": 8}),
    ("generating-trees", {"depth": 8}),
    ("refined-symmetry", {"nmax": 9}),
])
def test_shipped_bounds(monkeypatch, name, bounds):
    """Test the default bounds of the exhaustive suites."""
    monkeypatch.delenv("COMTET_NMAX_CAP", raising=False)
    assert CHECKS[name].defaults == bounds
    assert ConfigLoader().get_check_bounds(name) == bounds


def test_run_all(monkeypatch):
    """Test that run_all runs every suite in order with shared overrides."""
    seen = []

    def recording(outcome, nmax):
        seen.append(nmax)

    monkeypatch.setattr(verification, "CHECKS", {
        "a": Check("a", recording, {"nmax": 5}, ""),
        "b": Check("b", recording, {"nmax": 6}, ""),
    })
    reports = run_all(nmax=2)
    assert [report.check for report in reports] == ["a", "b"]
    assert seen == [2, 2]
    assert all(report.verdict == 'pass' for report in reports)


def test_length4_sweep_flags_unlisted_pairs(tmp_path):
    """Test that the sweep over all length-4 pairs reports pairs missing from the list."""
    (tmp_path / "verification.yaml").write_text("checks: {}\n")
    (tmp_path / "patterns.yaml").write_text(
        'conjecture_reference: "2413,4213"\n'
        'conjecture_candidates:\n'
        '  - {patterns: "2431,4231", iar: true}\n'
        '  - {patterns: "1234,4321", iar: false}\n'
    )
    report = run_check("length4-iar-sweep", ConfigLoader(str(tmp_path)), nmax=5)
    assert report.verdict == 'finding'
    assert "FAILED: 1324,2134: iar equal but not listed" in report.details
    assert not any(line.startswith("FAILED: 2431,4231") for line in report.details)
    assert "2431,4231: iar equal" in report.details
    assert "1234,4321: iar different" in report.details
