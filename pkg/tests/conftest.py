import pytest

from boomsuite.catalog import bundled_path, load_catalog, load_mission
from boomsuite.scoring import load_profile


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(bundled_path("paper_catalog.yaml"))


@pytest.fixture(scope="session")
def mission():
    return load_mission(bundled_path("paper_mission.yaml"))


@pytest.fixture(scope="session")
def far_profile():
    return load_profile(bundled_path("far_field.profile"))


@pytest.fixture(scope="session")
def near_profile():
    return load_profile(bundled_path("near_field.profile"))


@pytest.fixture(scope="session")
def modality_profile():
    return load_profile(bundled_path("modality.profile"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of a run."""
    rows = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance" in report.nodeid:
                rows.append((report.nodeid.split("::")[-1], status.upper()))
    if rows:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name, status in sorted(rows):
            terminalreporter.write_line(f"  {name}: {status}")
