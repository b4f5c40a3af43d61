import json
import subprocess
import sys
from pathlib import Path

import pytest

from supertriple.systems import fixture_systems, load_bundled

FIXTURES = Path(__file__).parent / "fixtures"
BROKEN = {
    "broken_grading_s11": "2.1",
    "broken_grading_mixed": "2.1",
    "broken_skew_l2": "2.2",
    "broken_skew_anti": "2.2",
    "broken_cyclic_sym": "2.3",
    "broken_cyclic_dim3": "2.3",
    "broken_fundamental_l2": "2.4",
    "broken_fundamental_s11": "2.4",
}


@pytest.fixture(scope="session")
def systems():
    return fixture_systems()


@pytest.fixture(scope="session")
def L2():
    return load_bundled("l2")


@pytest.fixture(scope="session")
def S11():
    return load_bundled("s11")


@pytest.fixture(scope="session")
def anti3():
    return load_bundled("anti3")


def run_cli(*args, cwd=FIXTURES, env=None):
    proc = subprocess.run([sys.executable, "-m", "supertriple.cli", *map(str, args)],
                          capture_output=True, text=True, cwd=cwd, env=env)
    return proc


def run_cli_json(*args, **kw):
    proc = run_cli(*args, "--json", **kw)
    return proc.returncode, json.loads(proc.stdout) if proc.stdout.strip() else None


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE[report.nodeid] = report.outcome
    elif "test_acceptance.py" in report.nodeid and report.outcome == "failed":
        _ACCEPTANCE[report.nodeid] = "failed"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _ACCEPTANCE.items():
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
