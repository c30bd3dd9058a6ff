import os
from importlib import resources
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from normforge.family import glue, load_knot, load_link

SEED = int(os.environ.get("NORMFORGE_SEED", "1729"))

settings.register_profile(
    "normforge", derandomize=True, max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("normforge")

DATA = Path(str(resources.files("normforge") / "data"))
GOLDEN = Path(__file__).parent / "golden"

KNOT_BY_GENUS = {1: "k2_3", 2: "k2_5", 3: "k2_7", 4: "k2_9"}


def knot(name):
    return load_knot(DATA / f"{name}.json")


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def dunfield():
    return load_link(DATA / "dunfield.json")


@pytest.fixture(scope="session")
def model24(dunfield):
    return glue(dunfield, knot("k2_5"), knot("k2_9"))


@pytest.fixture(scope="session")
def model11(dunfield):
    return glue(dunfield, knot("k2_3"), knot("k2_3"))


# --- acceptance summary: one line per criterion, whatever the outcome ---

_acceptance: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call" and not report.failed:
        return
    number, title = marker.args
    ok = report.passed
    prev = _acceptance.get(number)
    if prev is not None:
        ok = ok and prev[1]
    _acceptance[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, ok = _acceptance[number]
        terminalreporter.write_line(f"AC{number} {'PASS' if ok else 'FAIL'}  {title}")
