import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the summary hook prints them after the run."""
    name = request.node.name
    ACCEPTANCE[name] = "FAIL"

    def ok(detail=""):
        ACCEPTANCE[name] = f"PASS {detail}".rstrip()

    yield ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split("_")[1])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]:<6} {name}")
