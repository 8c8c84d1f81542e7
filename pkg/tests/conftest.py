import pytest

from fock_limits import make_family, parse_family


@pytest.fixture
def oscillator():
    return make_family("oscillator")


@pytest.fixture
def laguerre():
    return make_family("laguerre")


@pytest.fixture
def free():
    return make_family("free")


@pytest.fixture
def q_half():
    return parse_family("q:1/2")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        import sys
        RESULTS = getattr(sys.modules.get("tests.test_acceptance"), "RESULTS", {})
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
