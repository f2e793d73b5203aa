import pytest

from bsdh import cartan


@pytest.fixture
def C3():
    return cartan.build(3)


def simple(*coeffs):
    """Weight from simple-root coefficients."""
    return cartan.from_simple(list(coeffs))


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines after the run, since pytest captures their output."""
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for text in sorted(mod.LINES, key=lambda t: int(t.split()[1])):
        terminalreporter.write_line(text)
