import pytest

from softedge.expansion import compute_series


@pytest.fixture(scope="session")
def series3():
    return compute_series(3)


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in RESULTS:
        terminalreporter.write_line(r.line())
