import pytest
from hypothesis import settings

from sdcss import builtin

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def catalog():
    return {name: builtin(name) for name in ("c422", "c622", "steane7", "qhamming15")}


def pytest_terminal_summary(terminalreporter, config):
    from test_acceptance import pytest_terminal_summary_lines

    lines = pytest_terminal_summary_lines(config)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
