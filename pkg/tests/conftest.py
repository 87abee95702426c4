import pytest
from hypothesis import HealthCheck, settings

from shtukalab.samples import std_field

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@pytest.fixture(params=[2, 3, 4, 5, 8, 9], ids=lambda q: f"q{q}")
def field(request):
    return std_field(request.param)


@pytest.fixture
def F4():
    return std_field(4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
