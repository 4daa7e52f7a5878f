import sys

import pytest
from hypothesis import HealthCheck, settings

from jacobi_tower import kernel

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")


@pytest.fixture(params=kernel.available_backends())
def backend(request):
    with kernel.use_backend(request.param):
        yield request.param


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = acceptance.summary_lines() if acceptance is not None else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
